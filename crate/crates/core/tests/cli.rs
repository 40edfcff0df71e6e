use std::process::{Command, Output};

fn diffmonads(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffmonads"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn derive_prints_the_combinator() {
    let o = diffmonads(&["--theory", "poly", "derive", "x1*x2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "x1*dx2 + x2*dx1");
    let o = diffmonads(&["--theory", "zinbiel", "derive", "x1.x2"]);
    assert_eq!(stdout(&o).trim(), "dx1.x2");
}

#[test]
fn divided_composition_per_field() {
    let args = |field| {
        [
            "--theory",
            "divided",
            "--field",
            field,
            "compose",
            "x1^[2]",
            "/",
            "x1^[2]*x2^[1]",
        ]
    };
    assert_eq!(stdout(&diffmonads(&args("Q"))).trim(), "6*x1^[4]*x2^[2]");
    assert_eq!(stdout(&diffmonads(&args("F2"))).trim(), "0");
    assert_eq!(stdout(&diffmonads(&args("F5"))).trim(), "x1^[4]*x2^[2]");
}

#[test]
fn morphism_files_are_accepted() {
    let dir = std::env::temp_dir().join(format!("diffmonads-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("inner.json");
    std::fs::write(&path, r#"{"arity": 3, "components": ["x1.x2", "x3"]}"#).unwrap();
    let at = format!("@{}", path.display());
    let o = diffmonads(&["--theory", "zinbiel", "compose", "x1.x2.x1", "/", &at]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        stdout(&o).trim(),
        "x1.x2.x3.x1.x2 + 2*x1.x3.x1.x2.x2 + x1.x3.x2.x1.x2"
    );
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn bad_input_exits_with_usage_code() {
    assert_eq!(
        diffmonads(&["--theory", "poly", "derive", "x1*"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        diffmonads(&["--field", "F4", "derive", "x1"]).status.code(),
        Some(2)
    );
    assert_eq!(diffmonads(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn check_is_reproducible_across_threads() {
    let run = |threads: &str| {
        let o = diffmonads(&[
            "--theory",
            "divided",
            "--field",
            "F3",
            "--trials",
            "20",
            "--threads",
            threads,
            "check",
        ]);
        assert!(o.status.success());
        o.stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    let report: serde_json::Value = serde_json::from_slice(&one).unwrap();
    assert_eq!(report["passed"], serde_json::Value::Bool(true));
    assert_eq!(report["reports"].as_array().unwrap().len(), 18);
}

#[test]
fn check_runs_a_selection_in_order() {
    let o = diffmonads(&[
        "--theory",
        "zinbiel",
        "--trials",
        "5",
        "check",
        "--axioms",
        "CD.5,dc.1",
    ]);
    assert!(o.status.success());
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ids: Vec<_> = report["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["axiom"].as_str().unwrap().to_owned())
        .collect();
    assert_eq!(ids, ["CD.5", "dc.1"]);
}
