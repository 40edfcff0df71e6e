//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use diffmonads::cdc::morphism::{self as mor, TheoryMorphism};
use diffmonads::cdc::{
    axioms, mutants, DifferentialTheory, DividedPower, MutatedTheory, SeriesTheory, Trivial,
    Zinbiel,
};
use diffmonads::dividedpower::DPElement;
use diffmonads::generators::{self, oracle, GenConfig};
use diffmonads::notation::VarNames;
use diffmonads::powerseries::{SeriesElement, SeriesShape};
use diffmonads::scalars::combinatorics::{binomial, dp_power_coeff, factorial};
use diffmonads::scalars::{FieldSpec, Scalar};
use diffmonads::zinbiel::ZinElement;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const Q: FieldSpec = FieldSpec::Rationals;

fn fp(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> std::result::Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

fn zinbiel_expansion() -> Check {
    let start = Instant::now();
    let t = Zinbiel::new(Q);
    let outer = t.parse("x1.x2.x1", 2).map_err(|e| e.to_string())?;
    let args = [t.parse("x1.x2", 3).unwrap(), t.eta(2, 3)];
    let got = t.substitute(&outer, &args, 3).map_err(|e| e.to_string())?;
    let want = t
        .parse("x1.x2.x3.x1.x2 + x1.x3.x2.x1.x2 + 2*x1.x3.x1.x2.x2", 3)
        .unwrap();
    ensure(got == want, || format!("got {got}"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(got.to_string())
}

fn divided_structure_constant() -> Check {
    let start = Instant::now();
    let mut shown = Vec::new();
    for (field, k) in [(Q, 6), (fp(2), 0), (fp(5), 1)] {
        let t = DividedPower::new(field);
        let outer = t.parse("x1^[2]", 1).unwrap();
        let inner = t.parse("x1^[2]*x2^[1]", 2).unwrap();
        let got = t
            .substitute(&outer, &[inner], 2)
            .map_err(|e| e.to_string())?;
        let want = t
            .parse("x1^[4]*x2^[2]", 2)
            .unwrap()
            .scale(&Scalar::from_i64(k, field))
            .unwrap();
        ensure(got == want, || format!("over {field}: got {got}"))?;
        shown.push(format!("{field}: {got}"));
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(shown.join("; "))
}

fn non_compatibility() -> Check {
    let start = Instant::now();
    let xy = DPElement::from_terms(
        2,
        Q,
        [(
            diffmonads::basis::MultiIndex::from_dense(&[1, 1]),
            Scalar::one(Q),
        )],
    )
    .unwrap();
    let via_divided = ZinElement::from_divided(&xy.partial_combinator());
    let z = Zinbiel::new(Q);
    let via_zinbiel = ZinElement::from_divided(&xy).partial_combinator();
    let want_divided = z.parse("x3.x2 + x2.x3 + x4.x1 + x1.x4", 4).unwrap();
    let want_zinbiel = z.parse("x3.x2 + x4.x1", 4).unwrap();
    ensure(via_divided == want_divided, || {
        format!("divided side {via_divided}")
    })?;
    ensure(via_zinbiel == want_zinbiel, || {
        format!("zinbiel side {via_zinbiel}")
    })?;
    ensure(via_divided != via_zinbiel, || "sides agree".into())?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{via_divided}  vs  {via_zinbiel}"))
}

fn suite<T: DifferentialTheory>(t: &T, out: &mut Vec<String>) -> std::result::Result<(), String> {
    let reports = axioms::check_all(t, &t.default_config(42), 200);
    let failed: Vec<_> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.axiom.clone())
        .collect();
    ensure(failed.is_empty(), || {
        format!("{}: {}", t.name(), failed.join(","))
    })?;
    out.push(format!("{} {}x200", t.name(), reports.len()));
    Ok(())
}

fn axiom_suites() -> Check {
    let start = Instant::now();
    let mut out = Vec::new();
    suite(&SeriesTheory::polynomial(Q), &mut out)?;
    suite(&SeriesTheory::power(Q, 4), &mut out)?;
    suite(&SeriesTheory::power(fp(5), 4), &mut out)?;
    for f in [Q, fp(2), fp(3)] {
        suite(&DividedPower::new(f), &mut out)?;
    }
    for f in [Q, fp(2)] {
        suite(&Zinbiel::new(f), &mut out)?;
    }
    suite(&Trivial::new(Q), &mut out)?;
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("{} in {:.1?}", out.len(), start.elapsed()))
}

fn caught<T: DifferentialTheory>(t: &T) -> std::result::Result<String, String> {
    let failing: Vec<_> = axioms::check_all(t, &t.default_config(42), 200)
        .into_iter()
        .filter(|r| !r.passed())
        .map(|r| r.axiom)
        .collect();
    ensure(!failing.is_empty(), || format!("{} survived", t.name()))?;
    Ok(format!("{} by {}", t.name(), failing.join(",")))
}

fn mutation_sensitivity() -> Check {
    let lines = [
        caught(&MutatedTheory::new(
            Zinbiel::new(Q),
            "last letter",
            mutants::zinbiel_star_last,
        ))?,
        caught(&MutatedTheory::new(
            SeriesTheory::power(Q, 4),
            "drop first",
            mutants::series_drop_first,
        ))?,
        caught(&MutatedTheory::new(
            DividedPower::new(Q),
            "extra factor",
            mutants::divided_extra_factor,
        ))?,
    ];
    Ok(lines.join("; "))
}

fn dp_axioms_over(field: FieldSpec) -> std::result::Result<usize, String> {
    let k = |n: &num_bigint::BigInt| Scalar::from_integer(n, field);
    let basis: Vec<DPElement> = generators::enumerate_monomials(2, 3, false)
        .unwrap()
        .into_iter()
        .map(|m| DPElement::monomial(m, 2, field).unwrap())
        .collect();
    let lambdas: Vec<Scalar> = (1..=4)
        .map(|i| Scalar::from_i64(i, field))
        .filter(|s| !s.is_zero())
        .collect();
    let mut checks = 0;
    let fail =
        |what: &str, a: &DPElement, n: u32| format!("{what} fails over {field} for {a} at n={n}");
    for a in &basis {
        for n in 1..=3 {
            let an = a.power(n).unwrap();
            for l in &lambdas {
                ensure(
                    a.scale(l).unwrap().power(n).unwrap() == an.scale(&l.pow(n)).unwrap(),
                    || fail("dp.1", a, n),
                )?;
            }
            ensure(n != 1 || an == *a, || fail("dp.4", a, n))?;
            for m in 1..=3 {
                let am = a.power(m).unwrap();
                let lhs = am.mul(&an).unwrap();
                ensure(
                    lhs == a
                        .power(m + n)
                        .unwrap()
                        .scale(&k(&binomial(m + n, m)))
                        .unwrap(),
                    || fail("dp.2", a, n),
                )?;
                let c = k(&dp_power_coeff(m, n).unwrap());
                ensure(
                    an.power(m).unwrap() == a.power(m * n).unwrap().scale(&c).unwrap(),
                    || fail("dp.6", a, n),
                )?;
                checks += 2;
            }
            let mut a_star = a.clone();
            for _ in 1..n {
                a_star = a_star.mul(a).unwrap();
            }
            if field == Q {
                ensure(an.scale(&k(&factorial(n))).unwrap() == a_star, || {
                    fail("collapse", a, n)
                })?;
            }
            for b in &basis {
                let bn = b.power(n).unwrap();
                let mut sum = an.add(&bn).unwrap();
                for l in 1..n {
                    sum = sum
                        .add(&a.power(l).unwrap().mul(&b.power(n - l).unwrap()).unwrap())
                        .unwrap();
                }
                ensure(a.add(b).unwrap().power(n).unwrap() == sum, || {
                    fail("dp.3", a, n)
                })?;
                let ab = a.mul(b).unwrap().power(n).unwrap();
                ensure(
                    ab == an.mul(&bn).unwrap().scale(&k(&factorial(n))).unwrap(),
                    || fail("dp.5", a, n),
                )?;
                ensure(ab == a_star.mul(&bn).unwrap(), || fail("dp.5", a, n))?;
                checks += 3;
            }
        }
    }
    Ok(checks)
}

fn divided_power_axioms() -> Check {
    let start = Instant::now();
    let mut total = 0;
    for f in [Q, fp(2), fp(3)] {
        total += dp_axioms_over(f)?;
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("{total} identities"))
}

fn oracle_equivalence() -> Check {
    let cfg = GenConfig::default();
    let mut count = 0;
    let words = generators::enumerate_words(2, 4).unwrap();
    let word = |w: &diffmonads::basis::Word| {
        ZinElement::from_terms(2, Q, [(w.clone(), Scalar::one(Q))]).unwrap()
    };
    for a in &words {
        for b in &words {
            let (za, zb) = (word(a), word(b));
            ensure(
                za.half_shuffle(&zb).unwrap() == oracle::shuffle_enum(&za, &zb).unwrap(),
                || format!("{a} < {b}"),
            )?;
            count += 1;
        }
    }
    for m in generators::enumerate_monomials(2, 4, false).unwrap() {
        let e = DPElement::monomial(m, 2, Q).unwrap();
        ensure(
            ZinElement::from_divided(&e) == oracle::symmetrized_expand(&e).unwrap(),
            || format!("gamma {e}"),
        )?;
        count += 1;
    }
    let mono = generators::enumerate_monomials(2, 4, false).unwrap();
    let shape = SeriesShape::capped(2, 4, Q);
    let one = |m: &diffmonads::basis::MultiIndex| {
        SeriesElement::from_terms(shape, [(m.clone(), Scalar::one(Q))]).unwrap()
    };
    for h in &mono {
        for a in mono.iter().filter(|m| m.degree() <= 2) {
            for b in mono.iter().filter(|m| m.degree() <= 2) {
                let (f, xs) = (one(h), [one(a), one(b)]);
                ensure(
                    f.substitute(&xs, 2).unwrap() == oracle::naive_substitute(&f, &xs, 2).unwrap(),
                    || format!("substitute {f}"),
                )?;
                count += 1;
            }
        }
    }
    let mut r = generators::rng(7);
    for _ in 0..100 {
        let (a, b) = (
            generators::random_zinbiel(&mut r, 2, Q, 4, &cfg),
            generators::random_zinbiel(&mut r, 2, Q, 4, &cfg),
        );
        ensure(
            a.half_shuffle(&b).unwrap() == oracle::shuffle_enum(&a, &b).unwrap(),
            || format!("{a} < {b}"),
        )?;
        let d = generators::random_divided(&mut r, 3, fp(3), 4, &cfg);
        ensure(
            ZinElement::from_divided(&d) == oracle::symmetrized_expand(&d).unwrap(),
            || format!("gamma {d}"),
        )?;
        let sh = SeriesShape::capped(2, 5, Q);
        let f = generators::random_series(&mut r, sh, 4, &cfg);
        let xs = [
            generators::random_series(&mut r, sh, 3, &cfg),
            generators::random_series(&mut r, sh, 3, &cfg),
        ];
        ensure(
            f.substitute(&xs, 2).unwrap() == oracle::naive_substitute(&f, &xs, 2).unwrap(),
            || format!("substitute {f}"),
        )?;
        count += 3;
    }
    Ok(format!("{count} comparisons"))
}

fn characterize<T: DifferentialTheory>(t: &T) -> std::result::Result<usize, String> {
    let basis = t.basis(2, 2).map_err(|e| e.to_string())?;
    let coeffs: Vec<Scalar> = [1, -1, 2]
        .iter()
        .map(|&c| Scalar::from_i64(c, t.field()))
        .filter(|s| !s.is_zero())
        .fold(Vec::new(), |mut acc, s| {
            if !acc.contains(&s) {
                acc.push(s);
            }
            acc
        });
    let mut elems = vec![t.zero(2)];
    for (i, a) in basis.iter().enumerate() {
        for ca in &coeffs {
            let sa = t.scale(a, ca).unwrap();
            elems.push(sa.clone());
            for b in &basis[i + 1..] {
                for cb in &coeffs {
                    elems.push(t.add(&sa, &t.scale(b, cb).unwrap()).unwrap());
                }
            }
        }
    }
    for e in &elems {
        let p = TheoryMorphism::new(t, 2, vec![e.clone()]).unwrap();
        let linear = mor::is_dlinear(t, &p).map_err(|e| e.to_string())?;
        let shape = t.term_degrees(e).iter().all(|&d| d == 1);
        ensure(linear == shape, || {
            format!(
                "{}: {} linear={linear}",
                t.name(),
                t.render(e, &VarNames::plain())
            )
        })?;
    }
    Ok(elems.len())
}

fn dlinear_characterization() -> Check {
    let counts = [
        characterize(&SeriesTheory::polynomial(Q))?,
        characterize(&SeriesTheory::power(Q, 4))?,
        characterize(&SeriesTheory::power(fp(5), 4))?,
        characterize(&DividedPower::new(Q))?,
        characterize(&DividedPower::new(fp(2)))?,
        characterize(&DividedPower::new(fp(3)))?,
        characterize(&Zinbiel::new(Q))?,
        characterize(&Zinbiel::new(fp(2)))?,
        characterize(&Trivial::new(Q))?,
    ];
    Ok(format!("{} morphisms", counts.iter().sum::<usize>()))
}

fn truncation_congruence() -> Check {
    // Degrees stay below 12, so composing at cap 12 is exact.
    let t = SeriesTheory::power(Q, 12);
    let cfg = GenConfig {
        max_degree: 4,
        inner_degree: 3,
        ..GenConfig::default()
    };
    let mut r = generators::rng(42);
    for cap in 3..=6 {
        for _ in 0..100 {
            let (n, k) = (
                1 + generators::below(&mut r, 3) as usize,
                1 + generators::below(&mut r, 3) as usize,
            );
            let g = generators::random_morphism(&t, &mut r, &cfg, n, k, 3);
            let f = generators::random_morphism(&t, &mut r, &cfg, k, 2, 4);
            let whole = mor::compose(&t, &f, &g).unwrap();
            let cut = |m: &TheoryMorphism<SeriesTheory>| -> Vec<SeriesElement> {
                m.components()
                    .iter()
                    .map(|c| c.truncate(cap).unwrap())
                    .collect()
            };
            let inner = cut(&g);
            for (lhs, fc) in cut(&whole).iter().zip(cut(&f)) {
                let rhs = fc.substitute(&inner, n).unwrap();
                ensure(*lhs == rhs, || format!("cap {cap}: {lhs} vs {rhs}"))?;
            }
        }
    }
    Ok("400 pairs".into())
}

fn cli_determinism() -> Check {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_diffmonads"))
            .args(["check", "--seed", "42", "--threads", threads])
            .output()
            .map_err(|e| e.to_string())
    };
    let first = run("1")?;
    ensure(first.status.success(), || {
        String::from_utf8_lossy(&first.stderr).into_owned()
    })?;
    let again = run("1")?;
    let wide = run("4")?;
    ensure(first.stdout == again.stdout, || "two runs differ".into())?;
    ensure(first.stdout == wide.stdout, || {
        "thread counts differ".into()
    })?;
    serde_json::from_slice::<serde_json::Value>(&first.stdout).map_err(|e| e.to_string())?;
    Ok(format!("{} bytes", first.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("zinbiel substitution expansion", zinbiel_expansion),
        (
            "divided power structure constant per field",
            divided_structure_constant,
        ),
        ("non-compatibility witness", non_compatibility),
        ("axiom suites", axiom_suites),
        ("mutation sensitivity", mutation_sensitivity),
        ("divided power axioms exhaustive", divided_power_axioms),
        ("oracle equivalence", oracle_equivalence),
        ("D-linearity characterization", dlinear_characterization),
        ("truncation congruence", truncation_congruence),
        ("CLI determinism", cli_determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name} [{:.2?}] {detail}",
                i + 1,
                start.elapsed()
            ),
            Err(why) => {
                failures += 1;
                println!(
                    "criterion {:>2} FAIL  {name} [{:.2?}] {why}",
                    i + 1,
                    start.elapsed()
                );
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
