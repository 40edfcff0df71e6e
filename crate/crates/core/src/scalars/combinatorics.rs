//! Integer structure constants. All results are exact `BigInt`s.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    // running product stays integral: C(n-k+i, i) at step i
    (1..=k).fold(BigInt::one(), |acc, i| acc * (n - k + i) / i)
}

/// `(sum parts)! / prod(part!)`.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let mut total = 0u32;
    let mut acc = BigInt::one();
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    acc
}

/// `(m n)! / (m! (n!)^m)`: the coefficient in `(a^[n])^[m] = c * a^[mn]`.
///
/// `outer` is `m` (the number of blocks), `inner` is `n` (the block size).
pub fn dp_power_coeff(outer: u32, inner: u32) -> Result<BigInt> {
    let numerator = factorial(outer * inner);
    let denominator = factorial(outer) * num_traits::pow(factorial(inner), outer as usize);
    exact_div(numerator, denominator)
}

/// `(n k)! / (k!)^n`: the coefficient of `x^[nk]` in the `n`-fold product
/// `x^[k] * ... * x^[k]`.
pub fn power_product_coeff(copies: u32, exponent: u32) -> Result<BigInt> {
    let numerator = factorial(copies * exponent);
    let denominator = num_traits::pow(factorial(exponent), copies as usize);
    exact_div(numerator, denominator)
}

fn exact_div(numerator: BigInt, denominator: BigInt) -> Result<BigInt> {
    let (q, r) = numerator.div_rem(&denominator);
    if !r.is_zero() {
        return Err(Error::NonIntegralQuotient {
            numerator: numerator.to_string(),
            denominator: denominator.to_string(),
        });
    }
    Ok(q)
}
