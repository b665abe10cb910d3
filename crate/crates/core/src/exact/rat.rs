//! Exact rational scalars. `Rat` is an arbitrary-precision fraction kept in
//! lowest terms with a positive denominator; all arithmetic on it is exact.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

/// The scalar type used everywhere in the crate.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// `p / q` as a rational. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Renders a rational as `p` when integral and `p/q` otherwise. This is the
/// one textual form used in files, flags, and reports.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the textual form produced by [`format_rat`]: an optionally signed
/// integer, or `p/q` with a nonzero `q`. The result is reduced, so any `p/q`
/// spelling of the same value parses to the same `Rat`.
pub fn parse_rat(text: &str) -> Result<Rat, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty rational".to_string());
    }
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let numer: BigInt = num_text
        .parse()
        .map_err(|_| format!("invalid integer `{num_text}`"))?;
    let denom: BigInt = match den_text {
        Some(d) => d.parse().map_err(|_| format!("invalid integer `{d}`"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(format!("zero denominator in `{text}`"));
    }
    Ok(BigRational::new(numer, denom))
}

/// Exact nonnegative integer power.
pub fn rat_pow(base: &Rat, exp: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}
