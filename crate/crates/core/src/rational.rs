//! Exact rationals used for anticanonical volumes and discrepancies.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serializer;

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `p/q` in lowest terms with `q > 0`, integers included (`9/1`).
pub fn canonical(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Like [`canonical`] but integers are written without a denominator.
pub fn compact(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        canonical(r)
    }
}

pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if !den.is_zero() {
        Some(Rational::new(num, den))
    } else {
        None
    }
}

pub(crate) fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&canonical(r))
}
