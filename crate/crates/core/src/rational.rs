//! Exact rational scalars.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"p/q"` or a plain integer. Decimal points are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = |msg: &str| Error::Parse { line: 0, message: format!("invalid rational {s:?}: {msg}") };
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("numerator is not an integer"))?;
    let den: BigInt = den.parse().map_err(|_| bad("denominator is not an integer"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// `p/q` rendering, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn is_nonnegative_integer(r: &Rational) -> bool {
    is_integer(r) && !r.is_negative()
}

pub fn to_i64(r: &Rational) -> Option<i64> {
    if is_integer(r) {
        i64::try_from(r.numer()).ok()
    } else {
        None
    }
}

pub mod serde_rational {
    use super::{format_rational, Rational};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }
}
