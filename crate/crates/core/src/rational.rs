//! Exact rational scalars.
//!
//! Every quantity in this crate is an arbitrary-precision rational. Values
//! are kept reduced with a positive denominator, so equality is structural
//! and the canonical text form `num/den` (or just `num` when the denominator
//! is one) is unambiguous.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

/// Rational from a numerator/denominator pair. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(Int::from(num), Int::from(den))
}

/// Canonical text form: `num/den`, or `num` when the denominator is one.
/// No whitespace, numerator carries the sign.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse the canonical text form accepted by every file format in this
/// crate: an optional sign, digits, and an optional `/den` part with a
/// nonzero denominator. Input is reduced on construction.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: Int = num_str
        .parse()
        .map_err(|_| Error::Parse(format!("invalid numerator in rational literal {s:?}")))?;
    let den: Int = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("invalid denominator in rational literal {s:?}")))?,
        None => Int::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in rational literal {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Inexact `f64` rendering, for display only.
pub fn approx_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fall back on a cruder quotient for out-of-range big integers.
        let n = x.numer().to_f64().unwrap_or(if x.numer().is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// `base^exp` for a rational base and nonnegative integer exponent.
pub fn pow(base: &Rational, exp: u32) -> Rational {
    let num = base.numer().pow(exp);
    let den = base.denom().pow(exp);
    Rational::new(num, den)
}
