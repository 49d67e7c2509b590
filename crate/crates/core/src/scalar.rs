//! Exact rational scalars.
//!
//! Every exact quantity in the crate (moments, cumulants, Möbius values,
//! factor parameters) is a [`Scalar`], an arbitrary-precision rational.
//! Text form is `p/q` (or `p` for integers), which is also what `Display`
//! produces.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// `p/q` in lowest terms. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// `base^exp` for any integer exponent; `0^negative` is an error.
pub fn powi(base: &Scalar, exp: i64) -> Result<Scalar> {
    if exp >= 0 {
        Ok(Pow::pow(base, exp as u64))
    } else if base.is_zero() {
        Err(Error::OutOfRange("zero raised to a negative power".into()))
    } else {
        Ok(Pow::pow(base.recip(), exp.unsigned_abs()))
    }
}

/// `n^exp` for a nonnegative exponent.
pub fn int_pow(n: u64, exp: u32) -> Scalar {
    Scalar::from_integer(Pow::pow(BigInt::from(n), exp))
}

pub fn parse(text: &str) -> Result<Scalar> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|e| Error::Parse(format!("{t:?}: {e}")))?;
        let q = BigInt::from_str(q.trim()).map_err(|e| Error::Parse(format!("{t:?}: {e}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("{t:?}: zero denominator")));
        }
        Ok(Scalar::new(p, q))
    } else {
        let p = BigInt::from_str(t).map_err(|e| Error::Parse(format!("{t:?}: {e}")))?;
        Ok(Scalar::from_integer(p))
    }
}

pub fn is_positive(x: &Scalar) -> bool {
    x.is_positive()
}

pub fn to_f64(x: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!(parse("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse(" -4/6 ").unwrap(), ratio(-2, 3));
        assert_eq!(parse("7").unwrap(), int(7));
        assert_eq!(ratio(13, 9).to_string(), "13/9");
        assert_eq!(int(11).to_string(), "11");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(powi(&int(2), -3).unwrap(), ratio(1, 8));
        assert_eq!(powi(&ratio(2, 3), 2).unwrap(), ratio(4, 9));
        assert_eq!(powi(&int(5), 0).unwrap(), int(1));
        assert!(powi(&int(0), -1).is_err());
        assert_eq!(int_pow(3, 4), int(81));
    }
}
