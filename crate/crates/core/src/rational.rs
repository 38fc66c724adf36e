//! Exact rational coefficients.
//!
//! Every algebraic layer of this crate works over `Rational`
//! (arbitrary-precision, always reduced, positive denominator).
//! Floating point only appears in the simulation module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `p/q`, reduced. Panics on q = 0.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical `"p/q"` form used in all JSON documents. The denominator is
/// always present, so round-trips are bit-exact and key order independent.
pub fn rational_str(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let (p, q) = s
        .split_once('/')
        .ok_or_else(|| Error::Parse(format!("rational `{s}` is not in p/q form")))?;
    let p: BigInt = p
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
    let q: BigInt = q
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
    if q.is_zero() || q.is_negative() {
        return Err(Error::Parse(format!(
            "denominator in `{s}` must be positive"
        )));
    }
    Ok(Rational::new(p, q))
}

/// n! as a rational, for the 1/n! normalization of determinant sums.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::from(1);
    for v in 2..=n {
        acc *= BigInt::from(v);
    }
    Rational::from_integer(acc)
}

/// Binomial coefficient as a rational.
pub fn binomial(a: u32, c: u32) -> Rational {
    if c > a {
        return Rational::zero();
    }
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for t in 0..c {
        num *= BigInt::from(a - t);
        den *= BigInt::from(t + 1);
    }
    Rational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_string_round_trip() {
        let r = rat(-6, 4);
        assert_eq!(rational_str(&r), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), r);
        assert_eq!(rational_str(&rat_int(5)), "5/1");
    }

    #[test]
    fn rejects_non_canonical_input() {
        assert!(parse_rational("3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), rat_int(6));
        assert_eq!(binomial(3, 0), rat_int(1));
        assert_eq!(binomial(2, 3), rat_int(0));
    }
}
