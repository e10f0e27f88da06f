//! Exact rational scalars and their canonical text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type ExactScalar = BigRational;

pub fn int(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> ExactScalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> ExactScalar {
    ExactScalar::zero()
}

pub fn one() -> ExactScalar {
    ExactScalar::one()
}

/// `(-1)^k` as a scalar.
pub fn sign(k: i64) -> ExactScalar {
    if k.rem_euclid(2) == 0 {
        one()
    } else {
        -one()
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &ExactScalar) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<ExactScalar, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Sum of absolute values, used when reporting correction norms.
pub fn l1_norm<'a>(xs: impl IntoIterator<Item = &'a ExactScalar>) -> ExactScalar {
    xs.into_iter().fold(zero(), |acc, x| acc + x.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn half_round_trips() {
        let h = frac(1, 2);
        assert_eq!(format_rational(&h), "1/2");
        assert_eq!(parse_rational("1/2").unwrap(), h);
        assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(format_rational(&int(-7)), "-7");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    proptest! {
        #[test]
        fn add_sub_round_trip(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = frac(a, b);
            let y = frac(c, d);
            prop_assert_eq!((x.clone() + y.clone()) - y, x.clone());
            prop_assert!(x.denom().is_positive());
            prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }
    }
}
