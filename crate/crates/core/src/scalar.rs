//! Scalar abstraction for probability masses.
//!
//! Every law in this crate is computed over a generic [`Scalar`]; the exact
//! instantiation is [`Rational`](crate::Rational) and `f64` is available for
//! quick numeric work.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

pub trait Scalar:
    Num + Clone + PartialOrd + Signed + FromPrimitive + ToPrimitive + Debug + Send + Sync
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer fits the scalar type")
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// `base^exp` for a non-negative exponent.
    fn powi(base: &Self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * base.clone();
        }
        acc
    }
}

impl<T> Scalar for T where
    T: Num + Clone + PartialOrd + Signed + FromPrimitive + ToPrimitive + Debug + Send + Sync
{
}

/// Canonical `"num/den"` rendering (reduced, positive denominator, always with a slash).
pub fn render(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_one<T: Scalar>(x: &T) -> bool {
    *x == T::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_is_canonical() {
        assert_eq!(render(&rational(6, -4)), "-3/2");
        assert_eq!(render(&rational(4, 2)), "2/1");
        assert_eq!(parse("216/31"), Some(rational(216, 31)));
        assert_eq!(parse("7"), Some(rational(7, 1)));
        assert_eq!(parse("1/0"), None);
    }

    #[test]
    fn generic_helpers_agree_across_scalars() {
        let exact: BigRational = Scalar::ratio(3, 4);
        let float: f64 = Scalar::ratio(3, 4);
        assert_eq!(to_f64(&exact), float);
        assert_eq!(<f64 as Scalar>::powi(&2.0, 10), 1024.0);
        assert!(is_one(&BigRational::from_int(1)));
    }
}
