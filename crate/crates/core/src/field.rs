use std::fmt;

use crate::error::{Error, Result};

/// A prime field F_p with p >= 5 (and p < 2^31 so products fit a u64).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns the prime `p` with `q = p^k`, if `q` is a prime power.
pub fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    (r == 1).then_some(p)
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(5..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::BadModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> FieldElem {
        FieldElem {
            value: v.rem_euclid(self.p as i64) as u64,
            p: self.p,
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElem {
        self.elem(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.p).map(move |v| FieldElem { value: v, p: self.p })
    }

    // raw u64 helpers used by the series and polynomial kernels
    #[inline]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub(crate) fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub(crate) fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub(crate) fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub(crate) fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub(crate) fn is_square(&self, a: u64) -> bool {
        a == 0 || self.pow(a, (self.p - 1) / 2) == 1
    }
}

/// An element of F_p; always stored reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    value: u64,
    p: u64,
}

impl FieldElem {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    /// Euler's criterion.
    pub fn is_square(&self) -> bool {
        self.field().is_square(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Option<FieldElem> {
        (self.value != 0).then(|| FieldElem {
            value: self.field().inv(self.value),
            p: self.p,
        })
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        FieldElem {
            value: self.field().pow(self.value, e),
            p: self.p,
        }
    }

    fn check(&self, other: &FieldElem) {
        assert_eq!(self.p, other.p, "mixed-field arithmetic");
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! field_binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl std::ops::$tr for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                self.check(&rhs);
                FieldElem {
                    value: self.field().$op(self.value, rhs.value),
                    p: self.p,
                }
            }
        }
    };
}

field_binop!(Add, add, add);
field_binop!(Sub, sub, sub);
field_binop!(Mul, mul, mul);

impl std::ops::Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            value: self.field().neg(self.value),
            p: self.p,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_or_composite_moduli() {
        for p in [0, 1, 2, 3, 4, 9, 25] {
            assert_eq!(PrimeField::new(p), Err(Error::BadModulus(p)));
        }
        assert!(PrimeField::new(5).is_ok());
        assert!(PrimeField::new(101).is_ok());
    }

    #[test]
    fn arithmetic_is_reduced() {
        let f = PrimeField::new(7).unwrap();
        let a = f.elem(-1);
        assert_eq!(a.value(), 6);
        assert_eq!((a + f.elem(3)).value(), 2);
        assert_eq!((f.elem(3) * f.elem(5)).value(), 1);
        assert_eq!(f.elem(3).inv().unwrap().value(), 5);
        assert_eq!(f.zero().inv(), None);
        assert_eq!((-f.elem(2)).value(), 5);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_base(25), Some(5));
        assert_eq!(prime_power_base(49), Some(7));
        assert_eq!(prime_power_base(11), Some(11));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(1), None);
        assert_eq!(prime_power_base(8), Some(2));
    }

    #[test]
    fn quadratic_residues() {
        let f = PrimeField::new(5).unwrap();
        let squares: Vec<u64> = (0..5).filter(|&a| f.is_square(a)).collect();
        assert_eq!(squares, vec![0, 1, 4]);
    }
}
