//! Dense univariate polynomials over a prime field.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElem, PrimeField};

/// Degree of a polynomial. The zero polynomial has degree [`Degree::NegInfinity`],
/// which orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

/// Polynomial with coefficients stored low-to-high and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero(field: PrimeField) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::from_raw(c.field(), vec![c.value()])
    }

    /// The monomial `t`.
    pub fn t(field: PrimeField) -> Self {
        Self::from_raw(field, vec![0, 1])
    }

    pub fn monomial(field: PrimeField, c: i64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = field.reduce(c);
        Self::from_raw(field, coeffs)
    }

    /// Builds from signed integer coefficients, low degree first.
    pub fn from_ints(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::from_raw(field, coeffs.iter().map(|&c| field.reduce(c)).collect())
    }

    pub fn from_elems(field: PrimeField, coeffs: &[FieldElem]) -> Self {
        Self::from_raw(field, coeffs.iter().map(|c| c.value()).collect())
    }

    pub(crate) fn from_raw(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Coefficient of `t^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.field.elem(self.raw(i) as i64)
    }

    pub(crate) fn raw(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub(crate) fn raw_coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeffs(&self) -> Vec<FieldElem> {
        (0..self.coeffs.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn leading(&self) -> Option<FieldElem> {
        self.coeffs.last().map(|&c| self.field.elem(c as i64))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.modulus(), other.field.modulus()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let f = self.field;
        Ok(Self::from_raw(
            f,
            (0..n).map(|i| f.add(self.raw(i), other.raw(i))).collect(),
        ))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let f = self.field;
        Ok(Self::from_raw(
            f,
            (0..n).map(|i| f.sub(self.raw(i), other.raw(i))).collect(),
        ))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let f = self.field;
        let p = f.modulus();
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Ok(Self::from_raw(f, out))
    }

    pub fn neg(&self) -> Poly {
        let f = self.field;
        Self::from_raw(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: FieldElem) -> Poly {
        let f = self.field;
        Self::from_raw(f, self.coeffs.iter().map(|&x| f.mul(x, c.value())).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.field;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let lead_inv = f.inv(*divisor.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = f.mul(rem[k + dd], lead_inv);
            quo[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(rem[k + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_raw(f, quo), Self::from_raw(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Scales to a monic polynomial; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(l.inv().expect("leading coefficient nonzero")),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        Self::from_raw(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, (i as u64) % f.modulus()))
                .collect(),
        )
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        self.field.elem(self.eval_raw(x.value()) as i64)
    }

    pub(crate) fn eval_raw(&self, x: u64) -> u64 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `f(t + z)`.
    pub fn shift(&self, z: FieldElem) -> Poly {
        let f = self.field;
        let mut c = self.coeffs.clone();
        let n = c.len();
        // repeated synthetic division (Taylor shift)
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                c[j] = f.add(c[j], f.mul(z.value(), c[j + 1]));
            }
        }
        Self::from_raw(f, c)
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn powmod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?.rem(modulus)?;
            }
            base = base.mul(&base)?.rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// True iff `gcd(f, f')` is constant.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative())?.is_constant())
    }

    /// The product of the distinct linear factors of `self`, i.e. `gcd(f, t^p - t)`.
    pub fn rational_part(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.field;
        let t = Poly::t(f);
        if self.is_constant() {
            return Ok(Poly::one(f));
        }
        let tp = t.powmod(f.modulus(), self)?;
        self.gcd(&tp.sub(&t)?)
    }

    /// Number of distinct roots in F_p.
    pub fn count_roots_in_field(&self) -> Result<usize> {
        Ok(self.rational_part()?.degree().finite().unwrap_or(0))
    }

    /// Distinct roots in F_p, sorted, via equal-degree splitting of `gcd(f, t^p - t)`.
    pub fn roots_in_field(&self) -> Result<Vec<FieldElem>> {
        let g = self.rational_part()?;
        let mut roots = Vec::new();
        split_linear(&g, 0, &mut roots)?;
        roots.sort();
        Ok(roots)
    }
}

/// Splits a squarefree product of distinct linear factors into its roots.
fn split_linear(g: &Poly, mut delta: u64, out: &mut Vec<FieldElem>) -> Result<()> {
    let f = g.field;
    match g.degree() {
        Degree::NegInfinity | Degree::Finite(0) => return Ok(()),
        Degree::Finite(1) => {
            let m = g.monic();
            out.push(-m.coeff(0));
            return Ok(());
        }
        _ => {}
    }
    let p = f.modulus();
    loop {
        // gcd(g, (t + delta)^((p-1)/2) - 1) separates residues from non-residues
        let shifted = Poly::from_raw(f, vec![delta % p, 1]);
        let h = shifted
            .powmod((p - 1) / 2, g)?
            .sub(&Poly::one(f))?
            .gcd(g)?;
        let dh = h.degree();
        delta += 1;
        if dh > Degree::Finite(0) && dh < g.degree() {
            let (other, _) = g.divrem(&h)?;
            split_linear(&h, delta, out)?;
            split_linear(&other, delta, out)?;
            return Ok(());
        }
        if delta > 2 * p {
            // every shift failed: only possible if g has a root at each -delta, handled
            // by brute force on the (tiny) remaining case
            for x in f.elements() {
                if g.eval(x).is_zero() {
                    out.push(x);
                }
            }
            return Ok(());
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self, self.field.modulus())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Factorization pattern of a monic depressed cubic `y^3 + a y + b` over F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResidueCubicType {
    SplitThreeDistinct,
    LinearPlusIrreducibleQuadratic,
    IrreducibleCubic,
    DoubleRootPlusSimple,
    TripleRoot,
}

pub fn residue_cubic_type(a: FieldElem, b: FieldElem) -> ResidueCubicType {
    let f = a.field();
    let cubic = Poly::from_raw(f, vec![b.value(), a.value(), 0, 1]);
    let disc = -(f.elem(4) * a * a * a) - f.elem(27) * b * b;
    let roots = cubic.count_roots_in_field().expect("cubic is nonzero");
    match (disc.is_zero(), roots) {
        (false, 3) => ResidueCubicType::SplitThreeDistinct,
        (false, 1) => ResidueCubicType::LinearPlusIrreducibleQuadratic,
        (false, _) => ResidueCubicType::IrreducibleCubic,
        (true, 2) => ResidueCubicType::DoubleRootPlusSimple,
        (true, _) => ResidueCubicType::TripleRoot,
    }
}
