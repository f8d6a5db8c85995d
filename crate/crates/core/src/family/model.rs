use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::local::series;
use crate::poly::{Degree, Poly};

/// Binary cubic form `a X^3 + b X^2 Y + c X Y^2 + d Y^3` with coefficients in F_q[t].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
}

impl BinaryForm {
    pub fn field(&self) -> PrimeField {
        self.a.field()
    }

    /// `b^2 c^2 - 4 a c^3 - 4 b^3 d - 27 a^2 d^2 + 18 a b c d`.
    pub fn discriminant(&self) -> Poly {
        let f = self.field();
        let k = |c: i64| Poly::from_ints(f, &[c]);
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let m = |xs: &[&Poly]| xs.iter().fold(Poly::one(f), |acc, x| acc.mul(x).expect("same field"));
        [
            m(&[b, b, c, c]),
            m(&[&k(-4), a, c, c, c]),
            m(&[&k(-4), b, b, b, d]),
            m(&[&k(-27), a, a, d, d]),
            m(&[&k(18), a, b, c, d]),
        ]
        .iter()
        .fold(Poly::zero(f), |acc, x| acc.add(x).expect("same field"))
    }

    /// The depressed monic model of the same cubic algebra: scale `X -> X / a`, then
    /// remove the quadratic term. Requires `a != 0`.
    pub fn depressed(&self) -> Result<(Poly, Poly)> {
        if self.a.is_zero() {
            return Err(Error::InvalidModel("leading form coefficient is zero".into()));
        }
        let f = self.field();
        let inv3 = f.elem(3).inv().expect("p >= 5");
        let inv27 = inv3.pow(3);
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let ac = a.mul(c)?;
        let bb = b.mul(b)?;
        let big_a = ac.sub(&bb.scale(inv3))?;
        let big_b = a
            .mul(a)?
            .mul(d)?
            .sub(&ac.mul(b)?.scale(inv3))?
            .add(&bb.mul(b)?.scale(f.elem(2) * inv27))?;
        Ok((big_a, big_b))
    }
}

/// `y^3 + A(t) y + B(t)` with `deg A <= 2m`, `deg B <= 3m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrigonalModel {
    a: Poly,
    b: Poly,
    m: usize,
    form: Option<BinaryForm>,
}

impl TrigonalModel {
    pub fn new(a: Poly, b: Poly, m: usize) -> Result<Self> {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch(a.field().modulus(), b.field().modulus()));
        }
        if m == 0 {
            return Err(Error::InvalidArgument("height m must be >= 1".into()));
        }
        if a.degree() > Degree::Finite(2 * m) || b.degree() > Degree::Finite(3 * m) {
            return Err(Error::InvalidModel(format!("degrees exceed the bounds for m = {m}")));
        }
        Ok(TrigonalModel { a, b, m, form: None })
    }

    /// Model attached to a binary cubic form whose coefficients have degree `<= m`.
    pub fn from_form(form: BinaryForm, m: usize) -> Result<Self> {
        let bound = Degree::Finite(m);
        if [&form.a, &form.b, &form.c, &form.d].iter().any(|p| p.degree() > bound) {
            return Err(Error::InvalidModel(format!("form degrees exceed m = {m}")));
        }
        let (a, b) = form.depressed()?;
        let mut model = Self::new(a, b, m)?;
        model.form = Some(form);
        Ok(model)
    }

    pub fn field(&self) -> PrimeField {
        self.a.field()
    }

    pub fn q(&self) -> u64 {
        self.field().modulus()
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn form(&self) -> Option<&BinaryForm> {
        self.form.as_ref()
    }

    /// The discriminant used for genus bookkeeping: the form's when there is one
    /// (it differs from [`discriminant`] by the square `a^2`).
    pub fn reduced_discriminant(&self) -> Poly {
        match &self.form {
            Some(f) => f.discriminant(),
            None => discriminant(self),
        }
    }

    /// `(u^4 A, u^6 B)`, which defines an isomorphic cubic algebra.
    pub fn rescale(&self, u: i64) -> Result<TrigonalModel> {
        let f = self.field();
        let u = f.elem(u);
        if u.is_zero() {
            return Err(Error::InvalidArgument("rescaling by zero".into()));
        }
        Self::new(self.a.scale(u.pow(4)), self.b.scale(u.pow(6)), self.m)
    }
}

impl fmt::Display for TrigonalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^3 + ({}) y + ({})", self.a, self.b)
    }
}

/// `-4 A^3 - 27 B^2`.
pub fn discriminant(model: &TrigonalModel) -> Poly {
    let f = model.field();
    let a3 = model.a.pow(3).scale(f.elem(-4));
    let b2 = model.b.pow(2).scale(f.elem(-27));
    a3.add(&b2).expect("same field")
}

/// Whether `y^3 + A y + B` has no root in F_q(t).
///
/// Any root is a polynomial of degree at most `max(deg A / 2, deg B / 3)`. Candidates
/// are found as power-series roots at a finite place, truncated past that degree, and
/// verified exactly.
pub fn is_irreducible_global(model: &TrigonalModel) -> bool {
    polynomial_roots(model).is_empty()
}

pub fn polynomial_roots(model: &TrigonalModel) -> Vec<Poly> {
    let field = model.field();
    let (a, b) = (&model.a, &model.b);
    let deg = |p: &Poly| p.degree().finite().unwrap_or(0);
    let bound = (deg(a) / 2).max(deg(b) / 3);
    let prec = bound + 1;
    let disc = discriminant(model);
    let z = field
        .elements()
        .find(|&z| !disc.eval(z).is_zero())
        .unwrap_or(field.zero());
    let take = |p: &Poly| -> Vec<u64> { (0..prec).map(|i| p.raw(i)).collect() };
    let (sa, sb) = (take(&a.shift(z)), take(&b.shift(z)));
    let residual = |r: &[u64]| -> Vec<u64> {
        let r2 = series::mul(field, r, r);
        let r3 = series::mul(field, &r2, r);
        series::add(field, &series::add(field, &r3, &series::mul(field, &sa, r)), &sb)
    };
    let mut frontier: Vec<Vec<u64>> = vec![vec![0; prec]];
    for k in 0..prec {
        let mut next = Vec::new();
        for r in &frontier {
            for digit in 0..field.modulus() {
                let mut cand = r.clone();
                cand[k] = digit;
                if residual(&cand)[..=k].iter().all(|&c| c == 0) {
                    next.push(cand);
                }
            }
        }
        frontier = next;
    }
    let mut roots: Vec<Poly> = frontier
        .into_iter()
        .map(|r| Poly::from_raw(field, r).shift(-z))
        .filter(|r| {
            let val = r.pow(3).add(&a.mul(r).expect("same field")).expect("same field");
            val.add(b).expect("same field").is_zero()
        })
        .collect();
    roots.sort_by_key(|r| r.raw_coeffs().to_vec());
    roots.dedup();
    roots
}

/// Which coefficient space models are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelSpace {
    /// `(A, B)` uniform with `deg A <= 2m`, `deg B <= 3m`.
    Depressed,
    /// Binary cubic forms with coefficient degrees `<= m`, mapped to `(A, B)`.
    BinaryCubic,
}

impl ModelSpace {
    pub fn name(&self) -> &'static str {
        match self {
            ModelSpace::Depressed => "depressed",
            ModelSpace::BinaryCubic => "binary",
        }
    }

    /// Number of free coefficients at height `m`.
    pub fn coefficient_count(&self, m: usize) -> usize {
        match self {
            ModelSpace::Depressed => 5 * m + 2,
            ModelSpace::BinaryCubic => 4 * (m + 1),
        }
    }

    /// Builds the candidate with the given raw coefficient digits, or `None` when it
    /// has no depressed model (vanishing leading form coefficient).
    pub fn build(&self, field: PrimeField, m: usize, digits: &[u64]) -> Option<TrigonalModel> {
        debug_assert_eq!(digits.len(), self.coefficient_count(m));
        match self {
            ModelSpace::Depressed => {
                let (a, b) = digits.split_at(2 * m + 1);
                Some(
                    TrigonalModel::new(Poly::from_raw(field, a.to_vec()), Poly::from_raw(field, b.to_vec()), m)
                        .expect("degrees within bounds"),
                )
            }
            ModelSpace::BinaryCubic => {
                let mut it = digits.chunks(m + 1).map(|c| Poly::from_raw(field, c.to_vec()));
                let form = BinaryForm {
                    a: it.next()?,
                    b: it.next()?,
                    c: it.next()?,
                    d: it.next()?,
                };
                if form.a.is_zero() {
                    return None;
                }
                Some(TrigonalModel::from_form(form, m).expect("degrees within bounds"))
            }
        }
    }
}

impl fmt::Display for ModelSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelSpace {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "depressed" => Ok(ModelSpace::Depressed),
            "binary" | "binary-cubic" => Ok(ModelSpace::BinaryCubic),
            _ => Err(Error::InvalidArgument(format!("unknown model space {s:?}"))),
        }
    }
}

/// Which valid models are kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ensemble {
    All,
    /// Squarefree finite discriminant and discriminant exponent at most one at infinity.
    SquarefreeDisc,
}

impl Ensemble {
    pub fn name(&self) -> &'static str {
        match self {
            Ensemble::All => "all",
            Ensemble::SquarefreeDisc => "squarefree-disc",
        }
    }
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ensemble {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Ensemble::All),
            "squarefree-disc" | "squarefree" => Ok(Ensemble::SquarefreeDisc),
            _ => Err(Error::InvalidArgument(format!("unknown ensemble {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn model(a: &[i64], b: &[i64], m: usize) -> TrigonalModel {
        TrigonalModel::new(Poly::from_ints(f5(), a), Poly::from_ints(f5(), b), m).unwrap()
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&model(&[0, 1], &[1], 1)), Poly::from_ints(f5(), &[3, 0, 0, 1]));
        assert_eq!(discriminant(&model(&[], &[0, 1], 1)), Poly::from_ints(f5(), &[0, 0, 3]));
        assert!(discriminant(&model(&[], &[], 1)).is_zero());
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible_global(&model(&[0, 1], &[1], 1)));
        assert!(!is_irreducible_global(&model(&[0, -1], &[], 1)));
        // (t + 1)^3 = t^3 + 3t^2 + 3t + 1
        let m = model(&[], &[-1, -3, -3, -1], 1);
        assert_eq!(polynomial_roots(&m), vec![Poly::from_ints(f5(), &[1, 1])]);
        // y^3 - t^2 y = y (y - t)(y + t)
        let m = model(&[0, 0, -1], &[], 1);
        assert_eq!(polynomial_roots(&m).len(), 3);
    }

    #[test]
    fn form_discriminant_identity() {
        let f = PrimeField::new(7).unwrap();
        let p = |c: &[i64]| Poly::from_ints(f, c);
        let form = BinaryForm {
            a: p(&[2, 1]),
            b: p(&[0, 3]),
            c: p(&[5, 0, 1]),
            d: p(&[1, 1]),
        };
        let (a, b) = form.depressed().unwrap();
        let m = TrigonalModel::new(a, b, 2).unwrap();
        let lhs = discriminant(&m);
        let rhs = form.a.mul(&form.a).unwrap().mul(&form.discriminant()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bounds_are_enforced() {
        let f = f5();
        assert!(TrigonalModel::new(Poly::monomial(f, 1, 3), Poly::zero(f), 1).is_err());
        assert!(TrigonalModel::new(Poly::zero(f), Poly::monomial(f, 1, 4), 1).is_err());
        assert!(TrigonalModel::new(Poly::zero(f), Poly::zero(f), 0).is_err());
        assert_eq!("binary".parse::<ModelSpace>().unwrap(), ModelSpace::BinaryCubic);
        assert_eq!("squarefree-disc".parse::<Ensemble>().unwrap(), Ensemble::SquarefreeDisc);
    }
}
