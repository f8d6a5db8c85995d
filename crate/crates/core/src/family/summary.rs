use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::local::{classify_place, Place, SplittingType};
use crate::poly::Poly;

use super::model::{discriminant, is_irreducible_global, Ensemble, TrigonalModel};

/// Degree of the discriminant divisor, or a lower bound when some places could not
/// be resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscDegree {
    Exact(usize),
    AtLeast(usize),
}

impl DiscDegree {
    pub fn lower_bound(&self) -> usize {
        match *self {
            DiscDegree::Exact(d) | DiscDegree::AtLeast(d) => d,
        }
    }
}

/// Per-place splitting types and point counts for one model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSummary {
    pub types: BTreeMap<Place, SplittingType>,
    pub total_points: usize,
    pub genus: Option<usize>,
    pub disc_degree: DiscDegree,
}

impl CurveSummary {
    pub fn fiber(&self, place: Place) -> usize {
        self.types[&place].fiber_points()
    }

    /// Fiber sizes in place order (finite places by residue, then infinity).
    pub fn fibers(&self) -> Vec<usize> {
        self.types.values().map(SplittingType::fiber_points).collect()
    }

    /// `(N - q - 1)^2 <= 4 g^2 q`; vacuous when the genus is unknown.
    pub fn satisfies_weil(&self, q: u64) -> bool {
        match self.genus {
            Some(g) => {
                let dev = self.total_points as i128 - q as i128 - 1;
                dev * dev <= 4 * (g as i128).pow(2) * q as i128
            }
            None => true,
        }
    }
}

/// Number of points over `z`, raising precision up to `cap` as needed.
pub fn fiber_count(model: &TrigonalModel, z: Place, cap: usize) -> Result<usize> {
    Ok(classify_place(model.a(), model.b(), z, cap)?.fiber_points())
}

fn multiplicity(p: &Poly, root: &Poly) -> usize {
    let mut k = 0;
    let mut cur = p.clone();
    loop {
        let (quo, rem) = cur.divrem(root).expect("nonzero divisor");
        if !rem.is_zero() || cur.is_zero() {
            return k;
        }
        cur = quo;
        k += 1;
    }
}

/// Discriminant divisor degree from the reduced discriminant and the types at the
/// places where it vanishes to order two or more.
fn disc_divisor_degree(model: &TrigonalModel, types: &BTreeMap<Place, SplittingType>) -> Result<DiscDegree> {
    let delta = model.reduced_discriminant();
    if delta.is_zero() {
        return Err(Error::InvalidModel("discriminant is zero".into()));
    }
    let d_inf = types[&Place::Infinity].disc_exponent();
    let total_deg = delta.degree().finite().unwrap_or(0);
    // rational places where delta vanishes to order >= 2 are classified directly
    let repeated = delta.gcd(&delta.derivative())?;
    if repeated.is_constant() {
        return Ok(DiscDegree::Exact(total_deg + d_inf));
    }
    let field = model.field();
    let mut deg = total_deg;
    let mut rest = repeated.monic();
    for z in repeated.roots_in_field()? {
        let lin = Poly::from_elems(field, &[-z, field.one()]);
        deg = deg - multiplicity(&delta, &lin) + types[&Place::Finite(z)].disc_exponent();
        rest = rest.divrem(&lin.pow(multiplicity(&rest, &lin) as u32))?.0;
    }
    if rest.is_constant() {
        return Ok(DiscDegree::Exact(deg + d_inf));
    }
    // higher-degree places with a repeated factor: their exponent is only known to be >= 0
    let mut r = delta;
    loop {
        let h = r.gcd(&rest)?;
        if h.is_constant() {
            break;
        }
        deg -= h.degree().finite().unwrap_or(0);
        r = r.divrem(&h)?.0;
    }
    Ok(DiscDegree::AtLeast(deg + d_inf))
}

/// Riemann-Hurwitz for a degree-3 cover of P^1: `2g - 2 = -6 + deg D`.
pub fn genus_from_disc_degree(d: DiscDegree) -> Option<usize> {
    match d {
        DiscDegree::Exact(d) if d >= 4 && d % 2 == 0 => Some((d - 4) / 2),
        _ => None,
    }
}

/// Classifies every rational place; fails if any place needs more than `cap` digits.
pub fn place_types(model: &TrigonalModel, cap: usize) -> Result<BTreeMap<Place, SplittingType>> {
    Place::all(model.field())
        .into_iter()
        .map(|z| Ok((z, classify_place(model.a(), model.b(), z, cap)?)))
        .collect()
}

pub fn point_count(model: &TrigonalModel, cap: usize) -> Result<CurveSummary> {
    let types = place_types(model, cap)?;
    let disc_degree = disc_divisor_degree(model, &types)?;
    let total_points = types.values().map(SplittingType::fiber_points).sum();
    Ok(CurveSummary {
        types,
        total_points,
        genus: genus_from_disc_degree(disc_degree),
        disc_degree,
    })
}

pub fn genus(model: &TrigonalModel, cap: usize) -> Result<Option<usize>> {
    Ok(point_count(model, cap)?.genus)
}

/// Why a candidate was rejected, or the summary of an accepted one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted(CurveSummary),
    ZeroDiscriminant,
    Reducible,
    /// No place is known to ramify, so a constant-field extension cannot be ruled out.
    Unramified,
    /// Fails the ensemble's discriminant condition.
    Filtered,
}

/// Validity checks followed by the ensemble predicate, cheapest first.
pub fn judge(model: &TrigonalModel, ensemble: Ensemble, cap: usize) -> Result<Verdict> {
    let disc = discriminant(model);
    if disc.is_zero() {
        return Ok(Verdict::ZeroDiscriminant);
    }
    if ensemble == Ensemble::SquarefreeDisc {
        let reduced = model.reduced_discriminant();
        if !reduced.is_squarefree()? {
            return Ok(Verdict::Filtered);
        }
        if model.form().is_some() {
            // the form's discriminant has degree <= 4m; its order at infinity is the gap
            let deg = reduced.degree().finite().unwrap_or(0);
            if 4 * model.m() - deg > 1 {
                return Ok(Verdict::Filtered);
            }
        }
    }
    if !is_irreducible_global(model) {
        return Ok(Verdict::Reducible);
    }
    let summary = point_count(model, cap)?;
    if summary.disc_degree.lower_bound() == 0 {
        return Ok(Verdict::Unramified);
    }
    if ensemble == Ensemble::SquarefreeDisc && summary.types[&Place::Infinity].disc_exponent() > 1 {
        return Ok(Verdict::Filtered);
    }
    Ok(Verdict::Accepted(summary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::local::DEFAULT_PRECISION_CAP;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn model(a: &[i64], b: &[i64], m: usize) -> TrigonalModel {
        TrigonalModel::new(Poly::from_ints(f5(), a), Poly::from_ints(f5(), b), m).unwrap()
    }

    #[test]
    fn worked_curve() {
        let m = model(&[0, 1], &[1], 1);
        let s = point_count(&m, DEFAULT_PRECISION_CAP).unwrap();
        assert_eq!(s.fibers(), vec![1, 0, 0, 2, 1, 2]);
        assert_eq!(s.total_points, 6);
        assert_eq!(s.genus, Some(0));
        assert_eq!(s.disc_degree, DiscDegree::Exact(4));
        let f = f5();
        assert_eq!(fiber_count(&m, Place::Finite(f.elem(1)), 64).unwrap(), 0);
        assert_eq!(fiber_count(&m, Place::Finite(f.elem(3)), 64).unwrap(), 2);
        assert_eq!(fiber_count(&m, Place::Infinity, 64).unwrap(), 2);
    }

    #[test]
    fn pure_cubic_is_rational() {
        let m = model(&[], &[0, 1], 1);
        let s = point_count(&m, DEFAULT_PRECISION_CAP).unwrap();
        assert_eq!(s.fibers(), vec![1; 6]);
        assert_eq!(s.genus, Some(0));
    }

    #[test]
    fn verdicts() {
        assert_eq!(judge(&model(&[], &[], 1), Ensemble::All, 64).unwrap(), Verdict::ZeroDiscriminant);
        assert_eq!(judge(&model(&[0, -1], &[], 1), Ensemble::All, 64).unwrap(), Verdict::Reducible);
        // constant coefficients: an everywhere-unramified constant-field cubic
        assert_eq!(judge(&model(&[1], &[1], 1), Ensemble::All, 64).unwrap(), Verdict::Unramified);
        assert!(matches!(judge(&model(&[0, 1], &[1], 1), Ensemble::SquarefreeDisc, 64).unwrap(), Verdict::Accepted(_)));
        assert_eq!(judge(&model(&[], &[0, 1], 1), Ensemble::SquarefreeDisc, 64).unwrap(), Verdict::Filtered);
    }
}
