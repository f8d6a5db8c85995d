use crate::error::{Error, Result};
use crate::field::prime_power_base;
use crate::scalar::Scalar;
use crate::sn::Permutation;

use super::SplittingType;

/// Which residue classes of `q` mod 3 a chart row is present for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Congruence {
    Any,
    OneMod3,
    TwoMod3,
}

impl Congruence {
    pub fn holds(&self, q: u64) -> bool {
        match self {
            Congruence::Any => true,
            Congruence::OneMod3 => q % 3 == 1,
            Congruence::TwoMod3 => q % 3 == 2,
        }
    }
}

/// One cubic étale algebra over a tame local field with its Galois data and mass.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartRow<T> {
    /// Frobenius image.
    pub x: Permutation,
    /// Inertia generator image.
    pub y: Permutation,
    pub splitting_type: SplittingType,
    pub condition: Congruence,
    pub c: T,
}

impl<T> ChartRow<T> {
    pub fn fiber_points(&self) -> usize {
        self.splitting_type.fiber_points()
    }
}

pub(crate) fn validate_q(q: u64) -> Result<u64> {
    match prime_power_base(q) {
        Some(p) if p >= 5 => Ok(p),
        _ => Err(Error::InvalidQ(q)),
    }
}

/// The rows present for `q`, each with its exact mass.
///
/// Totally ramified algebras appear as three rows of `1/(3q^2)` when `q = 1 mod 3`
/// and as one row of `1/q^2` when `q = 2 mod 3`.
pub fn chart_c_constants<T: Scalar>(q: u64) -> Result<Vec<ChartRow<T>>> {
    validate_q(q)?;
    let qt = T::from_int(q as i64);
    let q2 = qt.clone() * qt.clone();
    let perm = |cycles: &[&[u8]]| Permutation::from_cycles(3, cycles).expect("valid S_3 element");
    let id = perm(&[]);
    let t12 = perm(&[&[0, 1]]);
    let c123 = perm(&[&[0, 1, 2]]);
    let c132 = perm(&[&[0, 2, 1]]);

    use SplittingType::*;
    let rows = vec![
        (id.clone(), id.clone(), Split, Congruence::Any, T::ratio(1, 6)),
        (t12.clone(), id.clone(), LinearQuadratic, Congruence::Any, T::ratio(1, 2)),
        (c123.clone(), id.clone(), Inert, Congruence::Any, T::ratio(1, 3)),
        (id.clone(), t12.clone(), LinearRamified, Congruence::Any, T::one() / (T::from_int(2) * qt.clone())),
        (t12.clone(), t12.clone(), LinearRamified, Congruence::Any, T::one() / (T::from_int(2) * qt)),
        (c123.clone(), c123.clone(), TotallyRamified, Congruence::OneMod3, T::one() / (T::from_int(3) * q2.clone())),
        (c132, c123.clone(), TotallyRamified, Congruence::OneMod3, T::one() / (T::from_int(3) * q2.clone())),
        (id, c123.clone(), TotallyRamified, Congruence::OneMod3, T::one() / (T::from_int(3) * q2.clone())),
        (t12, c123, TotallyRamified, Congruence::TwoMod3, T::one() / q2),
    ];
    Ok(rows
        .into_iter()
        .filter(|r| r.3.holds(q))
        .map(|(x, y, splitting_type, condition, c)| ChartRow {
            x,
            y,
            splitting_type,
            condition,
            c,
        })
        .collect())
}

/// Chart mass of a splitting type, summed over rows sharing that type.
pub fn type_mass<T: Scalar>(q: u64, t: SplittingType) -> Result<T> {
    Ok(chart_c_constants::<T>(q)?
        .into_iter()
        .filter(|r| r.splitting_type == t)
        .fold(T::zero(), |acc, r| acc + r.c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn total(q: u64) -> BigRational {
        chart_c_constants::<BigRational>(q)
            .unwrap()
            .into_iter()
            .fold(BigRational::zero(), |a, r| a + r.c)
    }

    #[test]
    fn totals_for_both_residues() {
        for q in [5u64, 7, 11, 13, 25, 49] {
            let q = q as i64;
            assert_eq!(total(q as u64), rational(q * q + q + 1, q * q), "q = {q}");
        }
    }

    #[test]
    fn totally_ramified_rows() {
        let seven: Vec<_> = chart_c_constants::<BigRational>(7)
            .unwrap()
            .into_iter()
            .filter(|r| r.splitting_type == SplittingType::TotallyRamified)
            .collect();
        assert_eq!(seven.len(), 3);
        assert!(seven.iter().all(|r| r.c == rational(1, 147)));
        let five: Vec<_> = chart_c_constants::<BigRational>(5)
            .unwrap()
            .into_iter()
            .filter(|r| r.splitting_type == SplittingType::TotallyRamified)
            .collect();
        assert_eq!(five.len(), 1);
        assert_eq!(five[0].c, rational(1, 25));
        assert_eq!(five[0].x.to_string(), "(12)");
    }

    #[test]
    fn rows_satisfy_the_tame_relation() {
        for q in [5u64, 7, 11, 13] {
            for r in chart_c_constants::<f64>(q).unwrap() {
                assert_eq!(r.y.conjugate_by(&r.x), r.y.pow(q), "row {:?}", r);
            }
        }
    }

    #[test]
    fn rejects_q_sharing_a_factor_with_six() {
        for q in [2u64, 3, 4, 6, 9, 12, 15, 1] {
            assert!(chart_c_constants::<f64>(q).is_err(), "q = {q}");
        }
    }

    #[test]
    fn aggregated_type_masses() {
        assert_eq!(type_mass::<BigRational>(5, SplittingType::LinearRamified).unwrap(), rational(1, 5));
        assert_eq!(type_mass::<BigRational>(7, SplittingType::TotallyRamified).unwrap(), rational(1, 49));
        assert_eq!(type_mass::<BigRational>(5, SplittingType::LinearQuadratic).unwrap(), rational(1, 2));
    }
}
