use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::PrimeField;

use super::{splitting_type, LocalModel, SplittingType};

/// Haar measure of each splitting type on pairs `(a, b)` known to `precision` digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeDensity {
    pub q: u64,
    pub precision: usize,
    /// Number of digit tuples per type, out of `q^(2 precision)`.
    pub counts: BTreeMap<SplittingType, u128>,
    pub undetermined_count: u128,
}

impl TypeDensity {
    pub fn total(&self) -> u128 {
        (self.q as u128).pow(2 * self.precision as u32)
    }

    fn fraction(&self, c: u128) -> BigRational {
        BigRational::new(BigInt::from(c), BigInt::from(self.total()))
    }

    pub fn mass(&self, t: SplittingType) -> BigRational {
        self.fraction(self.counts.get(&t).copied().unwrap_or(0))
    }

    pub fn undetermined(&self) -> BigRational {
        self.fraction(self.undetermined_count)
    }

    /// Type law conditioned on being determined.
    pub fn determined_law(&self) -> BTreeMap<SplittingType, BigRational> {
        let det: u128 = self.counts.values().sum();
        SplittingType::ALL
            .into_iter()
            .map(|t| {
                let c = self.counts.get(&t).copied().unwrap_or(0);
                let m = if det == 0 {
                    BigRational::zero()
                } else {
                    BigRational::new(BigInt::from(c), BigInt::from(det))
                };
                (t, m)
            })
            .collect()
    }

    fn merge(mut self, other: TypeDensity) -> TypeDensity {
        for (t, c) in other.counts {
            *self.counts.entry(t).or_insert(0) += c;
        }
        self.undetermined_count += other.undetermined_count;
        self
    }
}

const TREE_LIMIT: u128 = 1 << 100;
const BRUTE_LIMIT: u128 = 20_000_000;

fn empty(q: u64, precision: usize) -> TypeDensity {
    TypeDensity {
        q,
        precision,
        counts: BTreeMap::new(),
        undetermined_count: 0,
    }
}

fn check_size(q: u64, precision: usize, limit: u128) -> Result<PrimeField> {
    let field = PrimeField::new(q)?;
    if precision == 0 {
        return Err(Error::InvalidArgument("precision must be >= 1".into()));
    }
    let size = (q as u128).checked_pow(2 * precision as u32).unwrap_or(u128::MAX);
    if size > limit {
        return Err(Error::Infeasible { size, limit });
    }
    Ok(field)
}

/// Exact type densities at finite level, by a digit-tree search.
///
/// A node fixes the first `k` digits of `a` and `b`. Once the type is determined
/// from those digits it holds for the whole subtree, so the search only descends
/// through undetermined nodes.
pub fn local_type_density(q: u64, precision: usize) -> Result<TypeDensity> {
    let field = check_size(q, precision, TREE_LIMIT)?;
    let roots: Vec<(u64, u64)> = (0..q).flat_map(|a| (0..q).map(move |b| (a, b))).collect();
    Ok(roots
        .into_par_iter()
        .map(|(a0, b0)| {
            let mut acc = empty(q, precision);
            descend(field, precision, &mut vec![a0], &mut vec![b0], &mut acc);
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(empty(q, precision), TypeDensity::merge))
}

fn descend(field: PrimeField, n: usize, a: &mut Vec<u64>, b: &mut Vec<u64>, acc: &mut TypeDensity) {
    let k = a.len();
    let model = LocalModel::from_raw(field, a.clone(), b.clone());
    let weight = (field.modulus() as u128).pow(2 * (n - k) as u32);
    if let Ok(t) = splitting_type(&model) {
        *acc.counts.entry(t).or_insert(0) += weight;
        return;
    }
    if k == n {
        acc.undetermined_count += 1;
        return;
    }
    for da in 0..field.modulus() {
        for db in 0..field.modulus() {
            a.push(da);
            b.push(db);
            descend(field, n, a, b, acc);
            a.pop();
            b.pop();
        }
    }
}

/// The same densities by classifying every digit tuple at full precision.
pub fn brute_force_type_density(q: u64, precision: usize) -> Result<TypeDensity> {
    let field = check_size(q, precision, BRUTE_LIMIT)?;
    let half = (q as u128).pow(precision as u32) as u64;
    let digits = |mut idx: u64| -> Vec<u64> {
        (0..precision)
            .map(|_| {
                let d = idx % q;
                idx /= q;
                d
            })
            .collect()
    };
    Ok((0..half)
        .into_par_iter()
        .map(|ia| {
            let mut acc = empty(q, precision);
            let a = digits(ia);
            for ib in 0..half {
                let model = LocalModel::from_raw(field, a.clone(), digits(ib));
                match splitting_type(&model) {
                    Ok(t) => *acc.counts.entry(t).or_insert(0) += 1,
                    Err(_) => acc.undetermined_count += 1,
                }
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(empty(q, precision), TypeDensity::merge))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn level_one_is_the_residue_count() {
        let d = local_type_density(5, 1).unwrap();
        assert_eq!(d.mass(SplittingType::Split), rational(2, 25));
        assert_eq!(d.undetermined(), rational(1, 5));
        assert_eq!(d.mass(SplittingType::LinearRamified), rational(0, 1));
    }

    #[test]
    fn tree_search_matches_brute_force() {
        for (q, n) in [(5, 1), (5, 2), (7, 1), (7, 2), (5, 3)] {
            assert_eq!(
                local_type_density(q, n).unwrap(),
                brute_force_type_density(q, n).unwrap(),
                "q = {q}, N = {n}"
            );
        }
    }

    #[test]
    fn undetermined_mass_shrinks() {
        let masses: Vec<_> = (1..=4)
            .map(|n| local_type_density(5, n).unwrap().undetermined())
            .collect();
        assert!(masses.windows(2).all(|w| w[1] < w[0]), "{masses:?}");
    }

    #[test]
    fn guards() {
        assert!(brute_force_type_density(5, 8).is_err());
        assert!(local_type_density(4, 2).is_err());
        assert!(local_type_density(5, 0).is_err());
    }
}
