use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// All partitions of `n`, parts in decreasing order, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of distinct values among the parts.
pub fn distinct_parts(lambda: &[usize]) -> usize {
    let mut v = lambda.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// `p(n, m)` and `p(n, m, k)`: partitions of `n` into `m` parts, and those whose
/// parts take exactly `k` distinct values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionStats {
    pub n: usize,
    by_parts: BTreeMap<usize, u64>,
    by_parts_values: BTreeMap<(usize, usize), u64>,
}

impl PartitionStats {
    pub fn p(&self, m: usize) -> u64 {
        self.by_parts.get(&m).copied().unwrap_or(0)
    }

    pub fn p_k(&self, m: usize, k: usize) -> u64 {
        self.by_parts_values.get(&(m, k)).copied().unwrap_or(0)
    }

    pub fn table(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.by_parts_values
    }
}

pub fn partition_stats(n: usize) -> PartitionStats {
    let mut by_parts = BTreeMap::new();
    let mut by_parts_values = BTreeMap::new();
    for lambda in partitions(n) {
        let m = lambda.len();
        *by_parts.entry(m).or_insert(0) += 1;
        *by_parts_values.entry((m, distinct_parts(&lambda))).or_insert(0) += 1;
    }
    PartitionStats {
        n,
        by_parts,
        by_parts_values,
    }
}

/// Mean fiber size predicted by weighting each partition of `n` with
/// `q^-(n - #parts)` and scoring it by its number of distinct part sizes.
pub fn expected_fiber_partition_formula<T: Scalar>(n: usize, q: u64) -> T {
    let stats = partition_stats(n);
    let q = T::from_int(q as i64);
    let mut num = T::zero();
    let mut den = T::zero();
    for l in 0..n {
        let w = T::one() / T::powi(&q, l as u32);
        let m = n - l;
        den = den + T::from_int(stats.p(m) as i64) * w.clone();
        for k in 1..=n {
            let c = stats.p_k(m, k);
            if c > 0 {
                num = num + T::from_int((k as u64 * c) as i64) * w.clone();
            }
        }
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use num_rational::BigRational;

    #[test]
    fn counts() {
        let counts: Vec<usize> = (1..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        let s4 = partition_stats(4);
        assert_eq!((s4.p(2), s4.p_k(2, 1), s4.p_k(2, 2)), (2, 1, 1));
        assert_eq!(partition_stats(5).p_k(3, 2), 2);
        for n in 1..=8 {
            let s = partition_stats(n);
            assert_eq!((s.p(n), s.p_k(n, 1)), (1, 1));
            for m in 1..=n {
                let sum: u64 = (1..=n).map(|k| s.p_k(m, k)).sum();
                assert_eq!(sum, s.p(m));
            }
        }
    }

    #[test]
    fn closed_forms() {
        for q in [5i64, 7, 11, 13] {
            let f3: BigRational = expected_fiber_partition_formula(3, q as u64);
            assert_eq!(f3, rational(1, 1) + rational(q, q * q + q + 1));
            let f4: BigRational = expected_fiber_partition_formula(4, q as u64);
            assert_eq!(f4, rational(1, 1) + rational(q * q + q, q * q * q + q * q + 2 * q + 1));
            let f5: BigRational = expected_fiber_partition_formula(5, q as u64);
            let q2 = q * q;
            let q3 = q2 * q;
            assert_eq!(
                f5,
                rational(1, 1) + rational(q3 + 2 * q2 + 2 * q, q3 * q + q3 + 2 * q2 + 2 * q + 1)
            );
        }
        let f: BigRational = expected_fiber_partition_formula(5, 5);
        assert_eq!(f, rational(996, 811));
        let f: BigRational = expected_fiber_partition_formula(4, 5);
        assert_eq!(f, rational(191, 161));
    }
}
