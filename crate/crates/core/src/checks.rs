//! Exact identities tying the local, distribution and permutation layers together.

use crate::dist::{fiber_law, mean_total_base, sum_law};
use crate::error::Result;
use crate::family::{judge, point_count, DiscDegree, Ensemble, TrigonalModel, Verdict};
use crate::field::PrimeField;
use crate::local::{brute_force_type_density, local_type_density, SplittingType, DEFAULT_PRECISION_CAP};
use crate::poly::Poly;
use crate::scalar::rational;
use crate::sn::{
    all_permutations, centralizer_size, chart_masses_n3, check_tame, conjectural_fiber_law,
    count_conjugators, distinct_length_mean, expected_fiber_given_y, expected_fiber_partition_formula,
    single_cycle_fix_count,
};
use crate::{ExactDist, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: &str, r: Result<(bool, String)>) -> Check {
        match r {
            Ok((passed, detail)) => Check::new(name, passed, detail),
            Err(e) => Check::new(name, false, format!("error: {e}")),
        }
    }
}

fn law(pairs: &[(usize, i64, i64)]) -> ExactDist {
    ExactDist::new(pairs.iter().map(|&(k, n, d)| (k, rational(n, d))).collect()).expect("sums to one")
}

/// Per-place law at `q = 5` and `q = 7` against hand-derived values.
pub fn fiber_law_values() -> Check {
    Check::from_result("fiber law values", (|| {
        let five = law(&[(0, 25, 93), (1, 27, 62), (2, 5, 31), (3, 25, 186)]);
        let seven = law(&[(0, 49, 171), (1, 17, 38), (2, 7, 57), (3, 49, 342)]);
        let ok5 = fiber_law::<Rational>(5)? == five;
        let ok7 = fiber_law::<Rational>(7)? == seven;
        Ok((ok5 && ok7, format!("q=5 {ok5}, q=7 {ok7}")))
    })())
}

/// Mean of the convolved law equals the closed form for the total count.
pub fn total_means() -> Check {
    Check::from_result("total point means", (|| {
        let mut bad = Vec::new();
        for q in [5u64, 7, 11, 13, 25] {
            for base in [1usize, 2, 6] {
                let conv = sum_law::<Rational>(q, base)?.mean();
                if conv != mean_total_base::<Rational>(q, base as u64) {
                    bad.push(format!("q={q} M={base}"));
                }
            }
        }
        for q in [5i64, 7, 11, 13, 17] {
            let total = sum_law::<Rational>(q as u64, q as usize + 1)?.mean();
            if total != rational(q + 2, 1) - rational(1, q * q + q + 1) {
                bad.push(format!("closed form q={q}"));
            }
            for base in [1i64, 3, 10] {
                let expect = rational(base, 1) * (rational(1, 1) + rational(q, q * q + q + 1));
                if mean_total_base::<Rational>(q as u64, base as u64) != expect {
                    bad.push(format!("per point q={q} M={base}"));
                }
            }
        }
        let six = mean_total_base::<Rational>(5, 6) == rational(216, 31);
        Ok((bad.is_empty() && six, format!("mismatches {bad:?}; q=5 M=6 gives 216/31: {six}")))
    })())
}

/// The pair-mass law for `n = 3` is the per-place law.
pub fn degree_three_law() -> Check {
    Check::from_result("degree three law", (|| {
        let mut bad = Vec::new();
        for q in [5u64, 7, 11, 13] {
            if conjectural_fiber_law::<Rational>(3, q)? != fiber_law::<Rational>(q)? {
                bad.push(q);
            }
        }
        Ok((bad.is_empty(), format!("mismatched q {bad:?}")))
    })())
}

/// Closed forms at `q = 5` and the mass mean against the partition formula.
///
/// Pairs with characteristic `<= n` are wild and are skipped.
pub fn partition_means() -> Check {
    Check::from_result("partition means", (|| {
        let f4: Rational = expected_fiber_partition_formula(4, 5);
        let f5: Rational = expected_fiber_partition_formula(5, 5);
        let closed = f4 == rational(191, 161) && f5 == rational(996, 811);
        let mut bad = Vec::new();
        for q in [5i64, 7, 11] {
            let (q2, q3) = (q * q, q * q * q);
            let four: Rational = expected_fiber_partition_formula(4, q as u64);
            if four != rational(1, 1) + rational(q2 + q, q3 + q2 + 2 * q + 1) {
                bad.push(format!("closed n=4 q={q}"));
            }
            let five: Rational = expected_fiber_partition_formula(5, q as u64);
            if five != rational(1, 1) + rational(q3 + 2 * q2 + 2 * q, q3 * q + q3 + 2 * q2 + 2 * q + 1) {
                bad.push(format!("closed n=5 q={q}"));
            }
        }
        let mut skipped = Vec::new();
        for n in 2..=6 {
            for q in [5u64, 7, 11] {
                let formula: Rational = expected_fiber_partition_formula(n, q);
                if formula != distinct_length_mean::<Rational>(n, q) {
                    bad.push(format!("distinct n={n} q={q}"));
                }
                if check_tame(n, q).is_err() {
                    skipped.push(format!("({n},{q})"));
                    continue;
                }
                if conjectural_fiber_law::<Rational>(n, q)?.mean() != formula {
                    bad.push(format!("mass n={n} q={q}"));
                }
            }
        }
        Ok((
            closed && bad.is_empty(),
            format!("191/161 and 996/811: {closed}; mismatches {bad:?}; wild skipped {}", skipped.join(" ")),
        ))
    })())
}

/// Pair classes for `n = 3` reproduce the chart rows, for `q` in both classes mod 3.
pub fn chart_rows() -> Check {
    Check::from_result("chart rows", (|| {
        let mut bad = Vec::new();
        for q in [5u64, 7, 11, 13] {
            if !chart_masses_n3::<Rational>(q)?.agrees() {
                bad.push(q);
            }
        }
        Ok((bad.is_empty(), format!("mismatched q {bad:?}")))
    })())
}

/// Conjugator counts against centralizer orders for every `y` of order prime to `q`,
/// plus the single-cycle and expected-fiber identities.
pub fn centralizer_identities() -> Check {
    Check::from_result("centralizer identities", (|| {
        let mut bad = Vec::new();
        let mut tested = 0usize;
        for q in [5u64, 7, 11, 13] {
            for n in 1..=6 {
                for y in all_permutations(n) {
                    if y.order() % q == 0 {
                        continue;
                    }
                    tested += 1;
                    let ct = y.cycle_type();
                    let cent = centralizer_size(&ct);
                    if count_conjugators(&y, q) != cent {
                        bad.push(format!("count y={y} q={q}"));
                    }
                    let mut lengths = ct.clone();
                    lengths.dedup();
                    if expected_fiber_given_y::<Rational>(&y, q) != rational(lengths.len() as i64, 1) {
                        bad.push(format!("mean y={y} q={q}"));
                    }
                    if n <= 5 {
                        for c in y.cycles() {
                            let a = ct.iter().filter(|&&b| b == c.len()).count() as u64;
                            if single_cycle_fix_count(&y, &c, q)? * a != cent {
                                bad.push(format!("cycle y={y} q={q}"));
                            }
                        }
                    }
                }
            }
        }
        Ok((bad.is_empty(), format!("{tested} elements, failures {bad:?}")))
    })())
}

/// One digit of precision: the exact strata, and the tree search against brute force.
pub fn local_density_strata() -> Check {
    Check::from_result("local density strata", (|| {
        let d = local_type_density(5, 1)?;
        let split = d.mass(SplittingType::Split) == rational(2, 25);
        let und = d.undetermined() == rational(1, 5);
        let tree = local_type_density(5, 2)?;
        let brute = brute_force_type_density(5, 2)?;
        let same = tree.counts == brute.counts && tree.undetermined_count == brute.undetermined_count;
        Ok((
            split && und && same,
            format!("split 2/25 {split}, undetermined 1/5 {und}, tree = brute {same}"),
        ))
    })())
}

/// `y^3 + t y + 1` over `F_5` with `m = 1`.
pub fn worked_curve() -> Check {
    Check::from_result("worked curve", (|| {
        let f = PrimeField::new(5)?;
        let model = TrigonalModel::new(Poly::from_ints(f, &[0, 1]), Poly::from_ints(f, &[1]), 1)?;
        let s = point_count(&model, DEFAULT_PRECISION_CAP)?;
        let ok = s.fibers() == [1, 0, 0, 2, 1, 2]
            && s.total_points == 6
            && s.genus == Some(0)
            && s.disc_degree == DiscDegree::Exact(4)
            && matches!(judge(&model, Ensemble::SquarefreeDisc, DEFAULT_PRECISION_CAP)?, Verdict::Accepted(_));
        Ok((ok, format!("fibers {:?}, genus {:?}", s.fibers(), s.genus)))
    })())
}

pub fn verify_suite() -> Vec<Check> {
    vec![
        fiber_law_values(),
        total_means(),
        degree_three_law(),
        partition_means(),
        chart_rows(),
        centralizer_identities(),
        local_density_strata(),
        worked_curve(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        for c in verify_suite() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
