//! Tame pairs `x y x^-1 = y^q` in `S_n`, their masses, and partition statistics.

mod mass;
mod partitions;
mod perm;

pub use mass::{
    centralizer_size, chart_masses_n3, check_tame, conjectural_fiber_law, count_conjugators, distinct_length_mean,
    enumerate_pairs, expected_fiber_given_y, galois_factors, orbits, pair_classes, pair_fiber_points,
    partition_weight_total, single_cycle_fix_count, splitting_type_of, ChartComparison, ChartMatch, PairClass,
    EXHAUSTIVE_MAX_N,
};
pub use partitions::{distinct_parts, expected_fiber_partition_formula, partition_stats, partitions, PartitionStats};
pub use perm::{all_permutations, centralizer, conjugator, Permutation, MAX_N};
