//! Trigonal curve models `y^3 + A(t) y + B(t)` over F_q and their point counts.

mod model;
mod run;
mod summary;

pub use model::{discriminant, is_irreducible_global, polynomial_roots, BinaryForm, Ensemble, ModelSpace, TrigonalModel};
pub use run::{
    empirical_relative_density, enumerate, sample, sample_rng, FamilySpec, Run, Tally, ENUMERATION_LIMIT,
    MAX_ATTEMPTS_PER_SAMPLE,
};
pub use summary::{
    fiber_count, genus, genus_from_disc_degree, judge, place_types, point_count, CurveSummary, DiscDegree, Verdict,
};
