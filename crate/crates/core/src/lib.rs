//! Point counts on random trigonal curves over finite fields.
//!
//! Exact laws are computed over a generic [`Scalar`]; [`Rational`] is the exact
//! instantiation used throughout the checks and the command-line tool.

pub mod checks;
pub mod dist;
pub mod error;
pub mod experiment;
pub mod family;
pub mod field;
pub mod local;
pub mod poly;
pub mod scalar;
pub mod sn;

pub use dist::{Dist, EmpiricalHist, JointHist, LocalConditions};
pub use error::{Error, Result};
pub use family::{CurveSummary, Ensemble, ModelSpace, TrigonalModel};
pub use field::{FieldElem, PrimeField};
pub use local::{Place, SplittingType};
pub use poly::{Degree, Poly, ResidueCubicType};
pub use scalar::Scalar;
pub use sn::{PairClass, PartitionStats, Permutation};

pub type Rational = num_rational::BigRational;
pub type ExactDist = Dist<Rational>;
pub type FloatDist = Dist<f64>;
