use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime >= 5")]
    BadModulus(u64),
    #[error("operands live over different fields (F_{0} vs F_{1})")]
    FieldMismatch(u64, u64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("q = {0} is not a prime power coprime to 6")]
    InvalidQ(u64),
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("degree n = {0} outside the supported range 1..=8")]
    DegreeOutOfRange(usize),
    #[error("characteristic {char} of q = {q} does not exceed n = {n}; wild ramification is not modelled")]
    WildCharacteristic { n: usize, q: u64, char: u64 },
    #[error("splitting type undetermined at {place} after raising precision to the cap {cap}")]
    PrecisionExhausted { place: String, cap: usize },
    #[error("search space of {size} exceeds the feasibility limit {limit}")]
    Infeasible { size: u128, limit: u128 },
    #[error("rejection rate too high: {accepted} accepted out of {attempts} attempts")]
    RejectionRate { accepted: u64, attempts: u64 },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("histogram is empty")]
    EmptyHistogram,
    #[error("observed outcome {0} has zero expected probability")]
    ZeroExpected(usize),
    #[error("{0} is not a cycle of the given permutation")]
    NotACycle(String),
    #[error("splitting type {0} is not realizable")]
    Unrealizable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
