//! Local behaviour of `y^3 + A(t) y + B(t)` at degree-one places of P^1.
//!
//! A place is completed to `F_q((u))`; the cubic over that local field factors into
//! pieces with ramification index `e` and residue degree `f`. The fiber over the
//! place contains one rational point per piece with `f = 1`.

mod chart;
mod classify;
mod density;
pub(crate) mod series;

use std::fmt;
use std::str::FromStr;

pub use chart::{chart_c_constants, type_mass, ChartRow, Congruence};
pub(crate) use chart::validate_q;
pub use density::{brute_force_type_density, local_type_density, TypeDensity};

use crate::error::{Error, Result};
use crate::field::{FieldElem, PrimeField};
use crate::poly::Poly;
use classify::{classify, LocalPoly};

/// A degree-one place of P^1 over F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(FieldElem),
    Infinity,
}

impl Place {
    /// All `q + 1` rational places, finite ones first.
    pub fn all(field: PrimeField) -> Vec<Place> {
        field
            .elements()
            .map(Place::Finite)
            .chain(std::iter::once(Place::Infinity))
            .collect()
    }

    /// Stable textual key: the residue for finite places, `inf` otherwise.
    pub fn key(&self) -> String {
        match self {
            Place::Finite(z) => z.value().to_string(),
            Place::Infinity => "inf".to_string(),
        }
    }

    pub fn parse(field: PrimeField, s: &str) -> Result<Place> {
        match s.trim() {
            "inf" | "infinity" | "oo" => Ok(Place::Infinity),
            v => v
                .parse::<i64>()
                .map(|z| Place::Finite(field.elem(z)))
                .map_err(|_| Error::InvalidArgument(format!("bad place {s:?}"))),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(z) => write!(f, "t={z}"),
            Place::Infinity => write!(f, "t=inf"),
        }
    }
}

/// The five cubic étale algebras over a tame local field, by splitting type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplittingType {
    /// {(1,1),(1,1),(1,1)}
    Split,
    /// {(1,1),(1,2)}
    LinearQuadratic,
    /// {(1,3)}
    Inert,
    /// {(1,1),(2,1)}
    LinearRamified,
    /// {(3,1)}
    TotallyRamified,
}

impl SplittingType {
    pub const ALL: [SplittingType; 5] = [
        SplittingType::Split,
        SplittingType::LinearQuadratic,
        SplittingType::Inert,
        SplittingType::LinearRamified,
        SplittingType::TotallyRamified,
    ];

    /// The `(e, f)` multiset, sorted.
    pub fn factors(&self) -> &'static [(u8, u8)] {
        match self {
            SplittingType::Split => &[(1, 1), (1, 1), (1, 1)],
            SplittingType::LinearQuadratic => &[(1, 1), (1, 2)],
            SplittingType::Inert => &[(1, 3)],
            SplittingType::LinearRamified => &[(1, 1), (2, 1)],
            SplittingType::TotallyRamified => &[(3, 1)],
        }
    }

    pub fn from_factors(factors: &[(u8, u8)]) -> Result<SplittingType> {
        let mut sorted = factors.to_vec();
        sorted.sort_unstable();
        SplittingType::ALL
            .into_iter()
            .find(|t| t.factors() == sorted.as_slice())
            .ok_or_else(|| Error::Unrealizable(format!("{sorted:?}")))
    }

    /// Number of F_q-points in the fiber: factors with residue degree one.
    pub fn fiber_points(&self) -> usize {
        self.factors().iter().filter(|&&(_, f)| f == 1).count()
    }

    /// Valuation of the field discriminant (tame: sum of `f (e - 1)`).
    pub fn disc_exponent(&self) -> usize {
        self.factors()
            .iter()
            .map(|&(e, f)| (f as usize) * (e as usize - 1))
            .sum()
    }

    pub fn name(&self) -> &'static str {
        match self {
            SplittingType::Split => "split",
            SplittingType::LinearQuadratic => "linear-quadratic",
            SplittingType::Inert => "inert",
            SplittingType::LinearRamified => "linear-ramified",
            SplittingType::TotallyRamified => "totally-ramified",
        }
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SplittingType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SplittingType::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown splitting type {s:?}")))
    }
}

/// Fiber size of a splitting type.
pub fn fiber_points(t: SplittingType) -> usize {
    t.fiber_points()
}

/// The known digits did not pin down the splitting type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Undetermined;

impl fmt::Display for Undetermined {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("splitting type undetermined at this precision")
    }
}

impl std::error::Error for Undetermined {}

/// `y^3 + a(u) y + b(u)` with `a`, `b` known modulo `u^precision`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalModel {
    field: PrimeField,
    a: Vec<u64>,
    b: Vec<u64>,
}

impl LocalModel {
    /// Builds from coefficient digits; both series are padded/truncated to `precision`.
    pub fn new(field: PrimeField, a: &[i64], b: &[i64], precision: usize) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidArgument("precision must be >= 1".into()));
        }
        let digits = |s: &[i64]| -> Vec<u64> {
            (0..precision)
                .map(|i| s.get(i).map_or(0, |&c| field.reduce(c)))
                .collect()
        };
        Ok(LocalModel {
            field,
            a: digits(a),
            b: digits(b),
        })
    }

    pub(crate) fn from_raw(field: PrimeField, a: Vec<u64>, b: Vec<u64>) -> Self {
        debug_assert_eq!(a.len(), b.len());
        LocalModel { field, a, b }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn precision(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> Vec<FieldElem> {
        self.a.iter().map(|&c| self.field.elem(c as i64)).collect()
    }

    pub fn b(&self) -> Vec<FieldElem> {
        self.b.iter().map(|&c| self.field.elem(c as i64)).collect()
    }

    /// Valuation of `-4a^3 - 27b^2`, if it is below the precision.
    pub fn disc_valuation(&self) -> Option<usize> {
        let f = self.field;
        let a3 = series::mul(f, &series::mul(f, &self.a, &self.a), &self.a);
        let b2 = series::mul(f, &self.b, &self.b);
        let disc = series::sub(
            f,
            &series::scale(f, &a3, f.reduce(-4)),
            &series::scale(f, &b2, 27 % f.modulus()),
        );
        series::valuation(&disc)
    }
}

/// Completes the global model `y^3 + A y + B` at `place`, keeping `precision` digits.
///
/// At infinity the model is made integral by `y -> y / s^m` with
/// `m = max(ceil(deg A / 2), ceil(deg B / 3))`.
pub fn localize(a: &Poly, b: &Poly, place: Place, precision: usize) -> Result<LocalModel> {
    let field = a.field();
    if b.field() != field {
        return Err(Error::FieldMismatch(field.modulus(), b.field().modulus()));
    }
    if precision == 0 {
        return Err(Error::InvalidArgument("precision must be >= 1".into()));
    }
    let take = |p: &Poly| -> Vec<u64> { (0..precision).map(|i| p.raw(i)).collect() };
    match place {
        Place::Finite(z) => Ok(LocalModel::from_raw(
            field,
            take(&a.shift(z)),
            take(&b.shift(z)),
        )),
        Place::Infinity => {
            let m = infinity_twist(a, b);
            let reverse = |p: &Poly, weight: usize| -> Vec<u64> {
                let mut out = vec![0u64; precision];
                for (i, &c) in p.raw_coeffs().iter().enumerate() {
                    let k = weight - i;
                    if k < precision {
                        out[k] = c;
                    }
                }
                out
            };
            Ok(LocalModel::from_raw(
                field,
                reverse(a, 2 * m),
                reverse(b, 3 * m),
            ))
        }
    }
}

/// Smallest `m` with `deg A <= 2m` and `deg B <= 3m`.
pub fn infinity_twist(a: &Poly, b: &Poly) -> usize {
    let da = a.degree().finite().unwrap_or(0);
    let db = b.degree().finite().unwrap_or(0);
    da.div_ceil(2).max(db.div_ceil(3))
}

/// Classifies the local cubic algebra, or reports that more digits are needed.
pub fn splitting_type(model: &LocalModel) -> std::result::Result<SplittingType, Undetermined> {
    let poly = LocalPoly {
        field: model.field,
        prec: model.precision(),
        c: vec![model.b.clone(), model.a.clone(), vec![0; model.precision()]],
    };
    let mut factors = Vec::with_capacity(3);
    classify(&poly, &mut factors)?;
    Ok(SplittingType::from_factors(&factors).expect("classifier emits realizable types"))
}

/// Starting precision and cap for automatic escalation.
pub const DEFAULT_START_PRECISION: usize = 8;
pub const DEFAULT_PRECISION_CAP: usize = 64;

/// Localizes and classifies, doubling the precision until determined or past `cap`.
pub fn classify_place(a: &Poly, b: &Poly, place: Place, cap: usize) -> Result<SplittingType> {
    let mut n = DEFAULT_START_PRECISION.min(cap.max(1));
    loop {
        let model = localize(a, b, place, n)?;
        match splitting_type(&model) {
            Ok(t) => return Ok(t),
            Err(Undetermined) if n < cap => n = (2 * n).min(cap),
            Err(Undetermined) => {
                return Err(Error::PrecisionExhausted {
                    place: place.to_string(),
                    cap,
                })
            }
        }
    }
}
