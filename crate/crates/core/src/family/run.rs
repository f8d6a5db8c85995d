use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dist::LocalConditions;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::local::DEFAULT_PRECISION_CAP;
use crate::Rational;

use super::model::{Ensemble, ModelSpace, TrigonalModel};
use super::summary::{judge, CurveSummary, Verdict};

/// Largest candidate space [`enumerate`] will walk.
pub const ENUMERATION_LIMIT: u128 = 50_000_000;
/// Per-sample attempt budget before rejection sampling gives up.
pub const MAX_ATTEMPTS_PER_SAMPLE: u64 = 10_000;

/// What to draw and which models to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub q: u64,
    pub m: usize,
    pub space: ModelSpace,
    pub ensemble: Ensemble,
    pub precision_cap: usize,
}

impl FamilySpec {
    pub fn new(q: u64, m: usize, space: ModelSpace, ensemble: Ensemble) -> Self {
        FamilySpec {
            q,
            m,
            space,
            ensemble,
            precision_cap: DEFAULT_PRECISION_CAP,
        }
    }

    fn field(&self) -> Result<PrimeField> {
        if self.m == 0 {
            return Err(Error::InvalidArgument("height m must be >= 1".into()));
        }
        PrimeField::new(self.q)
    }

    /// Number of coefficient tuples before filtering.
    pub fn candidate_count(&self) -> u128 {
        (self.q as u128)
            .checked_pow(self.space.coefficient_count(self.m) as u32)
            .unwrap_or(u128::MAX)
    }
}

/// Candidate counts by outcome.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub candidates: u64,
    pub accepted: u64,
    /// Binary forms with vanishing leading coefficient.
    pub no_model: u64,
    pub zero_discriminant: u64,
    pub reducible: u64,
    pub unramified: u64,
    pub filtered: u64,
    pub duplicates: u64,
}

impl Tally {
    fn record(&mut self, o: &Outcome) {
        self.candidates += 1;
        match o {
            Outcome::Accepted(_) => self.accepted += 1,
            Outcome::NoModel => self.no_model += 1,
            Outcome::Duplicate => self.duplicates += 1,
            Outcome::Rejected(Verdict::ZeroDiscriminant) => self.zero_discriminant += 1,
            Outcome::Rejected(Verdict::Reducible) => self.reducible += 1,
            Outcome::Rejected(Verdict::Unramified) => self.unramified += 1,
            Outcome::Rejected(_) => self.filtered += 1,
        }
    }

    fn merge(&mut self, other: &Tally) {
        self.candidates += other.candidates;
        self.accepted += other.accepted;
        self.no_model += other.no_model;
        self.zero_discriminant += other.zero_discriminant;
        self.reducible += other.reducible;
        self.unramified += other.unramified;
        self.filtered += other.filtered;
        self.duplicates += other.duplicates;
    }
}

enum Outcome {
    Accepted(Box<(TrigonalModel, CurveSummary)>),
    NoModel,
    Duplicate,
    Rejected(Verdict),
}

/// Accepted models with their summaries, in candidate (or sample) index order.
#[derive(Debug, Clone)]
pub struct Run {
    pub spec: FamilySpec,
    pub curves: Vec<(TrigonalModel, CurveSummary)>,
    pub tally: Tally,
}

fn digits_of(mut idx: u64, q: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = idx % q;
            idx /= q;
            d
        })
        .collect()
}

/// Whether `(A, B)` is the smallest of its rescalings `(u^4 A, u^6 B)`.
fn is_canonical(model: &TrigonalModel) -> bool {
    let m = model.m();
    let key = |x: &TrigonalModel| -> Vec<u64> {
        (0..=2 * m)
            .map(|i| x.a().raw(i))
            .chain((0..=3 * m).map(|i| x.b().raw(i)))
            .collect()
    };
    let own = key(model);
    (2..model.q() as i64).all(|u| key(&model.rescale(u).expect("nonzero")) >= own)
}

fn examine(spec: &FamilySpec, field: PrimeField, digits: &[u64], dedup: bool) -> Result<Outcome> {
    let Some(model) = spec.space.build(field, spec.m, digits) else {
        return Ok(Outcome::NoModel);
    };
    if dedup && !is_canonical(&model) {
        return Ok(Outcome::Duplicate);
    }
    Ok(match judge(&model, spec.ensemble, spec.precision_cap)? {
        Verdict::Accepted(s) => Outcome::Accepted(Box::new((model, s))),
        v => Outcome::Rejected(v),
    })
}

/// Walks every candidate of the family. With `dedup`, keeps one model per orbit
/// of `(A, B) -> (u^4 A, u^6 B)`; only meaningful for the depressed space.
pub fn enumerate(spec: FamilySpec, dedup: bool) -> Result<Run> {
    let field = spec.field()?;
    if dedup && spec.space != ModelSpace::Depressed {
        return Err(Error::InvalidArgument("deduplication applies to the depressed space only".into()));
    }
    let total = spec.candidate_count();
    if total > ENUMERATION_LIMIT {
        return Err(Error::Infeasible {
            size: total,
            limit: ENUMERATION_LIMIT,
        });
    }
    let len = spec.space.coefficient_count(spec.m);
    let outcomes: Vec<Outcome> = (0..total as u64)
        .into_par_iter()
        .map(|idx| examine(&spec, field, &digits_of(idx, spec.q, len), dedup))
        .collect::<Result<_>>()?;
    let mut tally = Tally::default();
    let mut curves = Vec::new();
    for o in outcomes {
        tally.record(&o);
        if let Outcome::Accepted(c) = o {
            curves.push(*c);
        }
    }
    Ok(Run { spec, curves, tally })
}

/// Generator for sample `index`: the ChaCha8 stream `index` under key `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn draw_one(spec: &FamilySpec, field: PrimeField, seed: u64, index: u64) -> Result<(Outcome, Tally)> {
    let mut rng = sample_rng(seed, index);
    let len = spec.space.coefficient_count(spec.m);
    let mut tally = Tally::default();
    while tally.candidates < MAX_ATTEMPTS_PER_SAMPLE {
        let digits: Vec<u64> = (0..len).map(|_| rng.random_range(0..spec.q)).collect();
        let o = examine(spec, field, &digits, false)?;
        tally.record(&o);
        if matches!(o, Outcome::Accepted(_)) {
            return Ok((o, tally));
        }
    }
    Err(Error::RejectionRate {
        accepted: 0,
        attempts: tally.candidates,
    })
}

/// `count` accepted models by rejection sampling.
///
/// Sample `i` depends only on `(seed, i)`, so the output is the same for every
/// worker count; `workers = 0` uses the global pool.
pub fn sample(spec: FamilySpec, count: usize, seed: u64, workers: usize) -> Result<Run> {
    let field = spec.field()?;
    if count == 0 {
        return Err(Error::InvalidArgument("count must be >= 1".into()));
    }
    let work = || -> Result<Vec<(Outcome, Tally)>> {
        (0..count as u64)
            .into_par_iter()
            .map(|i| draw_one(&spec, field, seed, i))
            .collect()
    };
    let draws = if workers == 0 {
        work()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(work)?
    };
    let mut tally = Tally::default();
    let mut curves = Vec::with_capacity(count);
    for (o, t) in draws {
        tally.merge(&t);
        if let Outcome::Accepted(c) = o {
            curves.push(*c);
        }
    }
    if tally.accepted * 100 < tally.candidates {
        return Err(Error::RejectionRate {
            accepted: tally.accepted,
            attempts: tally.candidates,
        });
    }
    Ok(Run { spec, curves, tally })
}

/// `#{matching sigma} / #{matching sigma_prime}`, or `None` with no reference matches.
pub fn empirical_relative_density(
    curves: &[(TrigonalModel, CurveSummary)],
    sigma: &LocalConditions,
    sigma_prime: &LocalConditions,
) -> Option<Rational> {
    let count = |c: &LocalConditions| {
        curves
            .iter()
            .filter(|(_, s)| c.matches(|p| s.types.get(&p).copied()))
            .count() as i64
    };
    let den = count(sigma_prime);
    (den > 0).then(|| crate::scalar::rational(count(sigma), den))
}
