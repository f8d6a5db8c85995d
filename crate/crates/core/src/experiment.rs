//! Reports for the theory, conjecture and experiment commands.
//!
//! Every report is an ordered JSON tree. Rationals are `"num/den"` strings; the CSV
//! form flattens the same tree into `key,value` rows, so both carry identical numbers;
//! its extra `approx` column is a decimal reading of rational values.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::dist::{
    chi_square, fiber_law, fiber_law_conditional_squarefree, joint_independence_gap, mean_total_base,
    relative_density, sum_law, tv_distance, EmpiricalHist, JointHist, LocalConditions,
};
use crate::error::{Error, Result};
use crate::family::{empirical_relative_density, enumerate, sample, Ensemble, FamilySpec, Run};
use crate::field::PrimeField;
use crate::local::{Place, SplittingType};
use crate::scalar::{self, to_f64};
use crate::sn::{conjectural_fiber_law, expected_fiber_partition_formula};
use crate::{ExactDist, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(scalar::render(r))
}

/// `{"<k>": "num/den", ...}` in increasing `k`.
pub fn law_json(d: &ExactDist) -> Value {
    Value::Object(d.masses().iter().map(|(k, m)| (k.to_string(), rational_json(m))).collect())
}

fn law_report(q: u64, d: &ExactDist) -> Value {
    json!({
        "q": q,
        "law": law_json(d),
        "mean": rational_json(&d.mean()),
    })
}

pub fn fiber_report(q: u64) -> Result<Value> {
    Ok(law_report(q, &fiber_law(q)?))
}

pub fn conditional_report(q: u64) -> Result<Value> {
    Ok(law_report(q, &fiber_law_conditional_squarefree(q)?))
}

pub fn sum_report(q: u64, base_points: usize) -> Result<Value> {
    let mut v = law_report(q, &sum_law(q, base_points)?);
    v["base_points"] = json!(base_points);
    Ok(v)
}

pub fn mean_report(q: u64, base_points: u64) -> Result<Value> {
    crate::local::validate_q(q)?;
    let m: Rational = mean_total_base(q, base_points);
    Ok(json!({
        "q": q,
        "base_points": base_points,
        "mean": rational_json(&m),
    }))
}

/// Mass-based law and mean next to the partition formula, and whether they agree.
///
/// In wild characteristic the mass side is refused: its fields are null and the
/// report carries the reason, while the formula mean is still given.
pub fn conjecture_report(n: usize, q: u64) -> Result<(Value, bool)> {
    let mass = conjectural_fiber_law(n, q);
    let formula: Rational = expected_fiber_partition_formula(n, q);
    let law: ExactDist = match mass {
        Ok(law) => law,
        Err(e @ Error::WildCharacteristic { .. }) => {
            let v = json!({
                "n": n,
                "q": q,
                "law": null,
                "mean": null,
                "formula_mean": rational_json(&formula),
                "agree": null,
                "refused": e.to_string(),
            });
            return Ok((v, false));
        }
        Err(e) => return Err(e),
    };
    let agree = law.mean() == formula;
    let v = json!({
        "n": n,
        "q": q,
        "law": law_json(&law),
        "mean": rational_json(&law.mean()),
        "formula_mean": rational_json(&formula),
        "agree": agree,
    });
    Ok((v, agree))
}

/// Flattens a report into `key,value` rows (nested keys joined by `.`).
pub fn render(v: &Value, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::InvalidArgument(e.to_string());
            w.write_record(["key", "value", "approx"]).map_err(io)?;
            let mut rows = Vec::new();
            flatten("", v, &mut rows);
            for (k, val) in rows {
                let approx = match scalar::parse(&val) {
                    Some(r) if val.contains('/') => format!("{:.6}", to_f64(&r)),
                    _ => String::new(),
                };
                w.write_record([k, val, approx]).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(e.to_string()))
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// Parses CSV produced by [`render`] back into `(key, value)` pairs.
pub fn csv_rows(csv_text: &str) -> Result<Vec<(String, String)>> {
    let mut r = csv::Reader::from_reader(csv_text.as_bytes());
    r.records()
        .map(|rec| {
            let rec = rec.map_err(|e| Error::InvalidArgument(e.to_string()))?;
            Ok((rec[0].to_string(), rec[1].to_string()))
        })
        .collect()
}

/// The rows a JSON report flattens to; equal to [`csv_rows`] of its CSV rendering.
pub fn json_rows(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    flatten("", v, &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Sample { count: usize, seed: u64 },
    Enumerate { dedup: bool },
}

/// Everything that determines an experiment's output (the worker count does not).
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub spec: FamilySpec,
    pub mode: Mode,
    pub joint_pairs: Vec<(Place, Place)>,
    pub densities: Vec<(LocalConditions, LocalConditions)>,
}

impl ExperimentConfig {
    /// Joint histograms for `(0, inf)` and `(0, 1)`; density ratios split/inert and
    /// linear-ramified/split at `t = 0`.
    pub fn with_defaults(spec: FamilySpec, mode: Mode) -> Result<Self> {
        let field = PrimeField::new(spec.q)?;
        let z0 = Place::Finite(field.zero());
        let z1 = Place::Finite(field.one());
        let at0 = |t| LocalConditions::from_pairs([(z0, t)]);
        Ok(ExperimentConfig {
            spec,
            mode,
            joint_pairs: vec![(z0, Place::Infinity), (z0, z1)],
            densities: vec![
                (at0(SplittingType::Split)?, at0(SplittingType::Inert)?),
                (at0(SplittingType::LinearRamified)?, at0(SplittingType::Split)?),
            ],
        })
    }
}

/// Aggregated statistics of one enumeration or sampling run.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub run: Run,
    pub histograms: BTreeMap<Place, EmpiricalHist>,
    pub joints: Vec<JointHist>,
    pub totals: EmpiricalHist,
    pub genera: EmpiricalHist,
    pub weil_violations: u64,
}

impl Experiment {
    pub fn run(config: ExperimentConfig, workers: usize) -> Result<Experiment> {
        let run = match config.mode {
            Mode::Sample { count, seed } => sample(config.spec, count, seed, workers)?,
            Mode::Enumerate { dedup } => {
                if workers == 0 {
                    enumerate(config.spec, dedup)?
                } else {
                    rayon::ThreadPoolBuilder::new()
                        .num_threads(workers)
                        .build()
                        .map_err(|e| Error::InvalidArgument(e.to_string()))?
                        .install(|| enumerate(config.spec, dedup))?
                }
            }
        };
        let field = PrimeField::new(config.spec.q)?;
        let mut histograms: BTreeMap<Place, EmpiricalHist> =
            Place::all(field).into_iter().map(|p| (p, EmpiricalHist::new())).collect();
        let mut joints = vec![JointHist::new(); config.joint_pairs.len()];
        let mut totals = EmpiricalHist::new();
        let mut genera = EmpiricalHist::new();
        let mut weil_violations = 0;
        for (_, s) in &run.curves {
            for (p, h) in histograms.iter_mut() {
                h.observe(s.fiber(*p));
            }
            for (j, &(a, b)) in joints.iter_mut().zip(&config.joint_pairs) {
                j.observe(s.fiber(a), s.fiber(b));
            }
            totals.observe(s.total_points);
            if let Some(g) = s.genus {
                genera.observe(g);
            }
            if !s.satisfies_weil(config.spec.q) {
                weil_violations += 1;
            }
        }
        Ok(Experiment {
            config,
            run,
            histograms,
            joints,
            totals,
            genera,
            weil_violations,
        })
    }

    /// The law the per-place histograms are compared with.
    pub fn reference_law(&self) -> Result<ExactDist> {
        match self.config.spec.ensemble {
            Ensemble::SquarefreeDisc => fiber_law_conditional_squarefree(self.config.spec.q),
            Ensemble::All => fiber_law(self.config.spec.q),
        }
    }

    pub fn tv_at(&self, place: Place) -> Result<Rational> {
        tv_distance(&self.reference_law()?, &self.histograms[&place])
    }

    pub fn independence_gap(&self, pair: usize) -> Result<Rational> {
        joint_independence_gap(&self.joints[pair])
    }

    pub fn density_estimate(&self, idx: usize) -> Option<Rational> {
        let (s, sp) = &self.config.densities[idx];
        empirical_relative_density(&self.run.curves, s, sp)
    }

    pub fn to_json(&self) -> Result<Value> {
        let spec = &self.config.spec;
        let mut config = Map::new();
        let (command, extra) = match self.config.mode {
            Mode::Sample { count, seed } => ("sample", json!({"count": count, "seed": seed})),
            Mode::Enumerate { dedup } => ("enumerate", json!({"dedup": dedup})),
        };
        config.insert("command".into(), json!(command));
        config.insert("q".into(), json!(spec.q));
        config.insert("m".into(), json!(spec.m));
        config.insert("space".into(), json!(spec.space.name()));
        config.insert("ensemble".into(), json!(spec.ensemble.name()));
        config.insert("precision_cap".into(), json!(spec.precision_cap));
        if let Value::Object(e) = extra {
            config.extend(e);
        }

        let t = &self.run.tally;
        let tally = json!({
            "candidates": t.candidates,
            "accepted": t.accepted,
            "no_model": t.no_model,
            "zero_discriminant": t.zero_discriminant,
            "reducible": t.reducible,
            "unramified": t.unramified,
            "filtered": t.filtered,
            "duplicates": t.duplicates,
        });

        let hist_json = |h: &EmpiricalHist| -> Value {
            Value::Object(h.counts().iter().map(|(k, c)| (k.to_string(), json!(c))).collect())
        };
        let reference = self.reference_law()?;
        let mut histograms = Map::new();
        let mut tv = Map::new();
        let mut chi = Map::new();
        for (p, h) in &self.histograms {
            histograms.insert(p.key(), hist_json(h));
            if h.total() > 0 {
                tv.insert(p.key(), rational_json(&tv_distance(&reference, h)?));
                chi.insert(
                    p.key(),
                    chi_square(h, &reference).map_or(Value::Null, |c| rational_json(&c)),
                );
            }
        }

        let mut joint = Map::new();
        for (j, (a, b)) in self.joints.iter().zip(&self.config.joint_pairs) {
            let counts: Map<String, Value> = j
                .counts()
                .iter()
                .map(|((x, y), c)| (format!("{x},{y}"), json!(c)))
                .collect();
            let gap = if j.total() > 0 {
                rational_json(&joint_independence_gap(j)?)
            } else {
                Value::Null
            };
            joint.insert(format!("{}|{}", a.key(), b.key()), json!({"counts": counts, "gap": gap}));
        }

        let cond_json = |c: &LocalConditions| -> Value {
            Value::Object(
                c.assignments()
                    .iter()
                    .map(|(p, t)| (p.key(), json!(t.name())))
                    .collect(),
            )
        };
        let mut densities = Vec::new();
        for (i, (s, sp)) in self.config.densities.iter().enumerate() {
            let exact: Rational = relative_density(s, sp, spec.q)?;
            densities.push(json!({
                "sigma": cond_json(s),
                "sigma_prime": cond_json(sp),
                "estimate": self.density_estimate(i).map_or(Value::Null, |r| rational_json(&r)),
                "exact": rational_json(&exact),
            }));
        }

        Ok(json!({
            "config": config,
            "tally": tally,
            "reference_law": law_json(&reference),
            "histograms": histograms,
            "tv": tv,
            "chi_square": chi,
            "joint": joint,
            "relative_density": densities,
            "total_points": hist_json(&self.totals),
            "genus": hist_json(&self.genera),
            "weil_violations": self.weil_violations,
        }))
    }

    pub fn render(&self, format: Format) -> Result<String> {
        render(&self.to_json()?, format)
    }
}
