use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use trigonal::checks::verify_suite;
use trigonal::experiment::{
    conditional_report, conjecture_report, fiber_report, mean_report, render, sum_report, Experiment,
    ExperimentConfig, Format, Mode,
};
use trigonal::family::FamilySpec;
use trigonal::local::DEFAULT_PRECISION_CAP;
use trigonal::{Ensemble, ModelSpace};

#[derive(Parser)]
#[command(name = "trigonal", version, about = "Point counts on random trigonal curves over finite fields")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact laws for the number of points over a place and in total.
    Theory {
        #[command(subcommand)]
        which: Theory,
    },
    /// Fiber law of degree-n covers from pair masses, next to the partition formula.
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
    },
    /// Rejection-sample models and compare their statistics with the exact laws.
    Sample {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SpaceArg::Binary)]
        space: SpaceArg,
    },
    /// Walk every model of the family.
    Enumerate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = SpaceArg::Depressed)]
        space: SpaceArg,
        /// Keep one model per rescaling orbit (depressed space only).
        #[arg(long)]
        dedup: bool,
    },
    /// Run the exact-identity suite.
    Verify,
}

#[derive(Subcommand)]
enum Theory {
    Fiber {
        #[arg(long)]
        q: u64,
    },
    /// Law of the total count over `base-points` places (default q + 1).
    Sum {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        base_points: Option<usize>,
    },
    Mean {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        base_points: Option<u64>,
    },
    /// Per-place law given a squarefree discriminant.
    Conditional {
        #[arg(long)]
        q: u64,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    q: u64,
    /// Height: deg A <= 2m, deg B <= 3m (form coefficients of degree <= m).
    #[arg(long)]
    m: usize,
    #[arg(long, value_enum, default_value_t = EnsembleArg::SquarefreeDisc)]
    ensemble: EnsembleArg,
    #[arg(long, default_value_t = DEFAULT_PRECISION_CAP)]
    precision_cap: usize,
    /// Worker threads; 0 uses every core.
    #[arg(long, env = "TRIGONAL_WORKERS", default_value_t = 0)]
    workers: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnsembleArg {
    All,
    SquarefreeDisc,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Depressed,
    Binary,
}

impl FamilyArgs {
    fn spec(&self, space: SpaceArg) -> FamilySpec {
        let ensemble = match self.ensemble {
            EnsembleArg::All => Ensemble::All,
            EnsembleArg::SquarefreeDisc => Ensemble::SquarefreeDisc,
        };
        let space = match space {
            SpaceArg::Depressed => ModelSpace::Depressed,
            SpaceArg::Binary => ModelSpace::BinaryCubic,
        };
        let mut spec = FamilySpec::new(self.q, self.m, space, ensemble);
        spec.precision_cap = self.precision_cap;
        spec
    }
}

fn experiment(spec: FamilySpec, mode: Mode, workers: usize) -> Result<Value> {
    let config = ExperimentConfig::with_defaults(spec, mode)?;
    Ok(Experiment::run(config, workers)?.to_json()?)
}

/// The report, and the reason it counts as a failure if it does.
fn report(command: &Command) -> Result<(Value, Option<&'static str>)> {
    Ok(match command {
        Command::Theory { which } => {
            let v = match *which {
                Theory::Fiber { q } => fiber_report(q)?,
                Theory::Sum { q, base_points } => sum_report(q, base_points.unwrap_or(q as usize + 1))?,
                Theory::Mean { q, base_points } => mean_report(q, base_points.unwrap_or(q + 1))?,
                Theory::Conditional { q } => conditional_report(q)?,
            };
            (v, None)
        }
        Command::Conjecture { n, q } => {
            let (v, agree) = conjecture_report(*n, *q)?;
            (v, (!agree).then_some("mass-based law refused or in disagreement with the formula"))
        }
        Command::Sample {
            family,
            count,
            seed,
            space,
        } => {
            let mode = Mode::Sample {
                count: *count,
                seed: *seed,
            };
            let v = experiment(family.spec(*space), mode, family.workers)?;
            let weil = v["weil_violations"] != 0;
            (v, weil.then_some("Weil bound violated"))
        }
        Command::Enumerate { family, space, dedup } => {
            let v = experiment(family.spec(*space), Mode::Enumerate { dedup: *dedup }, family.workers)?;
            let weil = v["weil_violations"] != 0;
            (v, weil.then_some("Weil bound violated"))
        }
        Command::Verify => {
            let checks = verify_suite();
            let ok = checks.iter().all(|c| c.passed);
            let items: Vec<Value> = checks
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect();
            (json!({"passed": ok, "checks": items}), (!ok).then_some("verification failed"))
        }
    })
}

fn run(cli: Cli) -> Result<()> {
    let (value, failure) = report(&cli.command)?;
    let text = render(&value, cli.format.into())?;
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    if let Some(reason) = failure {
        bail!(reason);
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
