//! `msc`: command-line front end for structure-constant algebras.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use msc_core::automorphisms::{are_isomorphic, decide_trivial_aut, DEFAULT_BUDGET};
use msc_core::classify2d::audit::audit_completeness;
use msc_core::classify2d::{match_family, table, Property};
use msc_core::construct::{chain, ChainMode, ChainOptions, SeedParams};
use msc_core::derivations::derivation_report;
use msc_core::experiments::{density_csv, density_scan, inclusion_scan, Samples, ScanOptions};
use msc_core::simplicity::decide_simple_with_budget;
use msc_core::{Error, FieldSpec, Msc, MscJson, Scalar};

#[derive(Parser)]
#[command(name = "msc", version, about = "Exact computations on algebras given by structure constants")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel scans.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Cap on enumerated group elements, MSCs or projective points.
    #[arg(long, global = true)]
    budget: Option<u128>,
}

#[derive(Args)]
struct Input {
    /// MSC JSON file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Reinterpret the entries over this field (Q, GF5, ...).
    #[arg(long)]
    field: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Trivial,
    Simple,
}

#[derive(Subcommand)]
enum Command {
    /// Product of two vectors.
    Mul {
        #[command(flatten)]
        input: Input,
        /// Comma-separated coordinates, e.g. "1,0" or "1/2,3".
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Derivation algebra.
    Der {
        #[command(flatten)]
        input: Input,
    },
    /// Automorphism verdict.
    Aut {
        #[command(flatten)]
        input: Input,
    },
    /// Simplicity verdict with an ideal as certificate.
    Simple {
        #[command(flatten)]
        input: Input,
    },
    /// Isomorphism search over GF(p).
    Iso {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        in2: PathBuf,
    },
    /// Grow a chain of algebras from a 2-dimensional seed.
    Construct {
        #[arg(long)]
        field: String,
        /// Seed parameters "alpha1,alpha2,alpha4,beta1"; sampled when omitted.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 3)]
        target_n: usize,
        #[arg(long, value_enum, default_value = "trivial")]
        mode: Mode,
    },
    /// Match a 2-dimensional MSC against a classification table, or list the table.
    Classify {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        property: Property,
    },
    /// Exhaustive audit of a classification table over GF(p).
    Audit {
        #[arg(long)]
        field: String,
        #[arg(long)]
        property: Property,
    },
    /// Fractions of MSCs with trivial Der, trivial Aut, simplicity.
    Density {
        /// One field or a comma-separated list.
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// "exhaustive" or a sample count.
        #[arg(long, default_value = "exhaustive")]
        samples: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Emit CSV instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Trivial-Aut versus trivial-Der difference sets in dimension 2.
    Inclusion {
        #[arg(long)]
        field: String,
        #[arg(long, default_value = "exhaustive")]
        samples: String,
        #[arg(long)]
        seed: Option<u64>,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Lib(Error::BudgetExceeded { .. }) => 4,
            Failure::Lib(
                Error::SearchExhausted { .. }
                | Error::TraceConditionFailed
                | Error::RankConditionFailed { .. }
                | Error::AugmentedRankFailed { .. }
                | Error::FirstRowZero
                | Error::NotSimpleInput,
            ) => 1,
            Failure::Lib(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn parse_field(s: &str) -> Res<FieldSpec> {
    Ok(s.parse::<FieldSpec>()?)
}

fn read_msc(path: &PathBuf, field: Option<&str>) -> Res<Msc> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut j: MscJson = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    if let Some(f) = field {
        j.field = parse_field(f)?;
    }
    Ok(Msc::from_json(&j)?)
}

fn parse_vector(field: FieldSpec, s: &str) -> Res<Vec<Scalar>> {
    s.split(',')
        .map(|t| field.parse_scalar(t).map_err(Failure::from))
        .collect()
}

fn parse_samples(s: &str, seed: Option<u64>) -> Res<(Samples, u64)> {
    if s.eq_ignore_ascii_case("exhaustive") {
        return Ok((Samples::Exhaustive, seed.unwrap_or(0)));
    }
    let count: u64 = s
        .parse()
        .map_err(|_| Failure::Usage(format!("--samples must be \"exhaustive\" or a count, got {s:?}")))?;
    let seed = seed.ok_or_else(|| Failure::Usage("sampling requires --seed".into()))?;
    Ok((Samples::Count(count), seed))
}

fn scan_options(budget: Option<u128>) -> ScanOptions {
    let mut opts = ScanOptions::default();
    if let Some(b) = budget {
        opts.budget = b;
        opts.point_budget = b;
    }
    opts
}

enum Output {
    Json(Value),
    Text(String),
}

fn run(cmd: Command, common: &Common) -> Res<Output> {
    let budget = common.budget.unwrap_or(DEFAULT_BUDGET);
    let json = |v: Value| Ok(Output::Json(v));
    match cmd {
        Command::Mul { input, u, v } => {
            let a = read_msc(&input.input, input.field.as_deref())?;
            let u = parse_vector(a.field(), &u)?;
            let v = parse_vector(a.field(), &v)?;
            let w = a.multiply(&u, &v)?;
            json(json!({ "product": w.iter().map(|x| x.to_string()).collect::<Vec<_>>() }))
        }
        Command::Der { input } => {
            let a = read_msc(&input.input, input.field.as_deref())?;
            json(serde_json::to_value(derivation_report(&a)).expect("serializable"))
        }
        Command::Aut { input } => {
            let a = read_msc(&input.input, input.field.as_deref())?;
            json(serde_json::to_value(decide_trivial_aut(&a, budget).report()).expect("serializable"))
        }
        Command::Simple { input } => {
            let a = read_msc(&input.input, input.field.as_deref())?;
            let v = decide_simple_with_budget(&a, budget);
            json(serde_json::to_value(v.report()).expect("serializable"))
        }
        Command::Iso { input, in2 } => {
            let a = read_msc(&input.input, input.field.as_deref())?;
            let b = read_msc(&in2, input.field.as_deref())?;
            let g = are_isomorphic(&a, &b, budget)?;
            json(json!({
                "isomorphic": g.is_some(),
                "witness": g.map(|g| g.to_strings()),
            }))
        }
        Command::Construct {
            field,
            c,
            seed,
            target_n,
            mode,
        } => {
            let field = parse_field(&field)?;
            let seed = seed.ok_or_else(|| Failure::Usage("construct requires --seed".into()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let opts = ChainOptions {
                aut_budget: budget,
                ..ChainOptions::default()
            };
            let params = match c {
                Some(s) => {
                    let v = parse_vector(field, &s)?;
                    let [alpha1, alpha2, alpha4, beta1]: [Scalar; 4] = v
                        .try_into()
                        .map_err(|_| Failure::Usage("--c needs four scalars".into()))?;
                    SeedParams {
                        alpha1,
                        alpha2,
                        alpha4,
                        beta1,
                    }
                }
                None => SeedParams::sample(field, &mut rng, opts.sample_bound),
            };
            let mode = match mode {
                Mode::Trivial => ChainMode::TrivialOnly,
                Mode::Simple => ChainMode::SimpleToo,
            };
            let stages = chain(&params, field, target_n, mode, &mut rng, &opts)?;
            let c: Vec<String> = [&params.alpha1, &params.alpha2, &params.alpha4, &params.beta1]
                .iter()
                .map(|s| s.to_string())
                .collect();
            json(json!({
                "field": field,
                "seed": seed,
                "mode": mode,
                "c": c,
                "stages": stages,
            }))
        }
        Command::Classify {
            input,
            field,
            property,
        } => match input {
            Some(path) => {
                let a = read_msc(&path, field.as_deref())?;
                let hits: Vec<Value> = match_family(&a, property)?
                    .iter()
                    .map(|i| {
                        json!({
                            "family": i.family,
                            "label": i.label,
                            "values": i.values.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                json(json!({ "property": property.cli_name(), "matches": hits }))
            }
            None => {
                let f = field.ok_or_else(|| Failure::Usage("classify needs --in or --field".into()))?;
                let f = parse_field(&f)?;
                json(json!({
                    "field": f,
                    "property": property.cli_name(),
                    "families": table(f, property),
                }))
            }
        },
        Command::Audit { field, property } => {
            let r = audit_completeness(parse_field(&field)?, property)?;
            json(serde_json::to_value(r).expect("serializable"))
        }
        Command::Density {
            field,
            n,
            samples,
            seed,
            csv,
        } => {
            let (samples, seed) = parse_samples(&samples, seed)?;
            let opts = scan_options(common.budget);
            let mut reports = Vec::new();
            for f in field.split(',') {
                reports.push(density_scan(parse_field(f)?, n, samples, seed, &opts)?);
            }
            if csv {
                Ok(Output::Text(density_csv(&reports)))
            } else if reports.len() == 1 {
                json(serde_json::to_value(&reports[0]).expect("serializable"))
            } else {
                json(serde_json::to_value(&reports).expect("serializable"))
            }
        }
        Command::Inclusion {
            field,
            samples,
            seed,
        } => {
            let (samples, seed) = parse_samples(&samples, seed)?;
            let r = inclusion_scan(parse_field(&field)?, samples, seed, &scan_options(common.budget))?;
            json(serde_json::to_value(r).expect("serializable"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.common;
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(common.workers.max(1))
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let result = run(cli.command, &common);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    let out = match result {
        Ok(o) => o,
        Err(f) => {
            eprintln!("error: {}", f.message());
            return ExitCode::from(f.code());
        }
    };
    let text = match out {
        Output::Json(v) => serde_json::to_string_pretty(&v).expect("serializable") + "\n",
        Output::Text(t) => t,
    };
    match &common.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
