//! `align`: exact invariants of monomial ideal sequences from the command
//! line. Exit code 0 on success, 1 on input or parse errors, 2 when a
//! computation finishes but reports a property violation.

use std::io::{self, Write};
use std::process::ExitCode;
use std::{fs, process};

use align_cli::checks::{run_fixture_checks, run_sequence_checks};
use align_cli::job::{self, JobSpec};
use align_cli::report::{BoundaryFixture, CheckFixture, CheckReport};
use align_core::monomial::WeightVector;
use align_core::parse::parse_ideal_sequence;
use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "align", version, about = "Exact invariants of monomial ideal sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Measuring sequence and the induced variable preorder
    Measure(Common),
    /// All admissible flag completions of the preorder
    Flags(Common),
    /// Free coordinates attached to a chosen flag
    Coords(CoordsCmd),
    /// Dimension decomposition with its independent cross-check
    Dims(DimsCmd),
    /// Degree of the variable-relabeling cover
    Etale(Common),
    /// Universality verdict for the sequence
    Classify(Common),
    /// Plucker coordinates, interpolated equations, toric summary
    Fiber(FiberCmd),
    /// Independent ground truth: derivation rank or small-field enumeration
    Oracle(OracleCmd),
    /// Structural property suite; nonzero exit on any violation
    Check(CheckCmd),
}

#[derive(Args)]
struct Common {
    /// Ideal sequence, bracketed and `;`-separated: "[x1, x2^2]; [x1, x2^3]"
    input: String,
    /// Coefficient characteristic, 0 or a prime
    #[arg(long = "char", value_name = "P", default_value_t = 0)]
    characteristic: u32,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CoordsCmd {
    #[command(flatten)]
    common: Common,
    /// Flag as classes separated by `<`: "x2 < x1, x3"
    #[arg(long)]
    flag: Option<String>,
    /// Ambient weight vector, comma separated: "1,2"
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Args)]
struct DimsCmd {
    #[command(flatten)]
    common: Common,
    /// Flag as classes separated by `<`: "x2 < x1, x3"
    #[arg(long)]
    flag: Option<String>,
}

#[derive(Args)]
struct FiberCmd {
    #[command(flatten)]
    common: Common,
    /// Flag as classes separated by `<`: "x2 < x1, x3"
    #[arg(long)]
    flag: Option<String>,
    /// Ambient weight vector, comma separated: "1,2"
    #[arg(long)]
    weights: Option<String>,
    /// Truncation order override for the quotient frames
    #[arg(long)]
    cutoff: Option<u32>,
    /// Interpolate equation spaces up to this degree
    #[arg(long, default_value_t = 2)]
    degree: u32,
    /// Interpolation sample count per degree
    #[arg(long, default_value_t = 24)]
    samples: usize,
    /// Seed for the interpolation sample points
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON file describing a candidate boundary family to probe
    #[arg(long, value_name = "PATH")]
    fixture: Option<String>,
}

#[derive(Args)]
struct OracleCmd {
    #[command(flatten)]
    common: Common,
    /// Truncation order override
    #[arg(long)]
    cutoff: Option<u32>,
}

#[derive(Args)]
struct CheckCmd {
    /// Ideal sequence; may be omitted when --fixture supplies a catalog
    input: Option<String>,
    /// Coefficient characteristic, 0 or a prime
    #[arg(long = "char", value_name = "P", default_value_t = 0)]
    characteristic: u32,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
    /// Trials for each randomized case
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Seed for the randomized cases
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON catalog of ideal sequences to sweep
    #[arg(long, value_name = "PATH")]
    fixture: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::from(2),
        Ok(false) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Dispatch one subcommand; the Ok payload is whether a property violation
/// was detected.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Measure(c) => {
            let spec = base_spec(&c.input, c.characteristic)?;
            let report = job::run_measure(&spec)?;
            emit(&report, report.render(), c.json)?;
            Ok(false)
        }
        Command::Flags(c) => {
            let spec = base_spec(&c.input, c.characteristic)?;
            let report = job::run_flags(&spec)?;
            emit(&report, report.render(), c.json)?;
            Ok(false)
        }
        Command::Coords(c) => {
            let mut spec = base_spec(&c.common.input, c.common.characteristic)?;
            spec.flag = c.flag;
            spec.weights = parse_weights(c.weights.as_deref())?;
            let (report, ambiguous) = job::run_coords(&spec)?;
            warn_default_flag(ambiguous);
            emit(&report, report.render(), c.common.json)?;
            Ok(false)
        }
        Command::Dims(c) => {
            let mut spec = base_spec(&c.common.input, c.common.characteristic)?;
            spec.flag = c.flag;
            let (report, ambiguous) = job::run_dims(&spec)?;
            warn_default_flag(ambiguous);
            let violation = !report.consistent;
            emit(&report, report.render(), c.common.json)?;
            Ok(violation)
        }
        Command::Etale(c) => {
            let spec = base_spec(&c.input, c.characteristic)?;
            let report = job::run_etale(&spec)?;
            emit(&report, report.render(), c.json)?;
            Ok(false)
        }
        Command::Classify(c) => {
            let spec = base_spec(&c.input, c.characteristic)?;
            let report = job::run_classify(&spec)?;
            emit(&report, report.render(), c.json)?;
            Ok(false)
        }
        Command::Fiber(c) => {
            if c.common.characteristic != 0 {
                bail!("the fiber pipeline is exact over the rationals; run with --char 0");
            }
            let mut spec = base_spec(&c.common.input, c.common.characteristic)?;
            spec.flag = c.flag;
            spec.weights = parse_weights(c.weights.as_deref())?;
            spec.cutoff = c.cutoff;
            spec.degree = c.degree;
            spec.samples = c.samples;
            spec.seed = c.seed;
            let boundary: Option<BoundaryFixture> = match &c.fixture {
                Some(path) => Some(load_fixture(path)?),
                None => None,
            };
            let (report, ambiguous) = job::run_fiber(&spec, boundary.as_ref())?;
            warn_default_flag(ambiguous);
            let mut violation = report
                .frames
                .iter()
                .filter(|f| !f.degenerate)
                .any(|f| {
                    !f.exchange_relations
                        || f.toric.as_ref().is_some_and(|t| !t.weight_homogeneous)
                });
            if let Some(probe) = &report.boundary {
                violation |= !probe.equations_vanish;
            }
            emit(&report, report.render(), c.common.json)?;
            Ok(violation)
        }
        Command::Oracle(c) => {
            let mut spec = base_spec(&c.common.input, c.common.characteristic)?;
            spec.cutoff = c.cutoff;
            let report = job::run_oracle(&spec)?;
            let violation = !report.agreement;
            emit(&report, report.render(), c.common.json)?;
            Ok(violation)
        }
        Command::Check(c) => {
            validate_characteristic(c.characteristic)?;
            let mut cases = Vec::new();
            if let Some(input) = &c.input {
                let ideals = parse_ideal_sequence(input)?;
                cases.extend(run_sequence_checks("input", &ideals, c.characteristic, c.samples, c.seed));
            }
            if let Some(path) = &c.fixture {
                let fixture: CheckFixture = load_fixture(path)?;
                cases.extend(run_fixture_checks(&fixture, c.samples, c.seed)?);
            }
            if c.input.is_none() && c.fixture.is_none() {
                bail!("check needs an ideal sequence or --fixture");
            }
            let passed = cases.iter().all(|case| case.passed);
            let report = CheckReport { cases, passed };
            emit(&report, report.render(), c.json)?;
            Ok(!passed)
        }
    }
}

fn base_spec(input: &str, characteristic: u32) -> Result<JobSpec> {
    validate_characteristic(characteristic)?;
    let ideals = parse_ideal_sequence(input)?;
    Ok(JobSpec {
        ideals,
        characteristic,
        weights: None,
        flag: None,
        cutoff: None,
        degree: 2,
        samples: 24,
        seed: 0,
    })
}

fn validate_characteristic(p: u32) -> Result<()> {
    let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if p == 0 || prime {
        Ok(())
    } else {
        bail!("characteristic must be 0 or a prime, got {p}");
    }
}

fn parse_weights(text: Option<&str>) -> Result<Option<WeightVector>> {
    let Some(text) = text else { return Ok(None) };
    let entries = text
        .split(',')
        .map(|t| t.trim().parse::<u64>().with_context(|| format!("bad weight {t:?}")))
        .collect::<Result<Vec<u64>>>()?;
    Ok(Some(WeightVector::new(entries)?))
}

fn load_fixture<T: DeserializeOwned>(path: &str) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading fixture {path}"))?;
    serde_json::from_str(&text).with_context(|| format!("parsing fixture {path}"))
}

fn warn_default_flag(ambiguous: bool) {
    if ambiguous {
        eprintln!("warning: several flag completions exist; using the lexicographically least (list them with `flags`)");
    }
}

fn emit<T: Serialize>(report: &T, text: String, json: bool) -> Result<()> {
    let mut out = io::stdout().lock();
    let written = if json {
        writeln!(out, "{}", serde_json::to_string_pretty(report)?)
    } else {
        write!(out, "{text}")
    };
    match written {
        // the consumer stopped reading; not our error
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => process::exit(0),
        other => Ok(other?),
    }
}
