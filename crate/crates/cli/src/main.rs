//! Command-line surface for the dragon-hull library.
//!
//! Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage or
//! domain error.

mod cmds;
mod out;
mod suites;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use crate::out::Format;

#[derive(Parser)]
#[command(
    name = "dragon-hull",
    version,
    about = "Convex hulls of dragon curves: closed-form predictions and a sampling oracle",
    after_help = "Angles are radians unless --degrees is given. Exit codes: 0 pass, 1 check failure, 2 usage/domain error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOut {
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Derived scalars and first candidate points for one parameter value
    Params {
        /// Curve parameter in (0, pi/3)
        #[arg(long)]
        eta: f64,
        /// Interpret angle inputs as degrees
        #[arg(long)]
        degrees: bool,
        /// Boundary tolerance for cell resolution
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: CommonOut,
    },
    /// Table of the partition roots eta_k located by bisection
    EtaTable {
        /// Largest k to tabulate (k starts at 4)
        #[arg(long, default_value_t = 12)]
        k_max: u32,
        /// Bisection tolerance
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: CommonOut,
    },
    /// Predicted hull, empirical hull, and their comparison at one parameter
    Hull {
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        degrees: bool,
        /// Sampling depth (2^(depth+1) attractor points)
        #[arg(long, default_value_t = 20)]
        depth: u32,
        /// Vertex-match and boundary tolerance
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: CommonOut,
    },
    /// Run a verification suite
    Verify {
        /// One of: angles, signs, invariance, membership, coding, z6-escape, all
        #[arg(long)]
        suite: String,
        /// Single parameter value
        #[arg(long)]
        eta: Option<f64>,
        /// Parameter range A:B:N (N values, inclusive)
        #[arg(long)]
        eta_range: Option<String>,
        /// Partition cells to sweep, e.g. 4..8
        #[arg(long, default_value = "4..8")]
        cells: String,
        #[arg(long)]
        degrees: bool,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Extreme-coding criterion for a period word
    CodingCheck {
        /// Use the dragon IFS at this parameter value
        #[arg(long, conflicts_with = "ifs")]
        dragon: Option<f64>,
        /// JSON file with custom similitude maps [{"a": [re, im], "b": [re, im]}, ...]
        #[arg(long)]
        ifs: Option<PathBuf>,
        /// Prefix word, e.g. 121 (may be empty)
        #[arg(long, default_value = "")]
        prefix: String,
        /// Period word, e.g. 2211 (must be nonempty)
        #[arg(long)]
        period: String,
        #[arg(long)]
        degrees: bool,
        /// Positivity tolerance on the linear-part product
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Hull comparison across a parameter range
    Sweep {
        /// Parameter range A:B:N (N values, inclusive)
        #[arg(long)]
        eta_range: String,
        #[arg(long)]
        degrees: bool,
        #[arg(long, default_value_t = 20)]
        depth: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: CommonOut,
    },
}

fn to_radians(value: f64, degrees: bool) -> f64 {
    if degrees {
        value * PI / 180.0
    } else {
        value
    }
}

/// Parses "A:B:N" into N inclusive values from A to B.
fn parse_eta_range(spec: &str, degrees: bool) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        bail!("--eta-range expects A:B:N, got {spec:?}");
    };
    let a: f64 = a.parse().context("range start")?;
    let b: f64 = b.parse().context("range end")?;
    let n: usize = n.parse().context("range count")?;
    if n == 0 {
        bail!("--eta-range count must be at least 1");
    }
    let (a, b) = (to_radians(a, degrees), to_radians(b, degrees));
    if n == 1 {
        return Ok(vec![a]);
    }
    Ok((0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect())
}

/// Parses "A..B" into an inclusive cell range with A >= 4.
fn parse_cells(spec: &str) -> Result<(u32, u32)> {
    let (a, b) = spec
        .split_once("..")
        .with_context(|| format!("--cells expects A..B, got {spec:?}"))?;
    let a: u32 = a.parse().context("cell range start")?;
    let b: u32 = b.parse().context("cell range end")?;
    if a < 4 || b < a {
        bail!("--cells requires 4 <= A <= B, got {spec:?}");
    }
    Ok((a, b))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Params {
            eta,
            degrees,
            tol,
            output,
        } => cmds::cmd_params(to_radians(eta, degrees), tol, output.format, &output.out),
        Command::EtaTable {
            k_max,
            tol,
            output,
        } => cmds::cmd_eta_table(k_max, tol, output.format, &output.out),
        Command::Hull {
            eta,
            degrees,
            depth,
            tol,
            output,
        } => cmds::cmd_hull(
            to_radians(eta, degrees),
            depth,
            tol,
            output.format,
            &output.out,
        ),
        Command::Verify {
            suite,
            eta,
            eta_range,
            cells,
            degrees,
            tol,
        } => {
            let etas = match (eta, eta_range) {
                (Some(_), Some(_)) => bail!("give either --eta or --eta-range, not both"),
                (Some(e), None) => Some(vec![to_radians(e, degrees)]),
                (None, Some(spec)) => Some(parse_eta_range(&spec, degrees)?),
                (None, None) => None,
            };
            suites::run_suites(&suite, etas, parse_cells(&cells)?, tol)
        }
        Command::CodingCheck {
            dragon,
            ifs,
            prefix,
            period,
            degrees,
            tol,
        } => {
            if period.is_empty() {
                bail!("--period must be a nonempty word of symbol digits");
            }
            let system = match (dragon, ifs) {
                (Some(eta), None) => dragon_hull::codings::SimilitudeIfs::dragon(
                    &dragon_hull::dragon::DragonParams::new(to_radians(eta, degrees))?,
                ),
                (None, Some(path)) => cmds::load_ifs(&path)?,
                _ => bail!("give exactly one of --dragon <eta> or --ifs <file>"),
            };
            let prefix = cmds::parse_symbol_word(&prefix, "--prefix")?;
            let period = cmds::parse_symbol_word(&period, "--period")?;
            cmds::cmd_coding_check(system, prefix, period, tol)
        }
        Command::Sweep {
            eta_range,
            degrees,
            depth,
            tol,
            output,
        } => {
            let etas = parse_eta_range(&eta_range, degrees)?;
            cmds::cmd_sweep(&etas, depth, tol, output.format, &output.out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
