//! `multbound`: certified multiplicity lower bounds from the command line.
//!
//! Every command prints one JSON report on stdout. Diagnostics go to stderr
//! and failures map to fixed exit codes (see `error.rs`).

mod commands;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "multbound",
    version,
    about = "Certified lower bounds for local multiplicities"
)]
struct Cli {
    /// Worker threads for staircase and grid evaluation (0 = all cores).
    #[arg(long, global = true, env = "MULTBOUND_THREADS", default_value_t = 0)]
    threads: usize,

    /// Add k-digit decimal renderings of rational results, e.g. `decimal:6`.
    #[arg(long, global = true, env = "MULTBOUND_RENDER", value_parser = parse_render)]
    render: Option<usize>,

    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

fn parse_render(text: &str) -> Result<usize, String> {
    text.strip_prefix("decimal:")
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| format!("expected decimal:<digits>, got `{text}`"))
}

#[derive(Debug, Clone, Args)]
pub struct GroebnerArgs {
    /// Maximum S-polynomial reductions per Gröbner basis.
    #[arg(long, env = "MULTBOUND_MAX_STEPS", default_value_t = 100_000)]
    pub max_steps: usize,
    /// Maximum total degree of a basis element.
    #[arg(long, env = "MULTBOUND_MAX_DEGREE", default_value_t = 512)]
    pub max_degree: u64,
}

#[derive(Debug, Clone, Args)]
pub struct LengthArgs {
    /// Extra equal colength readings required before accepting.
    #[arg(long, env = "MULTBOUND_CONFIRM", default_value_t = 2)]
    pub confirm: u32,
    /// Largest power of the maximal ideal tried.
    #[arg(long, env = "MULTBOUND_STABILIZATION_CAP", default_value_t = 64)]
    pub stabilization_cap: u32,
}

#[derive(Debug, Subcommand)]
pub(crate) enum Command {
    /// Vanishing staircase certificate at a point, optionally checked
    /// against the local length.
    Bound {
        /// Ideal JSON: {"n": .., "generators": [..]}.
        #[arg(long)]
        ideal: PathBuf,
        /// Comma separated rational coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Total degree cap for the staircase search.
        #[arg(long, env = "MULTBOUND_CAP", default_value_t = 32)]
        cap: u32,
        /// Also compute the local length and compare.
        #[arg(long)]
        verify: bool,
        /// Prime JSON; checks the derivative hypothesis modulo this prime.
        #[arg(long)]
        prime: Option<PathBuf>,
        #[command(flatten)]
        length: LengthArgs,
        #[command(flatten)]
        groebner: GroebnerArgs,
    },
    /// Grid sandwich volume estimate of a lower saturated region.
    Volume {
        /// Region JSON (simplex, staircase or halfspaces).
        #[arg(long)]
        region: PathBuf,
        /// Box size N: the region is measured inside [0, N]^n.
        #[arg(long = "box-size", visible_alias = "N")]
        box_size: u64,
        /// Subdivisions per unit.
        #[arg(long, conflicts_with = "tol", required_unless_present = "tol")]
        m: Option<u64>,
        /// Target error bound; picks the smallest power of two m.
        #[arg(long)]
        tol: Option<String>,
        /// Largest m allowed with --tol.
        #[arg(long, env = "MULTBOUND_M_MAX", default_value_t = 1 << 20)]
        m_max: u64,
    },
    /// Gröbner length oracle: global colength, or local length at a point.
    Length {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[command(flatten)]
        length: LengthArgs,
        #[command(flatten)]
        groebner: GroebnerArgs,
    },
    /// Monomial ideal chain witnessing length >= #staircase.
    Chain {
        #[arg(long)]
        ideal: PathBuf,
        /// Staircase JSON: {"n": .., "points": [..]}.
        #[arg(long)]
        staircase: PathBuf,
        /// Use the listed points as given instead of their downward closure.
        #[arg(long)]
        no_closure: bool,
        #[command(flatten)]
        groebner: GroebnerArgs,
    },
    /// Transcendence profile of a prime, with optional simplex bounds.
    Profile {
        #[arg(long)]
        prime: PathBuf,
        /// Comma separated positive weights.
        #[arg(long, requires = "eps")]
        d: Option<String>,
        #[arg(long, requires = "d")]
        eps: Option<String>,
        #[command(flatten)]
        groebner: GroebnerArgs,
    },
    /// Weighted simplex staircase and its closed-form volume bounds.
    Simplex {
        #[arg(long)]
        d: String,
        #[arg(long)]
        eps: String,
        /// Comma separated 0/1 transcendence steps; defaults to all zero.
        #[arg(long)]
        sigma: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("warning: {e}");
        }
    }
    let start = Instant::now();
    let outcome = match commands::run(&cli.command, cli.render) {
        Ok(outcome) => outcome,
        Err(CliError { code, message }) => {
            eprintln!("error: {message}");
            return ExitCode::from(code as u8);
        }
    };
    let timing = cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    print!(
        "{}",
        report::render(&outcome.builder.finish(&outcome.result, timing))
    );
    for line in &outcome.diagnostics {
        eprintln!("{line}");
    }
    ExitCode::from(outcome.code as u8)
}
