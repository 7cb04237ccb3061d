//! `jts`: forward spectra, two-spectra recovery, condition checks,
//! seeded round trips and m-function traces for finite Jacobi matrices.
//!
//! Exit codes: 0 success, 2 unreadable or malformed input, 3 numerical
//! failure, 4 an existence condition fails (named on stderr), 5 a round-trip
//! trial exceeded tolerance.

mod commands;
mod failure;
mod roundtrip;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "jts", version, about = "Two-spectra inverse problem for finite Jacobi matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectra of a matrix under two couplings, or under Dirichlet/Neumann.
    Forward(ForwardArgs),
    /// Rebuild the matrix (and h2) from a spectra file.
    Inverse(InverseArgs),
    /// Check the existence conditions for a spectra file.
    Check(CheckArgs),
    /// Seeded forward/inverse round trips.
    Roundtrip(RoundtripArgs),
    /// Weyl m-function along the imaginary axis, with asymptotes.
    Mtrace(MtraceArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("boundary").required(true).args(["h1", "dn"]))]
struct ForwardArgs {
    /// Matrix JSON: {"n":..,"q":[..],"b":[..]}.
    matrix: PathBuf,
    #[arg(long, allow_hyphen_values = true, requires = "h2")]
    h1: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "h1")]
    h2: Option<f64>,
    /// Spectra of J and of J with its first row and column removed.
    #[arg(long)]
    dn: bool,
    /// Output file (default stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("boundary").required(true).args(["h1", "dn"]))]
struct InverseArgs {
    /// Spectra JSON: {"mode":..,"lambdas":[..],"mus":[..]}.
    spectra: PathBuf,
    /// The smaller coupling; required for rank_one spectra.
    #[arg(long, allow_hyphen_values = true)]
    h1: Option<f64>,
    /// Recover from dirichlet_neumann spectra.
    #[arg(long)]
    dn: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    spectra: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    RankOne,
    Dn,
}

#[derive(Debug, Args)]
struct RoundtripArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::RankOne)]
    mode: Mode,
    /// Per-trial residuals as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Axis {
    Imag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Args)]
struct MtraceArgs {
    matrix: PathBuf,
    /// Coupling: the trace is of m for J_h.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    h: f64,
    #[arg(long, value_enum, default_value_t = Axis::Imag)]
    axis: Axis,
    #[arg(long, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
    #[arg(long, default_value_t = 100)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Linear)]
    spacing: Spacing,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Forward(a) => commands::forward(a),
        Command::Inverse(a) => commands::inverse(a),
        Command::Check(a) => commands::check(a),
        Command::Roundtrip(a) => roundtrip::run(a),
        Command::Mtrace(a) => commands::mtrace(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("jts: {f}");
            ExitCode::from(f.code())
        }
    }
}
