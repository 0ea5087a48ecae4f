//! `nesieve`: sieve conductors of cyclic fields of odd prime degree for
//! non-norm-Euclidean witnesses, print the explicit constant tables, verify
//! witness files and run the built-in self-check.

mod constants;
mod reference;
mod selfcheck;
mod sieve;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nesieve::heilbronn::EngineChoice;

/// Exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const VERIFY_FAILED: u8 = 2;
    pub const RESOURCE: u8 = 3;
}

#[derive(Parser, Debug)]
#[command(name = "nesieve", version, about = "Norm-Euclidean conductor sieve and explicit bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sieve the conductors in [from, to] and list the survivors.
    Sieve(SieveArgs),
    /// Print a table of explicit constants.
    Constants(ConstantsArgs),
    /// Re-check a file of `f=.., q1=.., q2=.., r=..` lines.
    Verify(VerifyArgs),
    /// Run the built-in consistency suite.
    Selfcheck(SelfcheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Auto,
    Table,
    Powmod,
    Cubic,
}

impl From<EngineArg> for EngineChoice {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Auto => EngineChoice::Auto,
            EngineArg::Table => EngineChoice::Table,
            EngineArg::Powmod => EngineChoice::PowMod,
            EngineArg::Cubic => EngineChoice::Cubic,
        }
    }
}

#[derive(clap::Args, Debug)]
pub struct SieveArgs {
    /// Degree of the field, an odd prime.
    #[arg(long)]
    pub ell: u32,
    #[arg(long)]
    pub from: u64,
    #[arg(long)]
    pub to: u64,
    #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
    pub engine: EngineArg,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Resume from and save progress to this file.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Also print the witness of every eliminated conductor.
    #[arg(long)]
    pub emit_witnesses: bool,
    /// Integers per work unit.
    #[arg(long)]
    pub chunk_width: Option<u64>,
    /// Scan primes up to this bound (default: max(10^5, sqrt(to))).
    #[arg(long)]
    pub prime_limit: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableArg {
    CBurgess,
    D1,
    D2,
    E,
    CEll,
    Special,
}

#[derive(clap::Args, Debug)]
pub struct ConstantsArgs {
    #[arg(long, value_enum)]
    pub table: TableArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    /// Witness file.
    pub file: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub ell: u32,
    #[arg(long, value_enum, default_value_t = EngineArg::Powmod)]
    pub engine: EngineArg,
}

#[derive(clap::Args, Debug)]
pub struct SelfcheckArgs {
    /// Smaller ranges; finishes in a few seconds.
    #[arg(long)]
    pub quick: bool,
    /// Perturb one reference row, e.g. `c-burgess:2`, to exercise failure reporting.
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
}

/// Exit status for an error bubbling out of a command.
fn status_of(err: &anyhow::Error) -> u8 {
    use nesieve::Error;
    match err.downcast_ref::<Error>() {
        Some(Error::Resource { .. } | Error::Range(_)) => exit::RESOURCE,
        Some(Error::Invariant(_)) => exit::VERIFY_FAILED,
        _ => exit::USAGE,
    }
}

/// Output cut short by a closed pipe (`| head`) is not an error.
fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|c| {
        c.downcast_ref::<std::io::Error>()
            .or_else(|| match c.downcast_ref::<nesieve::Error>() {
                Some(nesieve::Error::Io(e)) => Some(e),
                _ => None,
            })
            .is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe)
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::OK });
        }
    };
    let result = match cli.command {
        Command::Sieve(args) => sieve::run(&args),
        Command::Constants(args) => constants::run(&args),
        Command::Verify(args) => verify::run(&args),
        Command::Selfcheck(args) => selfcheck::run(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) if is_broken_pipe(&e) => ExitCode::from(exit::OK),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(status_of(&e))
        }
    }
}
