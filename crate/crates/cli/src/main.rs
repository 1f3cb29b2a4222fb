//! `novikov`: twisted cohomology of finite simplicial complexes from the
//! command line.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! input errors and refused inputs.

mod commands;
mod documents;
mod inputs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use novikov::cohomology::CohomologyError;
use novikov::local_system::LocalSystemError;
use novikov::simplicial::{ComplexError, MapError};
use novikov::suite::DEFAULT_SEED;
use novikov::verify::VerifyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) | CliError::Refused(_) => 2,
        }
    }
}

macro_rules! input_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        }
    )*};
}
input_error!(ComplexError, LocalSystemError, MapError, CohomologyError);

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Refused(why) => CliError::Refused(why),
            VerifyError::Inconsistent(why) => CliError::Failed(why),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "novikov", version, about = "Cohomology of simplicial complexes with rank-one local coefficients")]
struct Cli {
    /// Seed for random weight systems and audit primes.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the JSON report here (for `build`: the complex document).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Ranks over three random 30-bit primes instead of exact elimination.
    #[arg(long, global = true)]
    fast_modular: bool,
    /// Print progress to standard error.
    #[arg(long, global = true)]
    progress: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers, twisted Euler characteristic and the H0 cross-check.
    Betti {
        #[arg(help = inputs::COMPLEX_HELP)]
        complex: String,
        #[arg(long, help = inputs::WEIGHTS_HELP)]
        weights: Option<String>,
    },
    /// Build a complex and write its document.
    Build {
        #[command(subcommand)]
        kind: commands::BuildKind,
        /// Where to write the weight document, when the construction produces one.
        #[arg(long, global = true)]
        weights_output: Option<PathBuf>,
    },
    /// Check one of the structural theorems on concrete inputs.
    Verify {
        #[command(subcommand)]
        suite: commands::Suite,
    },
    /// Run the full acceptance suite.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let options = commands::Options {
        seed: cli.seed,
        output: cli.output,
        fast_modular: cli.fast_modular,
        progress: cli.progress,
    };
    let result = match cli.command {
        Command::Betti { complex, weights } => commands::betti(&options, &complex, weights.as_deref()),
        Command::Build { kind, weights_output } => commands::build(&options, kind, weights_output.as_deref()),
        Command::Verify { suite } => commands::verify(&options, suite),
        Command::Selftest => commands::selftest(&options),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
