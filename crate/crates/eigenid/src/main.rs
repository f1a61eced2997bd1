use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use eigenid::commands::{self, Options};
use eigenid::{CliError, Method};

/// Eigenvector components of Hermitian matrices from eigenvalues of the
/// matrix and its minors.
#[derive(Parser)]
#[command(name = "eigenid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Matrix file: {"n": N, "real": [[..]], "imag": [[..]]} (imag optional).
    file: PathBuf,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
    /// Worker threads for the minor eigensolves.
    #[arg(long, env = "EIGENID_THREADS")]
    threads: Option<usize>,
}

impl Common {
    fn options(&self) -> Options {
        Options { json: self.json, threads: self.threads }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sorted eigenvalues.
    Eig(Common),
    /// Table of |v_ij|^2 (row i = eigenvalue, column j = component).
    Magnitudes {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Method::Identity)]
        method: Method,
        /// Multiplicity grouping tolerance (default 1e-8 * max(1, spread)).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Rebuild eigenvector I (1-based) from magnitudes in rotated bases.
    Reconstruct {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        index: usize,
    },
    /// Run every identity check; one JSON line per check.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the computation paths for accuracy and time.
    Stability {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        repeat: usize,
    },
}

fn threads(c: &Command) -> Option<usize> {
    match c {
        Command::Eig(common)
        | Command::Magnitudes { common, .. }
        | Command::Reconstruct { common, .. }
        | Command::Verify { common, .. }
        | Command::Stability { common, .. } => common.threads,
    }
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    if threads(&cli.command) == Some(0) {
        return Err(CliError::Validation("--threads must be at least 1".into()));
    }
    match cli.command {
        Command::Eig(c) => Ok((commands::cmd_eig(&c.file, c.options())?, true)),
        Command::Magnitudes { common, method, tol } => {
            Ok((commands::cmd_magnitudes(&common.file, method, tol, common.options())?, true))
        }
        Command::Reconstruct { common, index } => Ok((commands::cmd_reconstruct(&common.file, index, common.options())?, true)),
        Command::Verify { common, seed } => commands::cmd_verify(&common.file, seed, common.options()),
        Command::Stability { common, repeat } => Ok((commands::cmd_stability(&common.file, repeat, common.options())?, true)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("eigenid: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
