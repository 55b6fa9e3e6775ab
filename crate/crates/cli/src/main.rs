//! Batch commands over complex files, oracle dumps and pairing files.
//!
//! Exit codes: 0 for success or a true property, 1 for a false property
//! (a witness is printed), 2 for input errors.

mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CommandError, Options};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
}

#[derive(Parser)]
#[command(
    name = "cubecross",
    about = "Boundary cross ratios and reconstruction of cube complexes",
    version
)]
struct Cli {
    /// Truncation depth; defaults to the query's depth policy.
    #[arg(long, global = true)]
    depth: Option<u32>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed echoed into headers; randomized checks live in the test suite.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Suppress header lines.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a complex file and report eligibility.
    Validate { file: PathBuf },
    /// List boundary points.
    Boundary { file: PathBuf },
    /// Cross ratio of four boundary points.
    Cr {
        file: PathBuf,
        p1: String,
        p2: String,
        p3: String,
        p4: String,
    },
    /// Cross ratio triple of four points.
    Crt {
        file: PathBuf,
        p1: String,
        p2: String,
        p3: String,
        p4: String,
    },
    /// Median of three points.
    Median {
        file: PathBuf,
        p1: String,
        p2: String,
        p3: String,
    },
    /// Skinny/fat decomposition of a single-factor complex.
    Decompose { file: PathBuf },
    /// Dump the boundary cross ratio table.
    OracleDump { file: PathBuf },
    /// Rebuild a complex from an oracle dump.
    Reconstruct { dump: PathBuf },
    /// Check a boundary pairing between two oracle dumps.
    CheckMobius {
        dump_source: PathBuf,
        dump_target: PathBuf,
        pairing: PathBuf,
    },
    /// Extend a boundary pairing to the unique cubical isomorphism.
    VerifyTheorem {
        file_source: PathBuf,
        file_target: PathBuf,
        pairing: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        depth: cli.depth,
        seed: cli.seed,
        quiet: cli.quiet,
    };
    let result = match &cli.command {
        Command::Validate { file } => commands::cmd_validate(&opts, file),
        Command::Boundary { file } => commands::cmd_boundary(&opts, file),
        Command::Cr { file, p1, p2, p3, p4 } => commands::cmd_cr(
            &opts,
            file,
            &[p1.clone(), p2.clone(), p3.clone(), p4.clone()],
        ),
        Command::Crt { file, p1, p2, p3, p4 } => commands::cmd_crt(
            &opts,
            file,
            &[p1.clone(), p2.clone(), p3.clone(), p4.clone()],
        ),
        Command::Median { file, p1, p2, p3 } => {
            commands::cmd_median(&opts, file, &[p1.clone(), p2.clone(), p3.clone()])
        }
        Command::Decompose { file } => commands::cmd_decompose(&opts, file),
        Command::OracleDump { file } => commands::cmd_oracle_dump(&opts, file),
        Command::Reconstruct { dump } => commands::cmd_reconstruct(&opts, dump),
        Command::CheckMobius {
            dump_source,
            dump_target,
            pairing,
        } => commands::cmd_check_mobius(&opts, dump_source, dump_target, pairing),
        Command::VerifyTheorem {
            file_source,
            file_target,
            pairing,
        } => commands::cmd_verify_theorem(&opts, file_source, file_target, pairing),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(CommandError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
