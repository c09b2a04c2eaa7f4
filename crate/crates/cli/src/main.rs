//! Command-line front end for `splitlts`.
//!
//! Exit status: 0 for success or a true verdict, 1 for a checked false
//! verdict, 2 for usage, parse and internal errors. Results go to standard
//! output and diagnostics to standard error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "splitlts", version, about = "Exact computations for split Leibniz triple systems")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the defining identities of a system file.
    Verify { file: PathBuf },
    /// Turn a Leibniz algebra file into its derived triple system file.
    Derive {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the standard embedding of a system.
    Embed {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that MASA elements span a maximal abelian subalgebra of L0.
    MasaCheck { embedding: PathBuf, masa: PathBuf },
    /// Root-space decomposition of a system relative to a MASA.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        masa: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the root tables of a decomposition file.
    Roots { decomposition: PathBuf },
    /// Search for a connection from one root to another or its negative.
    Connect {
        decomposition: PathBuf,
        /// Root values separated by commas, as printed by `roots`.
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        /// Use not-J connections within the J-partition.
        #[arg(long)]
        not_j: bool,
    },
    /// Connection classes of the nonzero roots.
    Classes {
        decomposition: PathBuf,
        #[arg(long)]
        not_j: bool,
    },
    /// The ideal J of a system.
    J { file: PathBuf },
    /// Split the roots into those inside J and those outside it.
    Partition { decomposition: PathBuf },
    /// Check root-multiplicativity.
    Multiplicative { decomposition: PathBuf },
    /// Enumerate the ideal family of a maximal-length decomposition.
    Ideals {
        decomposition: PathBuf,
        #[arg(long, default_value_t = splitlts::connectivity::DEFAULT_SUBSET_CAP)]
        cap: usize,
    },
    /// Reports combining several analyses.
    #[command(subcommand)]
    Report(ReportCommand),
    /// The built-in example corpus.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Debug, Subcommand)]
enum ReportCommand {
    /// Simplicity of a system relative to a MASA.
    Simplicity(SimplicityArgs),
}

#[derive(Debug, Args)]
struct SimplicityArgs {
    file: PathBuf,
    #[arg(long)]
    masa: PathBuf,
}

#[derive(Debug, Subcommand)]
enum CorpusCommand {
    /// List corpus file names.
    List,
    /// Print or write one corpus file.
    Emit {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            outcome.print(cli.json);
            ExitCode::from(outcome.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
