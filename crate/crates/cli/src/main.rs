use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod cache;
mod commands;

use commands::Failure;

/// Exact q-series expansion, identity checks and congruence scans.
#[derive(Parser, Debug)]
#[command(name = "frobcong", version)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Directory memoizing expansions as golden text files.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand a catalog symbol below q^T.
    Expand {
        symbol: String,
        #[arg(long, default_value_t = commands::DEFAULT_TRUNC)]
        trunc: i64,
    },
    /// Check one registered identity, or all of them.
    Verify {
        /// Identity id, or `all`.
        id: String,
        #[arg(long, default_value_t = commands::DEFAULT_TRUNC)]
        trunc: i64,
    },
    /// Scan a congruence family against raw coefficients.
    Scan {
        family: String,
        #[arg(long, default_value_t = 1)]
        alpha: u32,
        #[arg(long, default_value_t = commands::DEFAULT_NMAX)]
        nmax: u64,
    },
    /// Apply a matrix to an eta quotient.
    Transform {
        symbol: String,
        /// Matrix entries `a,b,c,d`.
        #[arg(long, conflicts_with = "named", required_unless_present = "named")]
        matrix: Option<String>,
        /// One of W, V, W60, gamma10, gamma5.
        #[arg(long)]
        named: Option<String>,
    },
    /// List the catalog.
    List,
    /// Compare array enumeration with generating-function coefficients.
    Oracle {
        #[arg(long, default_value_t = 12)]
        nmax: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.global.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().expect("thread pool configured once");
    }
    let g = &cli.global;
    let result = match cli.command {
        Command::Expand { symbol, trunc } => commands::expand(g, &symbol, trunc),
        Command::Verify { id, trunc } => commands::verify(g, &id, trunc),
        Command::Scan { family, alpha, nmax } => commands::scan(g, &family, alpha, nmax),
        Command::Transform { symbol, matrix, named } => commands::transform(g, &symbol, matrix.as_deref(), named.as_deref()),
        Command::List => commands::list(g),
        Command::Oracle { nmax } => commands::oracle(g, nmax),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, message }) => {
            if let Some(m) = message {
                eprintln!("error: {m}");
            }
            ExitCode::from(code)
        }
    }
}
