//! `liepowers`: dimension tables, p-class tables, filtration and
//! decomposition runs, certificate checks and self-tests.

mod commands;
mod report;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use liepowers::Error;

#[derive(Parser, Debug)]
#[command(
    name = "liepowers",
    version,
    about = "Exact computations with modular Lie powers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Progress messages on stderr (repeat for more).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// dim L^λ(V) for every partition λ of r, and the n^r total.
    Dims {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// The p-equivalence classes of partitions of r.
    Pclasses {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r: usize,
    },
    /// Split T^r(V) by the idempotents e_J and check each filtration.
    Filtration {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Construct B_k, B_2k, ... and certify each as a direct summand.
    Decompose {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "max-degree")]
        max_degree: usize,
        /// Cap on the number of complements tried in the last search stage.
        #[arg(long = "max-search", default_value_t = 256)]
        max_search: u64,
    },
    /// Re-check a decompose report or a single certificate file.
    Certify { file: PathBuf },
    /// Run the built-in checks.
    Selftest {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

/// Why a run failed, mapped onto the exit status.
#[derive(Debug)]
pub enum Failure {
    /// A mathematical check did not hold.
    Invariant(String),
    /// Bad input or a size cap.
    Usage(String),
    /// The complement search ran out of candidates.
    Exhausted(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invariant(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Exhausted(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invariant(m) | Failure::Usage(m) | Failure::Exhausted(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Invariant(_) | Error::NoConvergence(_) => Failure::Invariant(msg),
            Error::ComplementExhausted(_) => Failure::Exhausted(msg),
            _ => Failure::Usage(msg),
        }
    }
}

fn init_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("LIEPOWERS_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("LIEPOWERS_THREADS={v:?} is not a number")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("thread pool: {e}")))
}

fn run(cli: &Cli) -> Result<report::Report, Failure> {
    init_threads()?;
    let verbose = cli.verbose;
    match &cli.command {
        Command::Dims { p, n, r } => commands::dims(*p, *n, *r),
        Command::Pclasses { p, r } => commands::pclasses(*p, *r),
        Command::Filtration { p, n, r } => commands::filtration(*p, *n, *r),
        Command::Decompose {
            p,
            n,
            k,
            max_degree,
            max_search,
        } => commands::decompose(*p, *n, *k, *max_degree, *max_search, verbose),
        Command::Certify { file } => commands::certify(file),
        Command::Selftest { level } => selftest::run(*level, verbose),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    let outcome = run(&cli).and_then(|mut rep| {
        rep.timing_ms = start.elapsed().as_millis() as u64;
        let text = rep.render(cli.format).map_err(Failure::Usage)?;
        match &cli.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        match rep.first_failure() {
            Some(msg) => Err(Failure::Invariant(msg)),
            None => Ok(()),
        }
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("liepowers: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
