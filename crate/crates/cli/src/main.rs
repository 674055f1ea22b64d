//! Command-line front end for the punctured-affine-space analyzer.
//!
//! Subcommands: `validate` (flavor and witnesses only), `analyze` (the full
//! validate -> local algebra -> degree form -> classification -> obstruction
//! pipeline), `gw` (classify an explicit form), and `corpus` (batch runs over
//! the shipped example maps).
//!
//! Exit codes: 0 success, 1 usage or input parse error, 2 the map is not an
//! endomorphism of punctured affine space, 3 internal invariant violation.

mod corpus;
mod job;
mod report;

use std::panic::AssertUnwindSafe;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "mdegree",
    version,
    about = "Validate endomorphisms of punctured affine space and classify their local degree forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a map file: validity, flavor, and per-variable witnesses.
    Validate {
        /// JSON job file: {"field":"Q","vars":["x","y"],"polys":["x^2","y"]}.
        path: PathBuf,
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
        /// Monomial order, lex or degrevlex; overrides the file's options.
        #[arg(long)]
        order: Option<String>,
    },
    /// Run the full pipeline on a map file and report the degree form, its
    /// classification, and the obstruction status of the target class.
    Analyze {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        order: Option<String>,
        /// Obstruction target as diagonal entries, e.g. "1,1" or "<1,-1>".
        #[arg(long, default_value = "1,1")]
        target: String,
        /// Cross-check isotropy against exhaustive search (prime fields).
        #[arg(long)]
        oracle_checks: bool,
    },
    /// Classify an explicit diagonal form or Gram matrix.
    Gw {
        /// Base field: "Q" or "F<p>" for an odd prime p.
        #[arg(long, default_value = "Q")]
        field: String,
        /// Diagonal entries, e.g. "1,-1".
        #[arg(long, conflicts_with = "gram")]
        form: Option<String>,
        /// Gram matrix as JSON rows, e.g. "[[0,1],[1,0]]".
        #[arg(long)]
        gram: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Batch operations over the example corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Analyze every corpus map; one summary line per map. Exits nonzero if
    /// any map misbehaves.
    Run {
        /// Corpus directory; defaults to $MDEGREE_CORPUS_DIR, then ./corpus.
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        oracle_checks: bool,
    },
    /// List corpus maps with their flavors.
    List {
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

/// Failure channel of every subcommand, mapped onto the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    /// Exit 1: bad arguments, unreadable files, malformed jobs.
    Usage(String),
    /// Exit 2: the polynomials vanish somewhere away from the origin.
    InvalidEndo { message: String, witness: Option<String> },
    /// Exit 3: a certified internal property failed to hold.
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::InvalidEndo { .. } => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::InvalidEndo { .. } => "invalid-endomorphism",
            CliError::Internal(_) => "internal",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => m,
            CliError::InvalidEndo { message, .. } => message,
        }
    }

    /// Structured error JSON on stderr.
    pub fn emit(&self) {
        let mut inner = serde_json::Map::new();
        inner.insert("kind".into(), self.kind().into());
        inner.insert("message".into(), self.message().into());
        if let CliError::InvalidEndo { witness: Some(w), .. } = self {
            inner.insert("witness_variable".into(), w.as_str().into());
        }
        let mut outer = serde_json::Map::new();
        outer.insert("error".into(), serde_json::Value::Object(inner));
        eprintln!("{}", serde_json::Value::Object(outer));
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { path, json, order } => {
            let j = job::load_job(&path, order.as_deref())?;
            let endo = job::validate_endo(&j)?;
            report::print_validation(&j, &endo, json)
        }
        Command::Analyze { path, json, order, target, oracle_checks } => {
            let j = job::load_job(&path, order.as_deref())?;
            let analysis = job::run_pipeline(&j, oracle_checks)?;
            report::print_analysis(&j, &analysis, &target, json)
        }
        Command::Gw { field, form, gram, json } => report::run_gw(&field, form, gram, json),
        Command::Corpus { action } => match action {
            CorpusAction::Run { dir, json, oracle_checks } => {
                corpus::run(dir, json, oracle_checks)
            }
            CorpusAction::List { dir, json } => corpus::list(dir, json),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 2 for usage problems by default; 2 is reserved for
            // invalid endomorphisms here, so usage errors map to 1.
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    // Panics are reported as structured internal errors (exit 3) rather than
    // raw backtraces.
    std::panic::set_hook(Box::new(|_| {}));
    match std::panic::catch_unwind(AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            e.emit();
            ExitCode::from(e.code())
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            let e = CliError::Internal(format!("invariant violation: {msg}"));
            e.emit();
            ExitCode::from(3)
        }
    }
}
