//! `bkm` — batch front-end for the exact BKM-algebra toolkit.
//!
//! Every subcommand is a pure function of its flags: output is a
//! deterministic JSON (or table) artifact with sorted keys and canonical
//! rational strings, prefixed by a provenance header (`meta`).
//!
//! Exit codes: 0 success, 1 failed verification assertion, 2 input error,
//! 3 memory-budget exhaustion.

mod report;
mod run;
mod verify;

use clap::{Parser, ValueEnum};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bkm", version, about = "Exact computations for BKM highest-weight modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CharKind {
    /// Verma-module character (Kostant series).
    Verma,
    /// Simple-module character via the closed forms, engine fallback optional.
    Simple,
    /// Higher-order Verma quotient for an explicit hole set.
    Quotient,
    /// The denominator series.
    Denominator,
}

/// Shared flags; each subcommand uses the subset that applies to it.
#[derive(clap::Args)]
pub struct CommonOpts {
    /// Cartan matrix: inline JSON `{"A":[["2","-1"],…]}` or a file path.
    #[arg(long)]
    pub matrix: Option<String>,
    /// Highest weight: inline JSON `{"pairings":["0","-1"]}` or a file path.
    #[arg(long)]
    pub lambda: Option<String>,
    /// Hole set: inline JSON `{"holes":[…],"cap":k}` or a file path.
    #[arg(long)]
    pub holes: Option<String>,
    /// Height cutoff for graded enumeration.
    #[arg(long, default_value_t = 6)]
    pub cutoff: u32,
    /// Cap on Heisenberg hole powers (defaults to the cutoff).
    #[arg(long)]
    pub cap: Option<u32>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for parallel enumeration (0 = rayon default).
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Memory budget for graded tables, in MiB.
    #[arg(long, default_value_t = 1024)]
    pub budget_mb: u64,
    /// Fall back to the exact engine when no closed form covers the instance.
    #[arg(long, default_value_t = false)]
    pub oracle_fallback: bool,
}

#[derive(clap::Subcommand)]
pub enum Command {
    /// Validate a matrix; report node types, symmetrizer, and cones.
    Classify {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Weight set of the (higher-order) Verma quotient, up to the cutoff.
    Weights {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Formal character of a module.
    Char {
        #[command(flatten)]
        opts: CommonOpts,
        #[arg(long, value_enum, default_value_t = CharKind::Verma)]
        kind: CharKind,
    },
    /// Maximal-vector space dimension at a grade of the Verma module.
    Maxvec {
        #[command(flatten)]
        opts: CommonOpts,
        /// Grade as comma-separated root coefficients, e.g. `1,1`.
        #[arg(long)]
        grade: String,
    },
    /// Solutions of the rank-2 norm equation attached to (matrix, λ).
    Solve {
        #[command(flatten)]
        opts: CommonOpts,
        /// Search box `X,Y` (required for the unbounded variants).
        #[arg(long, name = "box")]
        bbox: Option<String>,
    },
    /// Solutions of the negative type-A quadratic d⁽ⁿ⁾ = 0.
    Dn {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = false)]
        include_zero: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Kac–Kazhdan linkage chain from λ down through a grade.
    Kk {
        #[command(flatten)]
        opts: CommonOpts,
        #[arg(long)]
        grade: String,
    },
    /// Uniqueness of nontrivial solutions of X²+Y²+XY=M₁X+M₂Y.
    Unique {
        #[arg(long)]
        m1: u64,
        #[arg(long)]
        m2: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run a named verification suite; exits 1 if any assertion fails.
    Verify {
        /// Suite name: `thmD-n3`, `thmD-n4`, `rank1`, `unique-small`, `witt-free`.
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            let (code, kind) = match e.downcast_ref::<bkm_core::Error>() {
                Some(bkm_core::Error::CutoffTooLargeForBudget(_)) => (3, "budget"),
                _ => (2, "input"),
            };
            let err = serde_json::json!({ "error": { "kind": kind, "message": e.to_string() } });
            eprintln!("{}", serde_json::to_string_pretty(&err).unwrap());
            ExitCode::from(code)
        }
    }
}
