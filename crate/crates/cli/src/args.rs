use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand};
use serde::Serialize;

/// Exact decompositions T = a1 A1 + a2 A2 + a3 A3 of trace-zero rational
/// matrices with every Ai similar to a fixed diagonal model.
///
/// Matrices are JSON arrays of rows of scalar strings such as "-3/4".
/// Any input path may be "-" for stdin.
#[derive(Debug, Parser, Serialize)]
#[command(name = "waring", version)]
pub struct Cli {
    /// Seed for every random choice made by the run.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Print check details as well as PASS/FAIL (repeatable).
    #[arg(short, long, global = true, action = ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Decompose a trace-zero matrix into three model-similar terms.
    Decompose {
        /// Trace-zero n x n matrix.
        #[arg(long, visible_alias = "in")]
        input: PathBuf,
        /// Distinct nonzero model eigenvalues, e.g. "1,2,-1/2"; q is their count.
        #[arg(long)]
        lambdas: String,
        /// Nonzero coefficients summing to zero, e.g. "1,2,-3".
        #[arg(long)]
        alphas: String,
        /// Expected number of lambdas, checked when given.
        #[arg(long)]
        q: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Re-check a decomposition document from its contents alone.
    Verify {
        #[arg(long = "in", visible_alias = "input")]
        input: PathBuf,
    },
    /// Check the two-term rank obstruction for T = I - n E11.
    Obstruction(ObstructionArgs),
    /// Largest prime p <= n with n + 2 <= 2p.
    FindPrime {
        #[arg(long)]
        n: usize,
    },
    /// Evaluate a noncommutative polynomial at a tuple of matrices.
    PolyEval {
        #[command(flatten)]
        poly: Poly,
        /// JSON array of matrices, the i-th substituted for Xi.
        #[arg(long)]
        args: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Search for arguments at which f has p distinct rational eigenvalues.
    SearchWitness {
        #[command(flatten)]
        poly: Poly,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Decompose T into three terms that are each a value of f.
    WaringPoly {
        #[command(flatten)]
        poly: Poly,
        #[arg(long)]
        n: usize,
        #[arg(long, visible_alias = "in")]
        input: PathBuf,
        #[arg(long)]
        alphas: String,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Conjugate a nonscalar matrix to one with the given diagonal.
    PrescribeDiagonal {
        #[arg(long, visible_alias = "in")]
        input: PathBuf,
        /// Target diagonal, summing to the trace.
        #[arg(long)]
        mus: String,
        #[command(flatten)]
        out: Output,
    },
    /// Complete a trailing (n-q) x (n-q) block to a model-similar matrix.
    CompleteBlock {
        #[arg(long, visible_alias = "in")]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambdas: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct Poly {
    /// Polynomial text, e.g. "X1*X2 - X2*X1".
    #[arg(long, conflicts_with = "f_file")]
    pub f: Option<String>,
    /// File holding the polynomial text.
    #[arg(long)]
    pub f_file: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct Output {
    /// Where to write the JSON result; stdout when absent or "-".
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ObstructionArgs {
    #[arg(long)]
    pub n: usize,
    /// Number of nonzero model eigenvalues; defaults to the lambda count.
    #[arg(long)]
    pub q: Option<usize>,
    /// Model eigenvalues; defaults to 1, 2, .., q.
    #[arg(long)]
    pub lambdas: Option<String>,
    /// Fixed "a1,a2" instead of random ones.
    #[arg(long)]
    pub alphas: Option<String>,
    /// First term; random conjugates of the model are used when absent.
    #[arg(long, requires = "a2")]
    pub a1: Option<PathBuf>,
    #[arg(long, requires = "a1")]
    pub a2: Option<PathBuf>,
    /// Random pairs to test when no terms are given.
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[command(flatten)]
    pub out: Output,
}
