//! `albert`: define Albert algebras from JSON, run the verification suites,
//! factor structure-group elements into U-operator words, and inspect fixed
//! points and the hexagon root groups.
//!
//! Exit status: 0 when every check passes, 1 when a verification fails,
//! 2 on usage, parse or precondition errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "albert", version, about = "Exact computations in Albert algebras")]
struct Cli {
    /// Workspace config (JSON); the shipped configs are used when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Number of random cases; each command has its own default.
    #[arg(long, global = true)]
    count: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a config, run the constructor checks and print a summary.
    Define,
    /// Run a verification suite.
    Verify { suite: String },
    /// Factor a map into a word of generators.
    Factor {
        #[command(subcommand)]
        kind: Factor,
    },
    /// Fixed subspace of an operator and the trace-zero fixed vector test.
    Fixpoint {
        #[arg(long)]
        algebra: Option<String>,
        /// A word from the config.
        #[arg(long, conflicts_with_all = ["jp", "ia", "psi"])]
        word: Option<String>,
        /// J_p for p given by 9 coordinates.
        #[arg(long)]
        jp: Option<String>,
        /// I_a for a given by 9 coordinates.
        #[arg(long)]
        ia: Option<String>,
        /// psi_(a,b); needs --b.
        #[arg(long, requires = "b")]
        psi: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Relation audit of the hexagon root groups, or a single product.
    Hexagon {
        #[arg(long)]
        algebra: Option<String>,
        /// Two element files in hexagon JSON; prints their product.
        #[arg(long, num_args = 2, value_names = ["G", "H"])]
        mul: Option<Vec<PathBuf>>,
    },
    /// Evaluate an operation on elements (27 comma-separated rationals or @label).
    Eval {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(value_enum)]
        op: commands::EvalOp,
        args: Vec<String>,
    },
}

#[derive(Subcommand)]
pub enum Factor {
    /// J_p for p = j i j^-1 i^-1 as five U-operators.
    Jp {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
    },
    /// I_a as the seven-factor word, expanded when a decomposition is found.
    Ia {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        a: String,
    },
    /// psi_(a,b) = I_a J_(b^-1 a).
    Psi {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// phi_p as U_(s1,0)...U_(sn,0) for p a product of reflections; each
    /// --v is a vector of K^3 as six rationals (re, im per entry). Sampled
    /// from the seed when no --v is given.
    Phi {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        v: Vec<String>,
    },
    /// The similarity sending (x,0,0) to (cx,0,0).
    Chi {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        c: String,
    },
    /// Reduce a similarity (a config word, or a sampled one) to an isometry.
    Reduce {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        word: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
