//! `gforge`: command line front end.
//!
//! Results go to stdout. Exit status 0 means success, 1 a domain error
//! (message on stderr) and 2 a usage error, including malformed formulas,
//! ordinals, trees and files. With `--json` every invocation prints one
//! JSON object `{"ok": bool, "result" | "error": ...}` on stdout.

mod cmd;
mod recipe;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "gforge", version, about = "Ordinal notations, proof search, infinitary derivations and tree embeddings")]
pub struct Cli {
    /// Print a JSON envelope instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Ordinal notations below epsilon_0.
    #[command(subcommand)]
    Ord(OrdCmd),
    /// Search for a cut free derivation of a formula.
    Prove {
        formula: String,
        #[arg(long, default_value_t = 100)]
        fuel: usize,
        /// Write the derivation found to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Check a derivation file.
    Check { file: PathBuf },
    /// Herbrand terms of a cut free derivation file.
    Herbrand { file: PathBuf },
    /// Infinitary derivations.
    #[command(subcommand)]
    Inf(InfCmd),
    /// Binary trees.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Bad sequences and well partial order checks.
    #[command(subcommand)]
    Kruskal(KruskalCmd),
}

#[derive(Subcommand)]
pub enum OrdCmd {
    /// Compare two notations: LT, EQ or GT.
    Cmp { a: String, b: String },
    /// Natural sum a+b.
    Add { a: String, b: String },
    /// w^a.
    Omega { a: String },
    /// The tower w(a, n).
    Tower { a: String, n: usize },
    /// The finite notation n.
    Fromnat { n: usize },
    /// Whether a term is in Cantor normal form.
    Validate { a: String },
    /// All notations with length measure at most k, ascending.
    Enum { k: usize },
    /// The number code of a notation.
    Code { a: String },
    /// The notation with a given code.
    Decode { code: u128 },
}

#[derive(Args)]
pub struct Probe {
    /// Probe budget; defaults to GFORGE_PROBE_BUDGET or 20.
    #[arg(long)]
    probe: Option<usize>,
}

#[derive(Subcommand)]
pub enum InfCmd {
    /// Embed a finitary derivation file.
    Embed {
        file: PathBuf,
        /// Closed terms for the free variables, `x=t,...`.
        #[arg(long, default_value = "")]
        subst: String,
        #[command(flatten)]
        probe: Probe,
    },
    /// Evaluate a recipe and eliminate its cuts.
    Cutelim {
        recipe: PathBuf,
        #[command(flatten)]
        probe: Probe,
    },
    /// Evaluate a recipe and check it along given paths.
    Check {
        recipe: PathBuf,
        /// Paths `i/j/...` separated by `;`; bits are `b0`, `b1`.
        #[arg(long, default_value = "")]
        paths: String,
        #[command(flatten)]
        probe: Probe,
    },
    /// Derive Prog for the coded order with the given bound.
    Prog {
        #[arg(long, default_value_t = 53)]
        order: u64,
        #[command(flatten)]
        probe: Probe,
    },
    /// Transfinite induction for a finite order: assemble, eliminate cuts
    /// and extract the rank certificate for X(n).
    Ti {
        #[arg(long, default_value_t = 53)]
        order: u64,
        #[arg(long, default_value_t = 0)]
        n: u64,
        #[command(flatten)]
        probe: Probe,
    },
}

#[derive(Subcommand)]
pub enum TreeCmd {
    /// s <=_B t.
    Embed { s: String, t: String },
    /// s <=_B t with swapped subtrees allowed.
    Uembed { s: String, t: String },
    /// The tree of a notation and its length measure.
    Qembed { a: String },
    /// Height of a tree.
    Height { t: String },
}

#[derive(Subcommand)]
pub enum KruskalCmd {
    /// Whether a sequence of trees is bad.
    Bad { trees: Vec<String> },
    /// Longest bad sequence of trees with at most N vertices.
    LongestBad {
        #[arg(long)]
        nodes: usize,
    },
    /// Partial order axioms and longest bad sequence on trees of height at
    /// most H.
    Wpo {
        #[arg(long)]
        height: usize,
    },
    /// Check a reification table file.
    CheckReif { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match cmd::dispatch(cli.command) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::json!({ "ok": true, "result": out.json }));
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.msg());
            if json {
                println!("{}", serde_json::json!({ "ok": false, "error": { "kind": e.kind(), "message": e.msg() } }));
            }
            ExitCode::from(e.code())
        }
    }
}
