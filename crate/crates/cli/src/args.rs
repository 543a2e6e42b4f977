use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use vasbound_core::Budgets;

#[derive(Debug, Parser)]
#[command(
    name = "vasbound",
    version,
    about = "Decide unboundedness questions about labeled Petri net languages"
)]
pub struct Cli {
    #[command(flatten)]
    pub budgets: BudgetArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Largest token count explored by concrete searches.
    #[arg(long, global = true)]
    pub max_token: Option<u64>,
    /// Largest number of MGTS processed by the decomposition.
    #[arg(long, global = true)]
    pub max_worklist: Option<usize>,
    /// Largest Hilbert basis accepted from the linear solver.
    #[arg(long, global = true)]
    pub max_basis: Option<usize>,
}

impl BudgetArgs {
    pub fn resolve(&self) -> Budgets {
        let mut b = Budgets::default();
        if let Some(x) = self.max_token {
            b.max_token = x;
        }
        if let Some(x) = self.max_worklist {
            b.max_worklist = x;
        }
        if let Some(x) = self.max_basis {
            b.max_basis = x;
        }
        b
    }
}

/// A net file, or one of the built-in fixtures `NET-A` … `NET-D`.
pub type NetArg = String;

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose into perfect MGTS.
    Decompose {
        net: NetArg,
        /// Directory for one dump file per MGTS.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the regular approximation rows.
    Approx {
        net: NetArg,
        /// Directory for the row automata and an index file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether the language is bounded.
    Bounded { net: NetArg },
    /// Compute the downward closure.
    Dclosure {
        net: NetArg,
        /// File for the resulting automaton.
        #[arg(long)]
        out: Option<PathBuf>,
        /// File for a DOT rendering.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Evaluate a predicate: inf, notb, sup:a,b, nof:FILE, fu:FILE, word:W, count:FILE,…
    Predicate { name: String, net: NetArg },
    /// Bound the number of disjoint factors from the language of an NFA.
    Factors { nfa: PathBuf, net: NetArg },
    /// Decide whether every word of K* is a factor.
    Universal { nfa: PathBuf, net: NetArg },
    /// Bound a counting automaton on the language.
    Counting { automaton: PathBuf, net: NetArg },
    /// Separability of the first language from the second by a bounded regular language.
    Separable { net: NetArg, other: NetArg },
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Enumerate the language up to a length.
    Enum {
        net: NetArg,
        #[arg(long, default_value_t = 6)]
        maxlen: usize,
    },
    /// Search a word containing the given words as ordered factors.
    Factors { net: NetArg, words: Vec<String> },
    /// Count disjoint factors of a word from the language of an NFA.
    Fcount { word: String, nfa: PathBuf },
}
