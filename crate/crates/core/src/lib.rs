//! Regular over-approximations of labeled Petri net languages and the
//! unboundedness questions they decide.

pub mod analyses;
pub mod automata;
mod budget;
mod error;
mod graph;
pub mod nets;
pub mod klmst;
pub mod numeric;
pub mod predicates;

pub use budget::{Budgets, Usage};
pub use error::{Error, Result};
