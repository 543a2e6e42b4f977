//! Unboundedness predicates over factor sets, decided on regular languages
//! and lifted to net languages through the regular approximation.

mod axioms;
mod concrete;
mod registry;

use std::fmt;
use std::sync::Arc;

use crate::automata::Nfa;
use crate::budget::Budgets;
use crate::error::Result;
use crate::klmst::{approximate, RegularApproximation};
use crate::nets::LabeledPetriNet;

pub use axioms::{axiom_check_1dim, AxiomFailure, AxiomReport};
pub use concrete::{
    counting_bound, counting_letter_automaton, predicate_counting, predicate_fu, predicate_inf, predicate_nof,
    predicate_not_bounded, predicate_sup, predicate_word,
};
pub use registry::parse_predicate;

type Decider = dyn Fn(&Nfa) -> Result<bool> + Send + Sync;

/// An `n`-dimensional predicate, packaged with its decision procedure on
/// `F_n(L(R))` for regular `R`.
#[derive(Clone)]
pub struct Predicate {
    name: String,
    dimension: usize,
    decide: Arc<Decider>,
}

impl Predicate {
    pub fn new(
        name: impl Into<String>,
        dimension: usize,
        decide: impl Fn(&Nfa) -> Result<bool> + Send + Sync + 'static,
    ) -> Self {
        Predicate {
            name: name.into(),
            dimension,
            decide: Arc::new(decide),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn decide_regular(&self, r: &Nfa) -> Result<bool> {
        (self.decide)(r)
    }
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Predicate")
            .field("name", &self.name)
            .field("dimension", &self.dimension)
            .finish()
    }
}

/// Evaluates `p` on the net language through its regular approximation.
pub fn lift(p: &Predicate, n: &LabeledPetriNet, budgets: &Budgets) -> Result<bool> {
    lift_approximation(p, &approximate(n, budgets)?)
}

/// [`lift`] for an approximation that was already computed.
pub fn lift_approximation(p: &Predicate, approx: &RegularApproximation) -> Result<bool> {
    p.decide_regular(&approx.union_nfa()?)
}
