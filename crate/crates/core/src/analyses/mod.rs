//! Decision procedures for net languages, built on the regular
//! approximation: boundedness, downward closure, factor counting and
//! universality, counting automata, and the separability reduction.

mod counting;
mod separability;

use crate::automata::{
    downward_closure_nfa, factor_universal_regular, factor_unbounded_regular, is_bounded_regular,
    BoundedExpr, FactorBound, Nfa, RegularFactorOracle,
};
use crate::budget::{Budgets, Usage};
use crate::error::{Error, Result};
use crate::klmst::approximate;
use crate::nets::LabeledPetriNet;

pub use counting::{
    ca_compile, ca_step, ca_value, decide_ca_bounded, parse_ca, transduce_net, CaConfiguration,
    CaEdge, CaOp, CompiledCa, CountingAutomaton, Transducer,
};
pub use separability::{
    recog_separability_oracle, section_points, separability_reduce, PointSet, Section, Separability,
    SeparabilityInstance, Separator, SeparatorVerdict,
};

/// A result together with the decomposition work it took.
#[derive(Debug, Clone)]
pub struct Outcome<T> {
    pub value: T,
    pub usage: Usage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Boundedness {
    Bounded(BoundedExpr),
    Unbounded,
}

/// Bounded languages come with an expression `w_1* ⋯ w_n*` containing them.
pub fn decide_bounded(n: &LabeledPetriNet, budgets: &Budgets) -> Result<Outcome<Boundedness>> {
    let approx = approximate(n, budgets)?;
    let r = approx.union_nfa()?;
    let value = match is_bounded_regular(&r)? {
        Some(e) => Boundedness::Bounded(e),
        None => Boundedness::Unbounded,
    };
    Ok(Outcome { value, usage: approx.usage })
}

pub fn downward_closure(n: &LabeledPetriNet, budgets: &Budgets) -> Result<Outcome<Nfa>> {
    let approx = approximate(n, budgets)?;
    let value = downward_closure_nfa(&approx.union_nfa()?).trim();
    Ok(Outcome { value, usage: approx.usage })
}

/// Whether the number of disjoint factors from `K` is unbounded on the
/// language, or an upper bound for it.
pub fn decide_factor_unbounded(
    n: &LabeledPetriNet,
    k: &Nfa,
    budgets: &Budgets,
) -> Result<Outcome<FactorBound>> {
    if k.accepts(&[]) {
        return Err(Error::Precondition("ε must not be in K".into()));
    }
    let approx = approximate(n, budgets)?;
    let value = factor_unbounded_regular(&approx.union_nfa()?, &RegularFactorOracle::new(k.clone()))?;
    Ok(Outcome { value, usage: approx.usage })
}

/// `K* ⊆ F(L)`.
pub fn decide_factor_universal(
    n: &LabeledPetriNet,
    k: &Nfa,
    budgets: &Budgets,
) -> Result<Outcome<bool>> {
    let approx = approximate(n, budgets)?;
    let value = factor_universal_regular(&approx.union_nfa()?, &RegularFactorOracle::new(k.clone()))?;
    Ok(Outcome { value, usage: approx.usage })
}
