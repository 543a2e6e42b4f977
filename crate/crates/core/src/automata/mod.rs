//! Finite automata and the regular-language decision procedures built on them.

mod bounded;
mod closure;
mod factors;
pub mod fixtures;
mod nfa;
mod text;

pub use bounded::{is_bounded_regular, primitive_root, BoundedExpr};
pub use closure::{chain_inclusion, downward_closure_nfa, factor_language};
pub use factors::{
    c_edge_automaton, factor_universal_regular, factor_unbounded_regular, simultaneous_unbounded,
    CEdgeMode, FactorBound, FactorOracle, RegularFactorOracle, C_LETTER,
};
pub use nfa::{Nfa, State};
pub use text::{nfa_to_dot, parse_nfa, print_nfa};
