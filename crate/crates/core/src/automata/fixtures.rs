//! Regular fixtures over `{a, b}`.

use crate::automata::Nfa;
use crate::nets::word;

/// `(ab)*`
pub fn r1() -> Nfa {
    Nfa::word_star(&["a", "b"], &word("ab")).expect("fixture")
}

/// `{a, b}*`
pub fn r2() -> Nfa {
    Nfa::sigma_star(&["a", "b"])
}

/// `a* b*`
pub fn r3() -> Nfa {
    Nfa::bounded_expression(&["a", "b"], &[word("a"), word("b")]).expect("fixture")
}
