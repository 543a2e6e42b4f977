use crate::automata::Nfa;
use crate::error::{Error, Result};
use crate::nets::Letter;

/// `↓L(a)`: every labeled edge gets a parallel ε-edge.
pub fn downward_closure_nfa(a: &Nfa) -> Nfa {
    let mut out = a.clone();
    for (p, l, q) in a.edges() {
        if l.is_some() {
            out.push_edge(p, None, q);
        }
    }
    out
}

/// `F(L(a))`, the set of factors of accepted words.
pub fn factor_language(a: &Nfa) -> Nfa {
    let mut t = a.trim();
    let n = t.state_count();
    if n == 0 {
        return Nfa::empty(a.alphabet());
    }
    let start = t.add_state();
    let end = t.add_state();
    for q in 0..n {
        t.push_edge(start, None, q);
        t.push_edge(q, None, end);
    }
    let mut out = Nfa::new(a.alphabet());
    for _ in 0..t.state_count() {
        out.add_state();
    }
    for (p, l, q) in t.edges() {
        out.add_edge(p, l.map(String::as_str), q).expect("same alphabet");
    }
    out.set_initial(start).expect("state exists");
    out.set_final(end).expect("state exists");
    out
}

/// Decides `a_1* ⋯ a_n* ⊆ ↓L(a)`.
pub fn chain_inclusion(letters: &[Letter], a: &Nfa) -> Result<bool> {
    if let Some(l) = letters.iter().find(|l| a.letter_index(l).is_none()) {
        return Err(Error::Precondition(format!("letter `{l}` not in alphabet")));
    }
    let words: Vec<Vec<Letter>> = letters.iter().map(|l| vec![l.clone()]).collect();
    let chain = Nfa::bounded_expression(a.alphabet(), &words)?;
    Nfa::includes(&chain, &downward_closure_nfa(a))
}
