//! Factor-counting constructions: c-edge automata, bounds on the number of
//! disjoint factors from a fixed language, and factor universality.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::automata::closure::factor_language;
use crate::automata::Nfa;
use crate::error::{Error, Result};
use crate::nets::Letter;

/// Decides `K ∩ L(A) ≠ ∅` for a fixed hidden language `K`.
pub trait FactorOracle {
    fn intersects(&self, a: &Nfa) -> Result<bool>;

    /// Letters that words of `K` may use.
    fn alphabet(&self) -> Vec<Letter>;
}

/// The oracle for a regular `K`.
#[derive(Debug, Clone)]
pub struct RegularFactorOracle {
    pub k: Nfa,
}

impl RegularFactorOracle {
    pub fn new(k: Nfa) -> Self {
        RegularFactorOracle { k }
    }
}

impl FactorOracle for RegularFactorOracle {
    fn intersects(&self, a: &Nfa) -> Result<bool> {
        let (k, a) = Nfa::align(&self.k, a);
        Ok(!k.product(&a)?.is_empty())
    }

    fn alphabet(&self) -> Vec<Letter> {
        self.k.alphabet().to_vec()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CEdgeMode {
    /// Original edges stay, relabeled ε.
    Erase,
    /// Original edges are dropped.
    Remove,
}

/// The letter used for the added edges.
pub const C_LETTER: &str = "c";

/// Adds a `c`-edge `p → q` whenever `K` meets the words read from `p` to `q`.
pub fn c_edge_automaton(a: &Nfa, oracle: &dyn FactorOracle, mode: CEdgeMode) -> Result<Nfa> {
    let t = a.trim();
    let mut b = Nfa::new(&[C_LETTER]);
    for _ in 0..t.state_count() {
        b.add_state();
    }
    for &q in t.initial_states() {
        b.set_initial(q)?;
    }
    for &q in t.final_states() {
        b.set_final(q)?;
    }
    if mode == CEdgeMode::Erase {
        for (p, _, q) in t.edges() {
            b.add_edge(p, None, q)?;
        }
    }
    for p in 0..t.state_count() {
        for q in 0..t.state_count() {
            if oracle.intersects(&t.between(p, q))? {
                b.add_edge(p, Some(C_LETTER), q)?;
            }
        }
    }
    Ok(b)
}

/// Whether a counting function is unbounded, or an upper bound for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorBound {
    Unbounded,
    Bounded(u64),
}

impl FactorBound {
    pub fn is_unbounded(&self) -> bool {
        matches!(self, FactorBound::Unbounded)
    }
}

/// Bounds the number of disjoint factors from `K` in words of `L(a)`.
pub fn factor_unbounded_regular(a: &Nfa, oracle: &dyn FactorOracle) -> Result<FactorBound> {
    let b = c_edge_automaton(a, oracle, CEdgeMode::Erase)?;
    if Nfa::includes(&Nfa::sigma_star(&[C_LETTER]), &b)? {
        return Ok(FactorBound::Unbounded);
    }
    Ok(FactorBound::Bounded(
        b.longest_word_len().unwrap_or(0) as u64,
    ))
}

/// Decides `K* ⊆ F(L(a))`.
pub fn factor_universal_regular(a: &Nfa, oracle: &dyn FactorOracle) -> Result<bool> {
    let mut all = a.alphabet().to_vec();
    all.extend(oracle.alphabet());
    let a = a.with_alphabet(&all)?;
    let missing = factor_language(&a).complement();
    let b = c_edge_automaton(&missing, oracle, CEdgeMode::Remove)?;
    Ok(b.is_empty())
}

/// For `a` over `{a_1, …, a_n}`: is `min_i |w|_{a_i}` unbounded on `L(a)`?
/// Otherwise returns its maximum.
pub fn simultaneous_unbounded(a: &Nfa) -> Result<FactorBound> {
    let n = a.alphabet().len();
    if n == 0 || n > 64 {
        return Err(Error::Precondition(format!(
            "simultaneous_unbounded needs 1..=64 letters, got {n}"
        )));
    }
    let t = a.remove_epsilon().trim();
    if t.state_count() == 0 {
        return Ok(FactorBound::Bounded(0));
    }
    let comps = t.components();
    let mut comp_of = vec![0; t.state_count()];
    for (i, c) in comps.iter().enumerate() {
        for &q in c {
            comp_of[q] = i;
        }
    }
    let mut cyclic = vec![0u64; comps.len()];
    for p in 0..t.state_count() {
        for &(s, q) in t.raw_edges(p) {
            if comp_of[q] == comp_of[p] {
                cyclic[comp_of[p]] |= 1 << s.expect("ε-free");
            }
        }
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut reach: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); comps.len()];
    for &q in t.initial_states() {
        reach[comp_of[q]].insert(cyclic[comp_of[q]]);
    }
    for (ci, comp) in comps.iter().enumerate() {
        let masks: Vec<u64> = reach[ci].iter().copied().collect();
        if comp.iter().any(|q| t.final_states().contains(q)) && masks.contains(&full) {
            return Ok(FactorBound::Unbounded);
        }
        for &p in comp {
            for &(_, q) in t.raw_edges(p) {
                let cj = comp_of[q];
                if cj != ci {
                    for &m in &masks {
                        reach[cj].insert(m | cyclic[cj]);
                    }
                }
            }
        }
    }
    let mut bound = 0;
    loop {
        let b = bound + 1;
        if !all_counts_reach(&t, n, b) {
            return Ok(FactorBound::Bounded(bound));
        }
        bound = b;
    }
}

/// Is there an accepted word with every letter occurring at least `b` times?
fn all_counts_reach(t: &Nfa, n: usize, b: u64) -> bool {
    let mut seen: HashSet<(usize, Vec<u64>)> = HashSet::new();
    let mut queue = VecDeque::new();
    for &q in t.initial_states() {
        let s = (q, vec![0; n]);
        if seen.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some((p, counts)) = queue.pop_front() {
        if t.final_states().contains(&p) && counts.iter().all(|&c| c >= b) {
            return true;
        }
        for &(s, q) in t.raw_edges(p) {
            let mut c2 = counts.clone();
            let i = s.expect("ε-free");
            c2[i] = (c2[i] + 1).min(b);
            let st = (q, c2);
            if seen.insert(st.clone()) {
                queue.push_back(st);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::fixtures::{r1, r2};
    use crate::nets::word;

    fn oracle(words: &[&str], alphabet: &[&str]) -> RegularFactorOracle {
        let ws: Vec<_> = words.iter().map(|w| word(w)).collect();
        RegularFactorOracle::new(Nfa::from_words(alphabet, &ws).unwrap())
    }

    #[test]
    fn c_edges() {
        let k = oracle(&["ab"], &["a", "b"]);
        let b = c_edge_automaton(&r1(), &k, CEdgeMode::Erase).unwrap();
        for n in 0..5 {
            assert!(b.accepts(&vec![C_LETTER.to_string(); n]));
        }
        let single = Nfa::from_words(&["a", "b"], &[word("ab")]).unwrap();
        let b = c_edge_automaton(&single, &k, CEdgeMode::Remove).unwrap();
        assert_eq!(b.enumerate(3), vec![vec![C_LETTER.to_string()]]);
        let never = oracle(&["bb"], &["a", "b"]);
        let b = c_edge_automaton(&r1(), &never, CEdgeMode::Erase).unwrap();
        assert_eq!(b.enumerate(3), vec![Vec::<String>::new()]);
    }

    #[test]
    fn factor_bounds() {
        let k = oracle(&["ab"], &["a", "b"]);
        assert_eq!(factor_unbounded_regular(&r1(), &k).unwrap(), FactorBound::Unbounded);
        let aabb = Nfa::from_words(&["a", "b"], &[word("aabb")]).unwrap();
        assert_eq!(factor_unbounded_regular(&aabb, &k).unwrap(), FactorBound::Bounded(1));
        assert_eq!(
            factor_unbounded_regular(&Nfa::empty(&["a", "b"]), &k).unwrap(),
            FactorBound::Bounded(0)
        );
    }

    #[test]
    fn universality() {
        let ab = oracle(&["a", "b"], &["a", "b"]);
        assert!(factor_universal_regular(&r2(), &ab).unwrap());
        assert!(!factor_universal_regular(&Nfa::sigma_star(&["a"]), &ab).unwrap());
        assert!(factor_universal_regular(&r1(), &oracle(&["ab"], &["a", "b"])).unwrap());
        assert!(!factor_universal_regular(&Nfa::empty(&["a", "b"]), &ab).unwrap());
    }

    #[test]
    fn simultaneous() {
        let al = ["x", "y"];
        let xy = Nfa::word_star(&al, &word("xy")).unwrap();
        assert_eq!(simultaneous_unbounded(&xy).unwrap(), FactorBound::Unbounded);
        let xs = Nfa::bounded_expression(&al, &[word("x"), word("y")]).unwrap();
        assert_eq!(simultaneous_unbounded(&xs).unwrap(), FactorBound::Unbounded);
        let either = Nfa::word_star(&al, &word("x"))
            .unwrap()
            .union(&Nfa::word_star(&al, &word("y")).unwrap())
            .unwrap();
        assert_eq!(simultaneous_unbounded(&either).unwrap(), FactorBound::Bounded(0));
        let some = Nfa::from_words(&al, &[word("xxyy"), word("xyyy")]).unwrap();
        assert_eq!(simultaneous_unbounded(&some).unwrap(), FactorBound::Bounded(2));
    }
}
