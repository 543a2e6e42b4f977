//! Exhaustive searches used as ground truth in tests and by the CLI.
//!
//! None of these is a decision procedure. Every search visits only markings
//! whose entries stay within `max_token`; when the cap cut off a successor
//! the result says so through its `truncated` flag.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::automata::Nfa;
use crate::error::{Error, Result};
use crate::nets::net::{LabeledPetriNet, Letter, Marking, Word};

/// Words found by [`enumerate_language`], in length-lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub words: Vec<Word>,
    /// Some run was cut off by the token cap.
    pub truncated: bool,
}

/// Outcome of [`oracle_factors`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorSearch {
    Witness(Word),
    /// No witness among markings within the cap. With `truncated == false`
    /// the reachable state space was explored completely.
    NotFound { truncated: bool },
}

pub(crate) fn length_lex(words: &mut [Word]) {
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

/// Successors of `m` as `(transition, marking)`, honouring the token cap.
fn successors(
    n: &LabeledPetriNet,
    m: &Marking,
    max_token: u64,
    truncated: &mut bool,
) -> Vec<(usize, Marking)> {
    let mut out = Vec::new();
    for t in 0..n.net.transition_count() {
        if let Ok(Some(next)) = n.net.fire(m, t) {
            if next.max_entry() > max_token {
                *truncated = true;
            } else {
                out.push((t, next));
            }
        }
    }
    out
}

/// All labels `h(w)` of runs `M_I → M_F` with `|h(w)| ≤ max_len` whose
/// markings stay within `max_token`.
pub fn enumerate_language(
    n: &LabeledPetriNet,
    max_len: usize,
    max_token: u64,
    max_states: usize,
) -> Result<Enumeration> {
    let mut truncated = false;
    let start = (n.initial.clone(), Word::new());
    if start.0.max_entry() > max_token {
        return Ok(Enumeration {
            words: vec![],
            truncated: true,
        });
    }
    let mut seen: HashSet<(Marking, Word)> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut words = HashSet::new();
    while let Some((m, w)) = queue.pop_front() {
        if m == n.final_marking {
            words.insert(w.clone());
        }
        for (t, next) in successors(n, &m, max_token, &mut truncated) {
            let mut w2 = w.clone();
            if let Some(l) = n.label(t) {
                if w.len() == max_len {
                    continue;
                }
                w2.push(l.clone());
            }
            let state = (next, w2);
            if seen.insert(state.clone()) {
                if seen.len() > max_states {
                    return Err(Error::budget("max_states", max_states)
                        .with_context("language enumeration"));
                }
                queue.push_back(state);
            }
        }
    }
    let mut words: Vec<Word> = words.into_iter().collect();
    length_lex(&mut words);
    Ok(Enumeration { words, truncated })
}

/// Searches a word of `L(n)` containing `tuple` as ordered, disjoint factors.
///
/// Breadth-first over (marking, factor index, offset), so the witness uses
/// a minimal number of transitions.
pub fn oracle_factors(
    n: &LabeledPetriNet,
    tuple: &[Word],
    max_token: u64,
    max_states: usize,
) -> Result<FactorSearch> {
    type State = (Marking, usize, usize);
    let k = tuple.len();
    // Skip empty factors at factor boundaries.
    let settle = |mut i: usize, j: usize| -> (usize, usize) {
        if j == 0 {
            while i < k && tuple[i].is_empty() {
                i += 1;
            }
        }
        (i, j)
    };
    let mut truncated = false;
    if n.initial.max_entry() > max_token {
        return Ok(FactorSearch::NotFound { truncated: true });
    }
    let (i0, j0) = settle(0, 0);
    let start: State = (n.initial.clone(), i0, j0);
    let mut parent: HashMap<State, Option<(State, usize)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        let (m, i, j) = &state;
        if *i == k && *m == n.final_marking {
            let mut trans = Vec::new();
            let mut cur = state.clone();
            while let Some(Some((prev, t))) = parent.get(&cur) {
                trans.push(*t);
                cur = prev.clone();
            }
            trans.reverse();
            return Ok(FactorSearch::Witness(n.label_word(&trans)));
        }
        for (t, next) in successors(n, m, max_token, &mut truncated) {
            let targets: Vec<(usize, usize)> = match n.label(t) {
                None => vec![(*i, *j)],
                Some(l) => advance(tuple, *i, *j, l)
                    .into_iter()
                    .map(|(a, b)| settle(a, b))
                    .collect(),
            };
            for (a, b) in targets {
                let s = (next.clone(), a, b);
                if !parent.contains_key(&s) {
                    parent.insert(s.clone(), Some((state.clone(), t)));
                    if parent.len() > max_states {
                        return Err(Error::budget("max_states", max_states)
                            .with_context("factor witness search"));
                    }
                    queue.push_back(s);
                }
            }
        }
    }
    Ok(FactorSearch::NotFound { truncated })
}

/// Progress options after reading letter `l` at factor `i`, offset `j`.
fn advance(tuple: &[Word], i: usize, j: usize, l: &Letter) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let close = |i: usize, j: usize| {
        if j == tuple[i].len() {
            (i + 1, 0)
        } else {
            (i, j)
        }
    };
    if j > 0 {
        if &tuple[i][j] == l {
            out.push(close(i, j + 1));
        }
        return out;
    }
    // Between factors: the letter is a gap, or it opens factor i.
    out.push((i, 0));
    if i < tuple.len() && &tuple[i][0] == l {
        out.push(close(i, 1));
    }
    out
}

/// Largest number of disjoint, ordered factors of `w` that lie in `L(k)`.
pub fn f_count(w: &[Letter], k: &Nfa) -> Result<u64> {
    if k.accepts(&[]) {
        return Err(Error::Precondition(
            "f_count requires ε ∉ L(K)".into(),
        ));
    }
    let mut best = vec![0u64; w.len() + 1];
    for end in 1..=w.len() {
        best[end] = best[end - 1];
        for start in 0..end {
            if k.accepts(&w[start..end]) {
                best[end] = best[end].max(best[start] + 1);
            }
        }
    }
    Ok(best[w.len()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nets::{fixtures, word};

    fn words(e: &Enumeration) -> Vec<String> {
        e.words.iter().map(|w| crate::nets::show_word(w)).collect()
    }

    #[test]
    fn dyck_words_up_to_four() {
        let e = enumerate_language(&fixtures::net_a(), 4, 4, 100_000).unwrap();
        assert_eq!(words(&e), vec!["ε", "ab", "aabb", "abab"]);
    }

    #[test]
    fn empty_and_free_languages() {
        let e = enumerate_language(&fixtures::net_c(), 5, 8, 1000).unwrap();
        assert!(e.words.is_empty());
        assert!(!e.truncated);
        let e = enumerate_language(&fixtures::net_d(), 2, 8, 1000).unwrap();
        assert_eq!(words(&e), vec!["ε", "a", "aa"]);
    }

    #[test]
    fn truncation_is_reported() {
        let e = enumerate_language(&fixtures::net_a(), 6, 1, 10_000).unwrap();
        assert!(e.truncated);
        assert_eq!(words(&e), vec!["ε", "ab", "abab", "ababab"]);
    }

    #[test]
    fn budget_error_not_truncation() {
        let err = enumerate_language(&fixtures::net_a(), 10, 10, 5).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn factor_witnesses() {
        let a = fixtures::net_a();
        assert_eq!(
            oracle_factors(&a, &[word("ab")], 8, 10_000).unwrap(),
            FactorSearch::Witness(word("ab"))
        );
        assert_eq!(
            oracle_factors(&a, &[word("b"), word("a")], 8, 10_000).unwrap(),
            FactorSearch::Witness(word("abab"))
        );
        assert_eq!(
            oracle_factors(&a, &[], 8, 10_000).unwrap(),
            FactorSearch::Witness(vec![])
        );
        assert_eq!(
            oracle_factors(&fixtures::net_c(), &[], 8, 10_000).unwrap(),
            FactorSearch::NotFound { truncated: false }
        );
    }

    #[test]
    fn counting_factors() {
        let k = Nfa::from_words(&["a", "b"], &[word("ab")]).unwrap();
        assert_eq!(f_count(&word("abab"), &k).unwrap(), 2);
        assert_eq!(f_count(&word("aabb"), &k).unwrap(), 1);
        assert_eq!(f_count(&[], &k).unwrap(), 0);
        let eps = Nfa::from_words(&["a"], &[vec![]]).unwrap();
        assert!(matches!(f_count(&word("a"), &eps), Err(Error::Precondition(_))));
    }
}
