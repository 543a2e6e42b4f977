//! Boundedness of regular languages with a `w_1* ⋯ w_n*` witness.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::automata::Nfa;
use crate::error::{Error, Result};
use crate::nets::{show_word, Letter, Word};

/// The expression `w_1* ⋯ w_n*`. The empty list denotes `{ε}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundedExpr(pub Vec<Word>);

impl BoundedExpr {
    pub fn to_nfa<S: AsRef<str>>(&self, alphabet: &[S]) -> Result<Nfa> {
        Nfa::bounded_expression(alphabet, &self.0)
    }

    /// Sum of the word lengths.
    pub fn size(&self) -> usize {
        self.0.iter().map(Vec::len).sum()
    }
}

impl fmt::Display for BoundedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for w in &self.0 {
            if w.len() == 1 && w[0].chars().count() == 1 {
                write!(f, "{}*", w[0])?;
            } else {
                write!(f, "({})*", show_word(w))?;
            }
        }
        Ok(())
    }
}

/// The primitive root of a nonempty word.
pub fn primitive_root(w: &[Letter]) -> Word {
    let n = w.len();
    for p in 1..=n {
        if n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]) {
            return w[..p].to_vec();
        }
    }
    w.to_vec()
}

/// The lexicographically least rotation and its offset.
fn least_rotation(w: &[Letter]) -> (usize, Word) {
    (0..w.len())
        .map(|j| {
            let mut r = w[j..].to_vec();
            r.extend_from_slice(&w[..j]);
            (j, r)
        })
        .min_by(|a, b| a.1.cmp(&b.1))
        .unwrap_or((0, Vec::new()))
}

/// Shortest cycle label through `s` using only states in `comp`.
fn shortest_cycle(t: &Nfa, comp: &BTreeSet<usize>, s: usize) -> Option<Word> {
    let mut parent = vec![None; t.state_count()];
    let mut queue = VecDeque::new();
    for (l, q) in t.edges_from(s) {
        if !comp.contains(&q) {
            continue;
        }
        let l = l.expect("ε-free").clone();
        if q == s {
            return Some(vec![l]);
        }
        if parent[q].is_none() {
            parent[q] = Some((s, l));
            queue.push_back(q);
        }
    }
    while let Some(p) = queue.pop_front() {
        for (l, q) in t.edges_from(p) {
            if !comp.contains(&q) {
                continue;
            }
            let l = l.expect("ε-free").clone();
            if q == s {
                let mut w = vec![l];
                let mut cur = p;
                while cur != s {
                    let (prev, l) = parent[cur].clone().expect("bfs parent");
                    w.push(l);
                    cur = prev;
                }
                w.reverse();
                return Some(w);
            }
            if parent[q].is_none() && q != s {
                parent[q] = Some((p, l));
                queue.push_back(q);
            }
        }
    }
    None
}

/// Decides whether `L(a) ⊆ w_1* ⋯ w_n*` for some words; returns a witness
/// expression when it is.
pub fn is_bounded_regular(a: &Nfa) -> Result<Option<BoundedExpr>> {
    let t = a.remove_epsilon().trim();
    let comps = t.components();
    let mut comp_of = vec![0; t.state_count()];
    for (i, c) in comps.iter().enumerate() {
        for &q in c {
            comp_of[q] = i;
        }
    }
    let mut items: Vec<Word> = Vec::new();
    for (ci, comp) in comps.iter().enumerate() {
        let members: BTreeSet<usize> = comp.iter().copied().collect();
        let s0 = comp[0];
        if let Some(cycle) = shortest_cycle(&t, &members, s0) {
            let root = primitive_root(&cycle);
            let p = root.len();
            // Phase of every state relative to s0; reading must follow root cyclically.
            let mut phase: Vec<Option<usize>> = vec![None; t.state_count()];
            phase[s0] = Some(0);
            let mut stack = vec![s0];
            while let Some(u) = stack.pop() {
                let ph = phase[u].expect("assigned");
                for (l, v) in t.edges_from(u) {
                    if comp_of[v] != ci {
                        continue;
                    }
                    if l.expect("ε-free") != &root[ph] {
                        return Ok(None);
                    }
                    let want = (ph + 1) % p;
                    match phase[v] {
                        None => {
                            phase[v] = Some(want);
                            stack.push(v);
                        }
                        Some(x) if x != want => return Ok(None),
                        Some(_) => {}
                    }
                }
            }
            let (shift, lyndon) = least_rotation(&root);
            let rel = |q: usize| (phase[q].expect("assigned") + p - shift) % p;
            let entry_exit_aligned = comp.iter().all(|&q| {
                let is_entry = t.initial_states().contains(&q)
                    || (0..t.state_count())
                        .any(|u| comp_of[u] != ci && t.edges_from(u).any(|(_, v)| v == q));
                let is_exit = t.final_states().contains(&q)
                    || t.edges_from(q).any(|(_, v)| comp_of[v] != ci);
                !(is_entry || is_exit) || rel(q) == 0
            });
            if entry_exit_aligned {
                items.push(lyndon);
            } else {
                let letters: Vec<Word> = lyndon.iter().map(|l| vec![l.clone()]).collect();
                items.extend(letters.iter().cloned());
                items.push(lyndon.clone());
                items.extend(letters);
            }
        }
        let mut out_letters: BTreeSet<&Letter> = BTreeSet::new();
        for &q in comp {
            for (l, v) in t.edges_from(q) {
                if comp_of[v] != ci {
                    out_letters.insert(l.expect("ε-free"));
                }
            }
        }
        items.extend(out_letters.into_iter().map(|l| vec![l.clone()]));
    }
    items.dedup();
    let covers = |items: &[Word]| -> Result<bool> {
        Nfa::includes(a, &Nfa::bounded_expression(a.alphabet(), items)?)
    };
    if !covers(&items)? {
        return Err(Error::Internal(format!(
            "boundedness witness {} does not cover the language",
            BoundedExpr(items)
        )));
    }
    // Drop redundant items, left to right.
    let mut i = 0;
    while i < items.len() {
        let mut shorter = items.clone();
        shorter.remove(i);
        shorter.dedup();
        if covers(&shorter)? {
            items = shorter;
        } else {
            i += 1;
        }
    }
    Ok(Some(BoundedExpr(items)))
}
