use std::collections::{HashMap, HashSet, VecDeque};

use crate::automata::Nfa;
use crate::budget::{Budgets, Usage};
use crate::error::{Error, Result};
use crate::klmst::component::component_language;
use crate::klmst::covering::{covering_sequence, covering_with_suffix};
use crate::klmst::mgts::{initial_mgts, Mgts, TransitionWord};
use crate::klmst::perfect::{is_perfect, Defect, PerfectnessReport};
use crate::klmst::refine::refine;
use crate::nets::{LabeledPetriNet, Letter, Marking};

/// Perfect MGTS whose languages union to the net language.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub mgts: Vec<Mgts>,
    pub usage: Usage,
}

/// One refinement step, as seen by [`decompose_traced`].
pub struct RefineStep<'a> {
    pub parent: &'a Mgts,
    pub defect: &'a Defect,
    pub children: &'a [Mgts],
}

pub fn decompose(n: &LabeledPetriNet, budgets: &Budgets) -> Result<Decomposition> {
    decompose_traced(n, budgets, |_| {})
}

/// Like [`decompose`], calling `on_refine` after every refinement.
pub fn decompose_traced(
    n: &LabeledPetriNet,
    budgets: &Budgets,
    mut on_refine: impl FnMut(&RefineStep<'_>),
) -> Result<Decomposition> {
    let start = initial_mgts(n);
    let mut usage = Usage::default();
    let mut seen: HashSet<Mgts> = HashSet::from([start.clone()]);
    let mut work = VecDeque::from([start]);
    let mut perfect = Vec::new();
    while let Some(m) = work.pop_front() {
        usage.mgts_processed += 1;
        if usage.mgts_processed > budgets.max_worklist {
            return Err(Error::budget("max_worklist", budgets.max_worklist).with_context(format!(
                "decomposition: {} refinements, {} perfect MGTS so far",
                usage.refine_calls, usage.perfect_mgts
            )));
        }
        match is_perfect(&m, budgets)? {
            PerfectnessReport::Perfect => {
                usage.perfect_mgts += 1;
                perfect.push(m);
            }
            PerfectnessReport::Imperfect(defect) => {
                usage.refine_calls += 1;
                let children = refine(&m, &defect, budgets)?;
                on_refine(&RefineStep {
                    parent: &m,
                    defect: &defect,
                    children: &children,
                });
                for c in children {
                    if seen.insert(c.clone()) {
                        work.push_back(c);
                    }
                }
            }
        }
    }
    perfect.sort_by_key(Mgts::dump);
    Ok(Decomposition { mgts: perfect, usage })
}

/// A word of `L(m)` containing `v_0, t_1, v_1, …, t_n, v_n` as ordered factors.
///
/// Each `v_i` is embedded in a covering sequence `x_i`; the remaining
/// completion is found by breadth-first search over concrete runs.
pub fn iteration_witness(m: &Mgts, factors: &[TransitionWord], budgets: &Budgets) -> Result<TransitionWord> {
    if factors.len() != m.components.len() {
        return Err(Error::Precondition(format!(
            "{} factors for {} components",
            factors.len(),
            m.components.len()
        )));
    }
    let mut forced = Vec::with_capacity(factors.len());
    for (c, v) in m.components.iter().zip(factors) {
        if v.is_empty() {
            forced.push(Vec::new());
            continue;
        }
        let s = covering_sequence(&m.net, c, budgets)?
            .ok_or_else(|| Error::Precondition("MGTS is not perfect".into()))?;
        forced.push(covering_with_suffix(&m.net, c, &s, v)?);
    }
    let start = m.components[0]
        .init
        .to_finite()
        .ok_or_else(|| Error::Precondition("initial marking has ω entries".into()))?;
    if !start.le_omega(&m.components[0].init) {
        return Err(Error::Internal("initial marking mismatch".into()));
    }

    // State: (component, progress in forced word, vertex, marking).
    type State = (usize, usize, usize, Marking);
    let last = m.components.len() - 1;
    let first: State = (0, 0, m.components[0].m, start);
    let mut parent: HashMap<State, Option<(State, usize)>> = HashMap::from([(first.clone(), None)]);
    let mut queue = VecDeque::from([first]);
    let mut capped = false;
    while let Some(s) = queue.pop_front() {
        let (ci, j, v, mk) = s.clone();
        let c = &m.components[ci];
        let mut next: Vec<(State, usize)> = Vec::new();
        if j < forced[ci].len() {
            let t = forced[ci][j];
            for e in c.out_edges(v).filter(|e| e.transition == t) {
                if let Some(mk2) = m.net.fire(&mk, t)? {
                    next.push(((ci, j + 1, e.to, mk2), t));
                }
            }
        } else {
            if v == c.m && mk.le_omega(&c.fin) {
                if ci == last {
                    let mut word = Vec::new();
                    let mut cur = s;
                    while let Some(Some((p, t))) = parent.get(&cur) {
                        word.push(*t);
                        cur = p.clone();
                    }
                    word.reverse();
                    return Ok(word);
                }
                let t = m.links[ci];
                if let Some(mk2) = m.net.fire(&mk, t)? {
                    let nc = &m.components[ci + 1];
                    if mk2.le_omega(&nc.init) {
                        next.push(((ci + 1, 0, nc.m, mk2), t));
                    }
                }
            }
            for e in c.out_edges(v) {
                if let Some(mk2) = m.net.fire(&mk, e.transition)? {
                    next.push(((ci, j, e.to, mk2), e.transition));
                }
            }
        }
        for (s2, t) in next {
            if s2.3.max_entry() > budgets.max_token {
                capped = true;
                continue;
            }
            if parent.contains_key(&s2) {
                continue;
            }
            if parent.len() >= budgets.max_states {
                return Err(Error::budget("max_states", budgets.max_states)
                    .with_context("iteration witness search"));
            }
            parent.insert(s2.clone(), Some((s.clone(), t)));
            queue.push_back(s2);
        }
    }
    if capped {
        Err(Error::budget("max_token", budgets.max_token as usize)
            .with_context("iteration witness search"))
    } else {
        Err(Error::Internal("no iteration witness exists for a perfect MGTS".into()))
    }
}

/// Rows `L(C_0), {t_1}, L(C_1), …` of every perfect MGTS, padded with `{ε}`.
#[derive(Debug, Clone)]
pub struct RegularApproximation {
    pub alphabet: Vec<Letter>,
    pub width: usize,
    /// Rows over the net alphabet.
    pub rows: Vec<Vec<Nfa>>,
    /// The same rows over transition names.
    pub transition_rows: Vec<Vec<Nfa>>,
    pub usage: Usage,
}

impl RegularApproximation {
    /// The union of the concatenated rows.
    pub fn union_nfa(&self) -> Result<Nfa> {
        let mut parts = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut acc = Nfa::epsilon(&self.alphabet);
            for r in row {
                acc = acc.concat(r)?;
            }
            parts.push(acc.trim());
        }
        Nfa::union_all(&self.alphabet, &parts)
    }
}

pub fn approximate(n: &LabeledPetriNet, budgets: &Budgets) -> Result<RegularApproximation> {
    let d = decompose(n, budgets)?;
    let names = n.transition_names();
    let alphabet = n.alphabet();
    let width = d.mgts.iter().map(|m| 2 * m.components.len() - 1).max().unwrap_or(0);
    let mut transition_rows = Vec::new();
    for m in &d.mgts {
        let mut row = Vec::with_capacity(width);
        for (i, c) in m.components.iter().enumerate() {
            if i > 0 {
                row.push(Nfa::from_words(&names, &[vec![names[m.links[i - 1]].clone()]])?);
            }
            row.push(component_language(&m.net, c, c.m, c.m)?.trim());
        }
        while row.len() < width {
            row.push(Nfa::epsilon(&names));
        }
        transition_rows.push(row);
    }
    let h = |t: &Letter| {
        let idx = names.iter().position(|x| x == t).expect("transition name");
        n.label(idx).cloned()
    };
    let rows = transition_rows
        .iter()
        .map(|row| row.iter().map(|r| r.relabel(&alphabet, h)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(RegularApproximation {
        alphabet,
        width,
        rows,
        transition_rows,
        usage: d.usage,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klmst::mgts::mgts_member;
    use crate::klmst::refine::multiset_less;
    use crate::nets::{enumerate_language, fixtures, word};

    #[test]
    fn fixture_decompositions() {
        let b = Budgets::default();
        assert!(decompose(&fixtures::net_c(), &b).unwrap().mgts.is_empty());
        assert_eq!(decompose(&fixtures::net_d(), &b).unwrap().mgts.len(), 1);
        assert_eq!(decompose(&fixtures::net_a(), &b).unwrap().mgts.len(), 1);
        assert!(!decompose(&fixtures::net_b(), &b).unwrap().mgts.is_empty());
    }

    #[test]
    fn ranks_decrease_along_refinement() {
        for (_, n) in fixtures::all() {
            decompose_traced(&n, &Budgets::default(), |s| {
                for c in s.children {
                    assert!(multiset_less(&c.rank(), &s.parent.rank()));
                }
            })
            .unwrap();
        }
    }

    #[test]
    fn net_d_row_is_a_star() {
        let a = approximate(&fixtures::net_d(), &Budgets::default()).unwrap();
        assert_eq!(a.rows.len(), 1);
        assert_eq!(a.width, 1);
        let star = Nfa::word_star(&["a"], &word("a")).unwrap();
        assert!(Nfa::equivalent(&a.rows[0][0], &star).unwrap());
    }

    #[test]
    fn approximation_covers_language() {
        for (name, n) in fixtures::all() {
            let u = approximate(&n, &Budgets::default()).unwrap().union_nfa().unwrap();
            let e = enumerate_language(&n, 6, 64, 1_000_000).unwrap();
            for w in &e.words {
                assert!(u.accepts(w), "{name}: {w:?}");
            }
        }
    }

    #[test]
    fn witnesses_on_net_a() {
        let n = fixtures::net_a();
        let b = Budgets::default();
        let m = &decompose(&n, &b).unwrap().mgts[0];
        let w = iteration_witness(m, &[vec![0, 1]], &b).unwrap();
        assert!(mgts_member(m, &w).unwrap());
        assert!(w.windows(2).any(|x| x == [0, 1]));
        assert_eq!(iteration_witness(m, &[vec![]], &b).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn witness_on_net_d() {
        let n = fixtures::net_d();
        let b = Budgets::default();
        let m = &decompose(&n, &b).unwrap().mgts[0];
        assert_eq!(iteration_witness(m, &[vec![0, 0]], &b).unwrap(), vec![0, 0]);
    }
}
