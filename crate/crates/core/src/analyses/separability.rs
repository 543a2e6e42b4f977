//! Reduction of separability by bounded regular languages to separability
//! of vector sets by recognizable sets, plus a small-instance decider for
//! the latter.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::automata::{is_bounded_regular, BoundedExpr, Nfa};
use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::klmst::approximate;
use crate::nets::{LabeledPetriNet, Letter, Marking, PetriNet, Transition, Word};

/// `{ projection(M) : M reachable, M[p] = v for every pinned (p, v) }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub net: PetriNet,
    pub initial: Marking,
    pub pinned: Vec<(usize, u64)>,
    /// Counting places, one per word of the expression. Their tokens never decrease.
    pub projection: Vec<usize>,
}

/// `U_i = { x : w_1^{x_1} ⋯ w_n^{x_n} ∈ L_i }` for both languages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparabilityInstance {
    pub expression: BoundedExpr,
    pub sections: [Section; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separability {
    /// The first language is not bounded, so no bounded language contains it.
    NotBounded,
    Instance(Box<SeparabilityInstance>),
}

/// Expressions ordered by total length, then lexicographically, up to `max_size`.
fn expressions(alphabet: &[Letter], max_size: usize, cap: usize) -> Vec<Vec<Word>> {
    fn words(alphabet: &[Letter], len: usize) -> Vec<Word> {
        let mut out = vec![Word::new()];
        for _ in 0..len {
            out = out
                .iter()
                .flat_map(|w| {
                    alphabet.iter().map(move |a| {
                        let mut w = w.clone();
                        w.push(a.clone());
                        w
                    })
                })
                .collect();
        }
        out
    }
    fn tuples(alphabet: &[Letter], total: usize, out: &mut Vec<Vec<Word>>, cap: usize) {
        if total == 0 {
            out.push(vec![]);
            return;
        }
        for first in 1..=total {
            let mut rest = Vec::new();
            tuples(alphabet, total - first, &mut rest, cap);
            for w in words(alphabet, first) {
                for r in &rest {
                    if out.len() >= cap {
                        return;
                    }
                    let mut t = vec![w.clone()];
                    t.extend(r.iter().cloned());
                    out.push(t);
                }
            }
        }
    }
    let mut out = Vec::new();
    for total in 0..=max_size {
        let mut layer = Vec::new();
        tuples(alphabet, total, &mut layer, cap);
        layer.sort();
        out.extend(layer);
        if out.len() >= cap {
            out.truncate(cap);
            break;
        }
    }
    out
}

/// Candidates examined before falling back to the boundedness witness.
const MAX_CANDIDATES: usize = 50_000;

/// Finds `w_1* ⋯ w_n* ⊇ L(k_net)` and describes both languages inside it
/// as sections of counting nets.
pub fn separability_reduce(
    k_net: &LabeledPetriNet,
    l_net: &LabeledPetriNet,
    budgets: &Budgets,
) -> Result<Separability> {
    let approx = approximate(k_net, budgets)?;
    let r = approx.union_nfa()?;
    let Some(witness) = is_bounded_regular(&r)? else {
        return Ok(Separability::NotBounded);
    };
    let alphabet = r.alphabet().to_vec();
    let mut expression = witness.clone();
    for words in expressions(&alphabet, witness.size(), MAX_CANDIDATES) {
        let candidate = BoundedExpr(words);
        if Nfa::includes(&r, &candidate.to_nfa(&alphabet)?)? {
            expression = candidate;
            break;
        }
    }
    Ok(Separability::Instance(Box::new(SeparabilityInstance {
        sections: [
            counting_section(k_net, &expression.0)?,
            counting_section(l_net, &expression.0)?,
        ],
        expression,
    })))
}

/// The net runs `n` while a control automaton reads its labels as
/// `w_1^{x_1} ⋯ w_n^{x_n}`, adding a token to counting place `i` whenever a
/// copy of `w_i` is completed.
fn counting_section(n: &LabeledPetriNet, words: &[Word]) -> Result<Section> {
    if words.iter().any(Vec::is_empty) {
        return Err(Error::Precondition("expression words must be nonempty".into()));
    }
    let base = n.net.place_count();
    // Control states: start, then (i, j) for position j inside w_i.
    let mut ctl_index = Vec::new();
    let mut next = 1;
    for w in words {
        ctl_index.push((next..next + w.len()).collect::<Vec<_>>());
        next += w.len();
    }
    let ctl_count = next;
    let mut places: Vec<String> = n.net.places().to_vec();
    places.extend((0..ctl_count).map(|q| format!("$c{q}")));
    let counters: Vec<usize> = (0..words.len()).map(|i| places.len() + i).collect();
    places.extend((0..words.len()).map(|i| format!("$x{}", i + 1)));
    places.push("$done".into());
    let done = places.len() - 1;
    let dim = places.len();
    let ctl = |q: usize| base + q;
    let widen = |v: &[u64]| {
        let mut w = v.to_vec();
        w.resize(dim, 0);
        w
    };
    let mut transitions = Vec::new();
    let mut move_ctl = |name: String, from: usize, to: usize| {
        let mut pre = vec![0; dim];
        let mut post = vec![0; dim];
        pre[from] = 1;
        post[to] = 1;
        transitions.push(Transition { name, pre, post });
    };
    // Block heads: start and (i, 0).
    let heads: Vec<usize> = std::iter::once(0).chain(ctl_index.iter().map(|v| v[0])).collect();
    for (hi, &h) in heads.iter().enumerate() {
        for &g in &heads[hi + 1..] {
            move_ctl(format!("$skip{h}.{g}"), ctl(h), ctl(g));
        }
        move_ctl(format!("$end{h}"), ctl(h), done);
    }
    for (i, tr) in n.net.transitions().iter().enumerate() {
        match n.label(i) {
            None => transitions.push(Transition {
                name: tr.name.clone(),
                pre: widen(&tr.pre),
                post: widen(&tr.post),
            }),
            Some(x) => {
                for (wi, w) in words.iter().enumerate() {
                    for (j, letter) in w.iter().enumerate() {
                        if letter != x {
                            continue;
                        }
                        let from = ctl_index[wi][j];
                        let completes = j + 1 == w.len();
                        let to = if completes { ctl_index[wi][0] } else { ctl_index[wi][j + 1] };
                        let mut pre = widen(&tr.pre);
                        let mut post = widen(&tr.post);
                        pre[ctl(from)] += 1;
                        post[ctl(to)] += 1;
                        if completes {
                            post[counters[wi]] += 1;
                        }
                        transitions.push(Transition {
                            name: format!("{}$w{}.{}", tr.name, wi + 1, j),
                            pre,
                            post,
                        });
                    }
                }
            }
        }
    }
    let mut initial = widen(&n.initial.0);
    initial[ctl(0)] = 1;
    let mut pinned: Vec<(usize, u64)> = (0..base).map(|p| (p, n.final_marking[p])).collect();
    pinned.extend((0..ctl_count).map(|q| (ctl(q), 0)));
    pinned.push((done, 1));
    Ok(Section {
        net: PetriNet::new(places, transitions)?,
        initial: Marking(initial),
        pinned,
        projection: counters,
    })
}

/// Points of a section found by exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    pub points: BTreeSet<Vec<u64>>,
    /// No cap was hit: `points` is the whole section.
    pub exact: bool,
}

/// Explores reachable markings with every place at most `max_token`.
/// `counter_caps` additionally bounds the counting places.
fn explore(
    s: &Section,
    max_token: u64,
    counter_caps: Option<&[u64]>,
    max_states: usize,
) -> PointSet {
    let within = |m: &Marking| -> std::result::Result<bool, ()> {
        if let Some(caps) = counter_caps {
            if s.projection.iter().zip(caps).any(|(&p, &c)| m[p] > c) {
                return Ok(false);
            }
        }
        if m.max_entry() > max_token {
            return Err(());
        }
        Ok(true)
    };
    let mut exact = true;
    let mut points = BTreeSet::new();
    let mut seen = HashSet::from([s.initial.clone()]);
    let mut queue = VecDeque::from([s.initial.clone()]);
    while let Some(m) = queue.pop_front() {
        if s.pinned.iter().all(|&(p, v)| m[p] == v) {
            points.insert(s.projection.iter().map(|&p| m[p]).collect());
        }
        for t in 0..s.net.transition_count() {
            let Ok(Some(next)) = s.net.fire(&m, t) else {
                continue;
            };
            match within(&next) {
                Ok(true) => {}
                Ok(false) => continue,
                Err(()) => {
                    exact = false;
                    continue;
                }
            }
            if seen.contains(&next) {
                continue;
            }
            if seen.len() >= max_states {
                exact = false;
                continue;
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    PointSet { points, exact }
}

pub fn section_points(s: &Section, max_token: u64, max_states: usize) -> PointSet {
    explore(s, max_token, None, max_states)
}

/// Membership of `x` in a section, when the search below `x` completes.
fn section_contains(s: &Section, x: &[u64], budgets: &Budgets) -> Option<bool> {
    let r = explore(s, budgets.max_token, Some(x), budgets.max_states);
    if r.points.contains(x) {
        Some(true)
    } else {
        r.exact.then_some(false)
    }
}

/// A recognizable subset of `ℕ^n`: a finite set or the complement of one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separator {
    Finite(BTreeSet<Vec<u64>>),
    CoFinite(BTreeSet<Vec<u64>>),
}

impl Separator {
    pub fn contains(&self, x: &[u64]) -> bool {
        match self {
            Separator::Finite(s) => s.contains(x),
            Separator::CoFinite(s) => !s.contains(x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparatorVerdict {
    /// The separator contains the first set and is disjoint from the second.
    Separable(Separator),
    /// A point in both sets.
    Inseparable(Vec<u64>),
    Unknown(String),
}

/// Decides separability when one of the two sets is finite and found
/// exhaustively; answers `Unknown` otherwise.
pub fn recog_separability_oracle(
    inst: &SeparabilityInstance,
    budgets: &Budgets,
) -> SeparatorVerdict {
    let [s0, s1] = &inst.sections;
    let u0 = section_points(s0, budgets.max_token, budgets.max_states);
    let u1 = section_points(s1, budgets.max_token, budgets.max_states);
    if let Some(x) = u0.points.intersection(&u1.points).next() {
        return SeparatorVerdict::Inseparable(x.clone());
    }
    match (u0.exact, u1.exact) {
        (true, _) => {
            // U_0 is finite, so it separates itself iff no point lies in U_1.
            for x in &u0.points {
                match section_contains(s1, x, budgets) {
                    Some(true) => return SeparatorVerdict::Inseparable(x.clone()),
                    Some(false) => {}
                    None => return SeparatorVerdict::Unknown(format!("membership of {x:?} in U_1")),
                }
            }
            SeparatorVerdict::Separable(Separator::Finite(u0.points))
        }
        (false, true) => {
            for x in &u1.points {
                match section_contains(s0, x, budgets) {
                    Some(true) => return SeparatorVerdict::Inseparable(x.clone()),
                    Some(false) => {}
                    None => return SeparatorVerdict::Unknown(format!("membership of {x:?} in U_0")),
                }
            }
            SeparatorVerdict::Separable(Separator::CoFinite(u1.points))
        }
        (false, false) => SeparatorVerdict::Unknown(format!(
            "both vector sets are infinite or too large (expression {})",
            inst.expression
        )),
    }
}
