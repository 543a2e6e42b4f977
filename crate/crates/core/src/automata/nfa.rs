use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::sccs;
use crate::nets::oracle::length_lex;
use crate::nets::{Letter, Word};

pub type State = usize;

/// A nondeterministic automaton with ε-edges over a fixed, sorted alphabet.
///
/// Edge labels are indices into the alphabet; `None` is ε.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Nfa {
    alphabet: Vec<Letter>,
    edges: Vec<Vec<(Option<usize>, State)>>,
    initial: BTreeSet<State>,
    finals: BTreeSet<State>,
}

fn normalize_alphabet<S: AsRef<str>>(letters: &[S]) -> Vec<Letter> {
    let set: BTreeSet<String> = letters.iter().map(|l| l.as_ref().to_string()).collect();
    set.into_iter().collect()
}

impl Nfa {
    /// An automaton with no states.
    pub fn new<S: AsRef<str>>(alphabet: &[S]) -> Self {
        Nfa {
            alphabet: normalize_alphabet(alphabet),
            edges: Vec::new(),
            initial: BTreeSet::new(),
            finals: BTreeSet::new(),
        }
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn letter_index(&self, l: &str) -> Option<usize> {
        self.alphabet.binary_search_by(|x| x.as_str().cmp(l)).ok()
    }

    pub fn state_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn add_state(&mut self) -> State {
        self.edges.push(Vec::new());
        self.edges.len() - 1
    }

    fn check_state(&self, q: State) -> Result<()> {
        if q < self.edges.len() {
            Ok(())
        } else {
            Err(Error::Structure(format!("unknown state {q}")))
        }
    }

    /// Adds an edge; `None` is ε. The letter must belong to the alphabet.
    pub fn add_edge(&mut self, p: State, label: Option<&str>, q: State) -> Result<()> {
        self.check_state(p)?;
        self.check_state(q)?;
        let sym = match label {
            None => None,
            Some(l) => Some(
                self.letter_index(l)
                    .ok_or_else(|| Error::Structure(format!("letter `{l}` not in alphabet")))?,
            ),
        };
        self.push_edge(p, sym, q);
        Ok(())
    }

    pub(crate) fn push_edge(&mut self, p: State, sym: Option<usize>, q: State) {
        if !self.edges[p].contains(&(sym, q)) {
            self.edges[p].push((sym, q));
        }
    }

    pub fn set_initial(&mut self, q: State) -> Result<()> {
        self.check_state(q)?;
        self.initial.insert(q);
        Ok(())
    }

    pub fn set_final(&mut self, q: State) -> Result<()> {
        self.check_state(q)?;
        self.finals.insert(q);
        Ok(())
    }

    pub fn initial_states(&self) -> &BTreeSet<State> {
        &self.initial
    }

    pub fn final_states(&self) -> &BTreeSet<State> {
        &self.finals
    }

    pub(crate) fn raw_edges(&self, p: State) -> &[(Option<usize>, State)] {
        &self.edges[p]
    }

    /// Outgoing edges of `p` as `(label, target)`.
    pub fn edges_from(&self, p: State) -> impl Iterator<Item = (Option<&Letter>, State)> + '_ {
        self.edges[p]
            .iter()
            .map(move |&(s, q)| (s.map(|i| &self.alphabet[i]), q))
    }

    /// All edges `(source, label, target)`.
    pub fn edges(&self) -> Vec<(State, Option<&Letter>, State)> {
        (0..self.state_count())
            .flat_map(|p| self.edges_from(p).map(move |(l, q)| (p, l, q)))
            .collect()
    }

    pub fn has_epsilon(&self) -> bool {
        self.edges.iter().flatten().any(|(s, _)| s.is_none())
    }

    // ----- constructors -----

    /// The empty language.
    pub fn empty<S: AsRef<str>>(alphabet: &[S]) -> Self {
        Nfa::new(alphabet)
    }

    /// `{ε}`.
    pub fn epsilon<S: AsRef<str>>(alphabet: &[S]) -> Self {
        let mut a = Nfa::new(alphabet);
        let q = a.add_state();
        a.initial.insert(q);
        a.finals.insert(q);
        a
    }

    /// A finite language given by its words.
    pub fn from_words<S: AsRef<str>>(alphabet: &[S], words: &[Word]) -> Result<Self> {
        let mut a = Nfa::new(alphabet);
        let start = a.add_state();
        a.initial.insert(start);
        for w in words {
            let mut cur = start;
            for l in w {
                let next = a.add_state();
                a.add_edge(cur, Some(l), next)?;
                cur = next;
            }
            a.finals.insert(cur);
        }
        Ok(a)
    }

    /// `w*`.
    pub fn word_star<S: AsRef<str>>(alphabet: &[S], w: &[Letter]) -> Result<Self> {
        let mut a = Nfa::new(alphabet);
        let start = a.add_state();
        a.initial.insert(start);
        a.finals.insert(start);
        let mut cur = start;
        for (i, l) in w.iter().enumerate() {
            let next = if i + 1 == w.len() { start } else { a.add_state() };
            a.add_edge(cur, Some(l), next)?;
            cur = next;
        }
        Ok(a)
    }

    /// `w_1* w_2* ⋯ w_n*`.
    pub fn bounded_expression<S: AsRef<str>>(alphabet: &[S], words: &[Word]) -> Result<Self> {
        let mut acc = Nfa::epsilon(alphabet);
        for w in words {
            acc = acc.concat(&Nfa::word_star(alphabet, w)?)?;
        }
        Ok(acc)
    }

    /// `Σ*` over the given alphabet.
    pub fn sigma_star<S: AsRef<str>>(alphabet: &[S]) -> Self {
        let mut a = Nfa::new(alphabet);
        let q = a.add_state();
        a.initial.insert(q);
        a.finals.insert(q);
        for i in 0..a.alphabet.len() {
            a.push_edge(q, Some(i), q);
        }
        a
    }

    // ----- alphabets -----

    /// The same automaton over a larger alphabet.
    pub fn with_alphabet<S: AsRef<str>>(&self, alphabet: &[S]) -> Result<Self> {
        let target = normalize_alphabet(alphabet);
        let map: Vec<usize> = self
            .alphabet
            .iter()
            .map(|l| {
                target
                    .binary_search(l)
                    .map_err(|_| Error::Structure(format!("letter `{l}` missing from new alphabet")))
            })
            .collect::<Result<_>>()?;
        Ok(Nfa {
            alphabet: target,
            edges: self
                .edges
                .iter()
                .map(|es| es.iter().map(|&(s, q)| (s.map(|i| map[i]), q)).collect())
                .collect(),
            initial: self.initial.clone(),
            finals: self.finals.clone(),
        })
    }

    /// Both automata over the union of their alphabets.
    pub fn align(a: &Nfa, b: &Nfa) -> (Nfa, Nfa) {
        let mut all = a.alphabet.clone();
        all.extend(b.alphabet.iter().cloned());
        (
            a.with_alphabet(&all).expect("superset"),
            b.with_alphabet(&all).expect("superset"),
        )
    }

    fn same_alphabet(&self, other: &Nfa) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.alphabet.clone(),
                right: other.alphabet.clone(),
            })
        }
    }

    /// Applies a letter-to-letter-or-ε morphism.
    pub fn relabel<S: AsRef<str>>(
        &self,
        alphabet: &[S],
        h: impl Fn(&Letter) -> Option<Letter>,
    ) -> Result<Self> {
        let mut out = Nfa::new(alphabet);
        let mut map = Vec::with_capacity(self.alphabet.len());
        for l in &self.alphabet {
            map.push(match h(l) {
                None => None,
                Some(img) => Some(out.letter_index(&img).ok_or_else(|| {
                    Error::Structure(format!("image `{img}` of `{l}` not in target alphabet"))
                })?),
            });
        }
        out.edges = self
            .edges
            .iter()
            .map(|es| {
                let mut v: Vec<(Option<usize>, State)> = Vec::new();
                for &(s, q) in es {
                    let e = (s.and_then(|i| map[i]), q);
                    if !v.contains(&e) {
                        v.push(e);
                    }
                }
                v
            })
            .collect();
        out.initial = self.initial.clone();
        out.finals = self.finals.clone();
        Ok(out)
    }

    // ----- simulation -----

    pub fn epsilon_closure(&self, set: &mut BTreeSet<State>) {
        let mut stack: Vec<State> = set.iter().copied().collect();
        while let Some(p) = stack.pop() {
            for &(s, q) in &self.edges[p] {
                if s.is_none() && set.insert(q) {
                    stack.push(q);
                }
            }
        }
    }

    fn step(&self, set: &BTreeSet<State>, sym: usize) -> BTreeSet<State> {
        let mut out = BTreeSet::new();
        for &p in set {
            for &(s, q) in &self.edges[p] {
                if s == Some(sym) {
                    out.insert(q);
                }
            }
        }
        self.epsilon_closure(&mut out);
        out
    }

    fn start_set(&self) -> BTreeSet<State> {
        let mut s = self.initial.clone();
        self.epsilon_closure(&mut s);
        s
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        let mut cur = self.start_set();
        for l in w {
            let Some(sym) = self.letter_index(l) else {
                return false;
            };
            cur = self.step(&cur, sym);
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|q| self.finals.contains(q))
    }

    // ----- reachability -----

    fn forward_reachable(&self, from: &BTreeSet<State>) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut stack: Vec<State> = from.iter().copied().collect();
        for &q in from {
            seen[q] = true;
        }
        while let Some(p) = stack.pop() {
            for &(_, q) in &self.edges[p] {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen
    }

    fn backward_reachable(&self, to: &BTreeSet<State>) -> Vec<bool> {
        let mut rev = vec![Vec::new(); self.state_count()];
        for (p, es) in self.edges.iter().enumerate() {
            for &(_, q) in es {
                rev[q].push(p);
            }
        }
        let mut seen = vec![false; self.state_count()];
        let mut stack: Vec<State> = to.iter().copied().collect();
        for &q in to {
            seen[q] = true;
        }
        while let Some(p) = stack.pop() {
            for &q in &rev[p] {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen
    }

    /// Whether the state is reachable from an initial state and co-reachable
    /// to a final one.
    pub fn live_states(&self) -> Vec<bool> {
        let f = self.forward_reachable(&self.initial);
        let b = self.backward_reachable(&self.finals);
        f.iter().zip(&b).map(|(x, y)| *x && *y).collect()
    }

    pub fn is_empty(&self) -> bool {
        let f = self.forward_reachable(&self.initial);
        !self.finals.iter().any(|&q| f[q])
    }

    /// Restriction to live states, renumbered in increasing order.
    pub fn trim(&self) -> Nfa {
        let live = self.live_states();
        self.restrict(&live)
    }

    fn restrict(&self, keep: &[bool]) -> Nfa {
        let mut map = vec![usize::MAX; self.state_count()];
        let mut next = 0;
        for (q, &k) in keep.iter().enumerate() {
            if k {
                map[q] = next;
                next += 1;
            }
        }
        let mut out = Nfa::new(&self.alphabet);
        out.edges = vec![Vec::new(); next];
        for (p, es) in self.edges.iter().enumerate() {
            if !keep[p] {
                continue;
            }
            for &(s, q) in es {
                if keep[q] {
                    out.push_edge(map[p], s, map[q]);
                }
            }
        }
        out.initial = self.initial.iter().filter(|&&q| keep[q]).map(|&q| map[q]).collect();
        out.finals = self.finals.iter().filter(|&&q| keep[q]).map(|&q| map[q]).collect();
        out
    }

    /// An equivalent automaton without ε-edges (same states).
    pub fn remove_epsilon(&self) -> Nfa {
        if !self.has_epsilon() {
            return self.clone();
        }
        let mut out = Nfa::new(&self.alphabet);
        out.edges = vec![Vec::new(); self.state_count()];
        out.initial = self.initial.clone();
        for p in 0..self.state_count() {
            let mut cl = BTreeSet::from([p]);
            self.epsilon_closure(&mut cl);
            if cl.iter().any(|q| self.finals.contains(q)) {
                out.finals.insert(p);
            }
            for &r in &cl {
                for &(s, q) in &self.edges[r] {
                    if s.is_some() {
                        out.push_edge(p, s, q);
                    }
                }
            }
        }
        out
    }

    // ----- closure operations -----

    fn disjoint_copy(&self, out: &mut Nfa) -> usize {
        let offset = out.state_count();
        for es in &self.edges {
            out.edges
                .push(es.iter().map(|&(s, q)| (s, q + offset)).collect());
        }
        offset
    }

    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        self.same_alphabet(other)?;
        let mut out = self.clone();
        let off = other.disjoint_copy(&mut out);
        out.initial.extend(other.initial.iter().map(|q| q + off));
        out.finals.extend(other.finals.iter().map(|q| q + off));
        Ok(out)
    }

    /// Union of many automata over one alphabet.
    pub fn union_all<S: AsRef<str>>(alphabet: &[S], parts: &[Nfa]) -> Result<Nfa> {
        let mut out = Nfa::empty(alphabet);
        for p in parts {
            out = out.union(p)?;
        }
        Ok(out)
    }

    pub fn concat(&self, other: &Nfa) -> Result<Nfa> {
        self.same_alphabet(other)?;
        let mut out = self.clone();
        let off = other.disjoint_copy(&mut out);
        for &f in &self.finals {
            for &i in &other.initial {
                out.push_edge(f, None, i + off);
            }
        }
        out.finals = other.finals.iter().map(|q| q + off).collect();
        Ok(out)
    }

    /// Kleene star.
    pub fn star(&self) -> Nfa {
        let mut out = self.clone();
        let s = out.add_state();
        for &i in &self.initial {
            out.push_edge(s, None, i);
        }
        for &f in &self.finals {
            out.push_edge(f, None, s);
        }
        out.initial = BTreeSet::from([s]);
        out.finals = BTreeSet::from([s]);
        out
    }

    pub fn reverse(&self) -> Nfa {
        let mut out = Nfa::new(&self.alphabet);
        out.edges = vec![Vec::new(); self.state_count()];
        for (p, es) in self.edges.iter().enumerate() {
            for &(s, q) in es {
                out.push_edge(q, s, p);
            }
        }
        out.initial = self.finals.clone();
        out.finals = self.initial.clone();
        out
    }

    /// Intersection by the synchronous product (ε-moves interleave).
    pub fn product(&self, other: &Nfa) -> Result<Nfa> {
        self.same_alphabet(other)?;
        let mut out = Nfa::new(&self.alphabet);
        let mut index: HashMap<(State, State), State> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut intern = |out: &mut Nfa, queue: &mut VecDeque<(State, State)>, pq: (State, State)| {
            *index.entry(pq).or_insert_with(|| {
                queue.push_back(pq);
                out.add_state()
            })
        };
        for &p in &self.initial {
            for &q in &other.initial {
                let s = intern(&mut out, &mut queue, (p, q));
                out.initial.insert(s);
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let src = intern(&mut out, &mut queue, (p, q));
            if self.finals.contains(&p) && other.finals.contains(&q) {
                out.finals.insert(src);
            }
            for &(s, p2) in &self.edges[p] {
                match s {
                    None => {
                        let t = intern(&mut out, &mut queue, (p2, q));
                        out.push_edge(src, None, t);
                    }
                    Some(a) => {
                        for &(s2, q2) in &other.edges[q] {
                            if s2 == Some(a) {
                                let t = intern(&mut out, &mut queue, (p2, q2));
                                out.push_edge(src, Some(a), t);
                            }
                        }
                    }
                }
            }
            for &(s2, q2) in &other.edges[q] {
                if s2.is_none() {
                    let t = intern(&mut out, &mut queue, (p, q2));
                    out.push_edge(src, None, t);
                }
            }
        }
        Ok(out)
    }

    /// Complete deterministic automaton (as an ε-free `Nfa` with one initial state).
    pub fn determinize(&self) -> Nfa {
        let mut out = Nfa::new(&self.alphabet);
        let mut index: HashMap<BTreeSet<State>, State> = HashMap::new();
        let mut queue = VecDeque::new();
        let start = self.start_set();
        let s0 = out.add_state();
        index.insert(start.clone(), s0);
        queue.push_back(start);
        out.initial.insert(s0);
        while let Some(set) = queue.pop_front() {
            let src = index[&set];
            if set.iter().any(|q| self.finals.contains(q)) {
                out.finals.insert(src);
            }
            for a in 0..self.alphabet.len() {
                let next = self.step(&set, a);
                let dst = match index.get(&next) {
                    Some(&d) => d,
                    None => {
                        let d = out.add_state();
                        index.insert(next.clone(), d);
                        queue.push_back(next);
                        d
                    }
                };
                out.push_edge(src, Some(a), dst);
            }
        }
        out
    }

    /// Complement with respect to `Σ*` over this automaton's alphabet.
    pub fn complement(&self) -> Nfa {
        let mut d = self.determinize();
        let all: BTreeSet<State> = (0..d.state_count()).collect();
        d.finals = all.difference(&d.finals).copied().collect();
        d
    }

    /// Whether the language is finite.
    pub fn is_finite(&self) -> bool {
        let t = self.remove_epsilon().trim();
        let comps = sccs(t.state_count(), |p| t.edges[p].iter().map(|&(_, q)| q).collect());
        comps.iter().all(|c| {
            c.len() == 1 && !t.edges[c[0]].iter().any(|&(_, q)| q == c[0])
        })
    }

    /// Length of the longest accepted word, `None` if the language is empty
    /// or infinite.
    pub fn longest_word_len(&self) -> Option<usize> {
        if self.is_empty() || !self.is_finite() {
            return None;
        }
        let t = self.remove_epsilon().trim();
        let order = sccs(t.state_count(), |p| t.edges[p].iter().map(|&(_, q)| q).collect());
        // Longest path to a final state, processing sinks first.
        let mut best: Vec<Option<usize>> = vec![None; t.state_count()];
        for comp in order.iter().rev() {
            let p = comp[0];
            let mut b = if t.finals.contains(&p) { Some(0) } else { None };
            for &(_, q) in &t.edges[p] {
                if let Some(v) = best[q] {
                    b = Some(b.map_or(v + 1, |x: usize| x.max(v + 1)));
                }
            }
            best[p] = b;
        }
        t.initial.iter().filter_map(|&q| best[q]).max()
    }

    /// `L(a) ⊆ L(b)`, by exploring `a` against the subset automaton of `b`.
    pub fn includes(a: &Nfa, b: &Nfa) -> Result<bool> {
        a.same_alphabet(b)?;
        Ok(Nfa::inclusion_counterexample(a, b)?.is_none())
    }

    /// A shortest word of `L(a) ∖ L(b)`, if any.
    pub fn inclusion_counterexample(a: &Nfa, b: &Nfa) -> Result<Option<Word>> {
        a.same_alphabet(b)?;
        let a = a.remove_epsilon();
        type Key = (State, BTreeSet<State>);
        let mut parent: HashMap<Key, Option<(Key, usize)>> = HashMap::new();
        let mut queue = VecDeque::new();
        let bstart = b.start_set();
        for &p in &a.initial {
            let k = (p, bstart.clone());
            if parent.insert(k.clone(), None).is_none() {
                queue.push_back(k);
            }
        }
        while let Some(k) = queue.pop_front() {
            let (p, set) = &k;
            if a.finals.contains(p) && !set.iter().any(|q| b.finals.contains(q)) {
                let mut w = Vec::new();
                let mut cur = k.clone();
                while let Some(Some((prev, s))) = parent.get(&cur) {
                    w.push(a.alphabet[*s].clone());
                    cur = prev.clone();
                }
                w.reverse();
                return Ok(Some(w));
            }
            for &(s, p2) in &a.edges[*p] {
                let sym = s.expect("ε-free");
                let k2 = (p2, b.step(set, sym));
                if !parent.contains_key(&k2) {
                    parent.insert(k2.clone(), Some((k.clone(), sym)));
                    queue.push_back(k2);
                }
            }
        }
        Ok(None)
    }

    pub fn equivalent(a: &Nfa, b: &Nfa) -> Result<bool> {
        Ok(Nfa::includes(a, b)? && Nfa::includes(b, a)?)
    }

    /// Accepted words of length at most `max_len`, length-lexicographic.
    pub fn enumerate(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut layer: BTreeMap<Vec<usize>, BTreeSet<State>> = BTreeMap::new();
        layer.insert(Vec::new(), self.start_set());
        for len in 0..=max_len {
            let mut next = BTreeMap::new();
            for (w, set) in &layer {
                if set.iter().any(|q| self.finals.contains(q)) {
                    out.push(w.iter().map(|&i| self.alphabet[i].clone()).collect());
                }
                if len == max_len {
                    continue;
                }
                for a in 0..self.alphabet.len() {
                    let s = self.step(set, a);
                    if !s.is_empty() {
                        let mut w2 = w.clone();
                        w2.push(a);
                        next.insert(w2, s);
                    }
                }
            }
            layer = next;
        }
        length_lex(&mut out);
        out
    }

    /// Number of distinct accepted words of each length `0..=max_len`.
    pub fn count_by_length(&self, max_len: usize) -> Vec<u128> {
        let d = self.determinize();
        let start = *d.initial.iter().next().expect("deterministic start");
        let mut counts = vec![0u128; d.state_count()];
        counts[start] = 1;
        let mut out = Vec::with_capacity(max_len + 1);
        for len in 0..=max_len {
            out.push(d.finals.iter().map(|&q| counts[q]).sum());
            if len == max_len {
                break;
            }
            let mut next = vec![0u128; d.state_count()];
            for (p, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for &(_, q) in &d.edges[p] {
                    next[q] = next[q].saturating_add(c);
                }
            }
            counts = next;
        }
        out
    }

    /// Same automaton with initial set `{p}` and final set `{q}`.
    pub fn between(&self, p: State, q: State) -> Nfa {
        let mut out = self.clone();
        out.initial = BTreeSet::from([p]);
        out.finals = BTreeSet::from([q]);
        out
    }

    /// Strongly connected components over all edges, topologically ordered.
    pub fn components(&self) -> Vec<Vec<State>> {
        sccs(self.state_count(), |p| {
            self.edges[p].iter().map(|&(_, q)| q).collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::fixtures::{r1, r2, r3};
    use crate::nets::word;

    #[test]
    fn concat_and_membership() {
        let c = r1().concat(&r1()).unwrap();
        assert!(c.accepts(&word("abab")));
        assert!(!c.accepts(&word("aba")));
    }

    #[test]
    fn finiteness() {
        assert!(!r1().is_finite());
        assert!(Nfa::from_words(&["a", "b"], &[word("ab")]).unwrap().is_finite());
        assert!(Nfa::empty(&["a"]).is_finite());
        // an ε-loop does not make the language infinite
        let mut a = Nfa::epsilon(&["a"]);
        a.add_edge(0, None, 0).unwrap();
        assert!(a.is_finite());
    }

    #[test]
    fn inclusions() {
        assert!(Nfa::includes(&r1(), &r2()).unwrap());
        assert!(!Nfa::includes(&r2(), &r3()).unwrap());
        assert_eq!(
            Nfa::inclusion_counterexample(&r2(), &r3()).unwrap(),
            Some(word("ba"))
        );
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let a = Nfa::sigma_star(&["a"]);
        assert!(matches!(
            a.union(&r2()),
            Err(Error::AlphabetMismatch { .. })
        ));
        let (x, y) = Nfa::align(&a, &r2());
        assert!(Nfa::includes(&x, &y).unwrap());
    }

    #[test]
    fn complement_and_product() {
        let c = r3().complement();
        assert!(c.accepts(&word("ba")));
        assert!(!c.accepts(&word("aab")));
        let p = r1().product(&r3()).unwrap();
        assert_eq!(
            p.enumerate(6).iter().map(|w| crate::nets::show_word(w)).collect::<Vec<_>>(),
            vec!["ε", "ab"]
        );
    }

    #[test]
    fn enumeration_and_counts() {
        assert_eq!(r2().count_by_length(3), vec![1, 2, 4, 8]);
        assert_eq!(r1().count_by_length(4), vec![1, 0, 1, 0, 1]);
        assert_eq!(r3().enumerate(2).len(), 6);
    }

    #[test]
    fn longest_word() {
        let a = Nfa::from_words(&["a", "b"], &[word("ab"), word("aabb")]).unwrap();
        assert_eq!(a.longest_word_len(), Some(4));
        assert_eq!(r1().longest_word_len(), None);
    }

    #[test]
    fn relabel_erases() {
        let a = Nfa::from_words(&["x", "y"], &[vec!["x".into(), "y".into()]]).unwrap();
        let h = a
            .relabel(&["a"], |l| if l == "x" { Some("a".into()) } else { None })
            .unwrap();
        assert!(h.accepts(&word("a")));
        assert!(!h.accepts(&word("aa")));
    }
}
