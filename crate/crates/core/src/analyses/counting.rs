//! Counting automata: a tape that is pushed to and periodically checked
//! against regular languages, with one counter per check target.
//!
//! ```text
//! states q0 q1
//! input a
//! tape a
//! counters c
//! edge q0 a push a q1
//! edge q1 - check k.nfa c q0
//! edge q0 - - q0
//! initial q0
//! final q0
//! ```

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::analyses::Outcome;
use crate::automata::{FactorBound, Nfa};
use crate::budget::{Budgets, Usage};
use crate::error::{Error, Result};
use crate::klmst::approximate;
use crate::nets::{tokens, LabeledPetriNet, Letter, Marking, PetriNet, Transition, Word};
use crate::predicates::counting_bound;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaOp {
    Push(Letter),
    /// Clears the tape; increments `counter` if the tape was in `checks[language]`.
    Check { language: usize, counter: usize },
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaEdge {
    pub from: usize,
    pub input: Option<Letter>,
    pub op: CaOp,
    pub to: usize,
}

#[derive(Debug, Clone)]
pub struct CountingAutomaton {
    pub states: Vec<String>,
    pub input: Vec<Letter>,
    pub tape: Vec<Letter>,
    pub counters: Vec<String>,
    /// Check languages over the tape alphabet, with the names they were loaded under.
    pub checks: Vec<(String, Nfa)>,
    pub edges: Vec<CaEdge>,
    pub initial: usize,
    pub finals: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CaConfiguration {
    pub state: usize,
    pub tape: Word,
    pub counters: Vec<u64>,
}

impl CountingAutomaton {
    pub fn validate(&self) -> Result<()> {
        let n = self.states.len();
        if self.initial >= n || self.finals.iter().any(|&q| q >= n) {
            return Err(Error::Structure("state index out of range".into()));
        }
        for e in &self.edges {
            if e.from >= n || e.to >= n {
                return Err(Error::Structure("edge endpoint out of range".into()));
            }
            if let Some(x) = &e.input {
                if !self.input.contains(x) {
                    return Err(Error::Structure(format!("undeclared input letter `{x}`")));
                }
            }
            match &e.op {
                CaOp::Push(a) if !self.tape.contains(a) => {
                    return Err(Error::Structure(format!("undeclared tape letter `{a}`")))
                }
                CaOp::Check { language, counter }
                    if *language >= self.checks.len() || *counter >= self.counters.len() =>
                {
                    return Err(Error::Structure("check refers to an unknown language or counter".into()))
                }
                _ => {}
            }
        }
        for (name, k) in &self.checks {
            if let Some(l) = k.alphabet().iter().find(|l| !self.tape.contains(l)) {
                return Err(Error::Structure(format!(
                    "check language `{name}` uses `{l}`, which is not a tape letter"
                )));
            }
        }
        Ok(())
    }

    pub fn initial_configuration(&self) -> CaConfiguration {
        CaConfiguration {
            state: self.initial,
            tape: Word::new(),
            counters: vec![0; self.counters.len()],
        }
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the text format; `load_nfa` resolves the file names used by `check`.
pub fn parse_ca(text: &str, load_nfa: impl Fn(&str) -> Result<Nfa>) -> Result<CountingAutomaton> {
    let mut states: Option<Vec<String>> = None;
    let mut input = Vec::new();
    let mut tape = Vec::new();
    let mut counters = Vec::new();
    let mut checks: Vec<(String, Nfa)> = Vec::new();
    let mut edges = Vec::new();
    let mut initial = None;
    let mut finals = BTreeSet::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokens(raw);
        let Some((&key, rest)) = toks.split_first() else {
            continue;
        };
        let owned = || rest.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let state = |name: &str| -> Result<usize> {
            states
                .as_ref()
                .ok_or_else(|| perr(line, "`states` must come first"))?
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| perr(line, format!("undeclared state `{name}`")))
        };
        match key {
            "states" => states = Some(owned()),
            "input" => input = owned(),
            "tape" => tape = owned(),
            "counters" => counters = owned(),
            "initial" => {
                let [q] = rest else {
                    return Err(perr(line, "`initial` takes one state"));
                };
                initial = Some(state(q)?);
            }
            "final" => {
                for q in rest {
                    finals.insert(state(q)?);
                }
            }
            "edge" => {
                let (from, x, op, to) = match rest {
                    [f, x, "push", a, t] => (f, x, CaOp::Push(a.to_string()), t),
                    [f, x, "check", file, c, t] => {
                        let counter = counters
                            .iter()
                            .position(|k| k == c)
                            .ok_or_else(|| perr(line, format!("undeclared counter `{c}`")))?;
                        let language = match checks.iter().position(|(n, _)| n == file) {
                            Some(l) => l,
                            None => {
                                let k = load_nfa(file).map_err(|e| perr(line, e.to_string()))?;
                                checks.push((file.to_string(), k));
                                checks.len() - 1
                            }
                        };
                        (f, x, CaOp::Check { language, counter }, t)
                    }
                    [f, x, "-", t] => (f, x, CaOp::Skip, t),
                    _ => return Err(perr(line, "malformed edge")),
                };
                let input_letter = (*x != "-").then(|| x.to_string());
                if let Some(l) = &input_letter {
                    if !input.contains(l) {
                        return Err(perr(line, format!("undeclared input letter `{l}`")));
                    }
                }
                if let CaOp::Push(a) = &op {
                    if !tape.contains(a) {
                        return Err(perr(line, format!("undeclared tape letter `{a}`")));
                    }
                }
                edges.push(CaEdge {
                    from: state(from)?,
                    input: input_letter,
                    op,
                    to: state(to)?,
                });
            }
            other => return Err(perr(line, format!("unknown key `{other}`"))),
        }
    }
    let a = CountingAutomaton {
        states: states.ok_or_else(|| perr(0, "missing `states`"))?,
        input,
        tape,
        counters,
        checks,
        edges,
        initial: initial.ok_or_else(|| perr(0, "missing `initial`"))?,
        finals,
    };
    a.validate()?;
    Ok(a)
}

/// One-edge successors of `c` reading `x`.
pub fn ca_step(a: &CountingAutomaton, c: &CaConfiguration, x: Option<&str>) -> Vec<CaConfiguration> {
    a.edges
        .iter()
        .filter(|e| e.from == c.state && e.input.as_deref() == x)
        .map(|e| {
            let mut next = c.clone();
            next.state = e.to;
            match &e.op {
                CaOp::Push(l) => next.tape.push(l.clone()),
                CaOp::Check { language, counter } => {
                    if a.checks[*language].1.accepts(&c.tape) {
                        next.counters[*counter] += 1;
                    }
                    next.tape.clear();
                }
                CaOp::Skip => {}
            }
            next
        })
        .collect()
}

/// The largest `min_c µ(c)` over accepting runs on `w`, or `None` when `w` is
/// rejected. Runs are explored exhaustively; ε-cycles that grow the
/// configuration run into `max_states`.
pub fn ca_value(a: &CountingAutomaton, w: &[Letter], max_states: usize) -> Result<Option<u64>> {
    let start = (0usize, a.initial_configuration());
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut best: Option<u64> = None;
    while let Some((pos, c)) = queue.pop_front() {
        if pos == w.len() && a.finals.contains(&c.state) {
            let v = c.counters.iter().copied().min().unwrap_or(0);
            best = Some(best.map_or(v, |b| b.max(v)));
        }
        let mut next: Vec<(usize, CaConfiguration)> =
            ca_step(a, &c, None).into_iter().map(|n| (pos, n)).collect();
        if let Some(x) = w.get(pos) {
            next.extend(ca_step(a, &c, Some(x)).into_iter().map(|n| (pos + 1, n)));
        }
        for s in next {
            if seen.insert(s.clone()) {
                if seen.len() > max_states {
                    return Err(Error::budget("max_states", max_states)
                        .with_context("counting automaton runs"));
                }
                queue.push_back(s);
            }
        }
    }
    Ok(best)
}

/// A letter-to-letter transducer with ε on either track.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transducer {
    pub state_count: usize,
    pub initial: usize,
    pub finals: BTreeSet<usize>,
    pub input: Vec<Letter>,
    pub output: Vec<Letter>,
    pub edges: Vec<(usize, Option<Letter>, Option<Letter>, usize)>,
}

impl Transducer {
    /// All outputs on input `w`, up to `max_states` explored configurations.
    pub fn apply(&self, w: &[Letter], max_len: usize, max_states: usize) -> Result<BTreeSet<Word>> {
        let start = (self.initial, 0usize, Word::new());
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        let mut out = BTreeSet::new();
        while let Some((q, pos, o)) = queue.pop_front() {
            if pos == w.len() && self.finals.contains(&q) {
                out.insert(o.clone());
            }
            for (p, x, y, r) in &self.edges {
                if *p != q {
                    continue;
                }
                let pos2 = match x {
                    None => pos,
                    Some(x) if w.get(pos) == Some(x) => pos + 1,
                    Some(_) => continue,
                };
                let mut o2 = o.clone();
                if let Some(y) = y {
                    if o2.len() == max_len {
                        continue;
                    }
                    o2.push(y.clone());
                }
                let s = (*r, pos2, o2);
                if seen.insert(s.clone()) {
                    if seen.len() > max_states {
                        return Err(Error::budget("max_states", max_states)
                            .with_context("transducer application"));
                    }
                    queue.push_back(s);
                }
            }
        }
        Ok(out)
    }
}

/// The transducer that outputs the operations of runs, and one factor
/// language per counter.
#[derive(Debug, Clone)]
pub struct CompiledCa {
    pub transducer: Transducer,
    /// `K̄_c` for each counter `c`, over the output alphabet.
    pub tuple: Vec<Nfa>,
}

/// Separator letter written before each tape segment.
pub const D_LETTER: &str = "$d";

/// End marker for a segment checked against language `i` for counter `c`.
pub fn e_letter(a: &CountingAutomaton, language: usize, counter: usize) -> Letter {
    format!("$e{}.{}", language + 1, a.counters[counter])
}

pub fn ca_compile(a: &CountingAutomaton) -> Result<CompiledCa> {
    if let Some(l) = a.tape.iter().find(|l| l.starts_with('$')) {
        return Err(Error::Precondition(format!("tape letter `{l}` clashes with reserved names")));
    }
    let mut output: Vec<Letter> = a.tape.clone();
    output.push(D_LETTER.into());
    for i in 0..a.checks.len() {
        for c in 0..a.counters.len() {
            output.push(e_letter(a, i, c));
        }
    }
    output.sort();
    output.dedup();

    let start = a.states.len();
    let mut count = start + 1;
    let mut edges = vec![(start, None, Some(D_LETTER.to_string()), a.initial)];
    for e in &a.edges {
        match &e.op {
            CaOp::Push(l) => edges.push((e.from, e.input.clone(), Some(l.clone()), e.to)),
            CaOp::Skip => edges.push((e.from, e.input.clone(), None, e.to)),
            CaOp::Check { language, counter } => {
                let mid = count;
                count += 1;
                edges.push((e.from, e.input.clone(), Some(e_letter(a, *language, *counter)), mid));
                edges.push((mid, None, Some(D_LETTER.to_string()), e.to));
            }
        }
    }
    let transducer = Transducer {
        state_count: count,
        initial: start,
        finals: a.finals.clone(),
        input: a.input.clone(),
        output: output.clone(),
        edges,
    };

    let d = Nfa::from_words(&output, &[vec![D_LETTER.to_string()]])?;
    let mut tuple = Vec::with_capacity(a.counters.len());
    for c in 0..a.counters.len() {
        let mut parts = Vec::new();
        for (i, (_, k)) in a.checks.iter().enumerate() {
            let e = Nfa::from_words(&output, &[vec![e_letter(a, i, c)]])?;
            parts.push(d.concat(&k.with_alphabet(&output)?)?.concat(&e)?);
        }
        tuple.push(Nfa::union_all(&output, &parts)?.trim());
    }
    Ok(CompiledCa { transducer, tuple })
}

/// A labeled net for the image of `L(n)` under `t`.
///
/// Control places `$q<i>` track the transducer state; `$done` is marked once
/// a final state is left for good.
pub fn transduce_net(n: &LabeledPetriNet, t: &Transducer) -> Result<LabeledPetriNet> {
    let base = n.net.place_count();
    let mut places: Vec<String> = n.net.places().to_vec();
    places.extend((0..t.state_count).map(|q| format!("$q{q}")));
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
    let mut labels = Vec::new();
    for (i, tr) in n.net.transitions().iter().enumerate() {
        if n.label(i).is_none() {
            transitions.push(Transition {
                name: tr.name.clone(),
                pre: widen(&tr.pre),
                post: widen(&tr.post),
            });
            labels.push(None);
        }
    }
    for (k, (p, x, y, q)) in t.edges.iter().enumerate() {
        let sources: Vec<(String, Vec<u64>, Vec<u64>)> = match x {
            None => vec![(format!("$t{k}"), vec![0; dim], vec![0; dim])],
            Some(x) => n
                .net
                .transitions()
                .iter()
                .enumerate()
                .filter(|(i, _)| n.label(*i) == Some(x))
                .map(|(_, tr)| (format!("{}$t{k}", tr.name), widen(&tr.pre), widen(&tr.post)))
                .collect(),
        };
        for (name, mut pre, mut post) in sources {
            pre[ctl(*p)] += 1;
            post[ctl(*q)] += 1;
            transitions.push(Transition { name, pre, post });
            labels.push(y.clone());
        }
    }
    for &f in &t.finals {
        let mut pre = vec![0; dim];
        let mut post = vec![0; dim];
        pre[ctl(f)] = 1;
        post[done] = 1;
        transitions.push(Transition {
            name: format!("$fin{f}"),
            pre,
            post,
        });
        labels.push(None);
    }
    let mut initial = widen(&n.initial.0);
    initial[ctl(t.initial)] = 1;
    let mut fin = widen(&n.final_marking.0);
    fin[done] = 1;
    LabeledPetriNet::new(PetriNet::new(places, transitions)?, labels, Marking(initial), Marking(fin))
}

/// Whether `sup_w A(w)` over the language is infinite, or an upper bound.
pub fn decide_ca_bounded(
    n: &LabeledPetriNet,
    a: &CountingAutomaton,
    budgets: &Budgets,
) -> Result<Outcome<FactorBound>> {
    if a.counters.is_empty() {
        return Ok(Outcome {
            value: FactorBound::Bounded(0),
            usage: Usage::default(),
        });
    }
    let compiled = ca_compile(a)?;
    let image = transduce_net(n, &compiled.transducer)?;
    let approx = approximate(&image, budgets)?;
    let value = counting_bound(&approx.union_nfa()?, &compiled.tuple)?;
    Ok(Outcome {
        value,
        usage: approx.usage,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nets::{enumerate_language, fixtures, word};

    const LOOP: &str = "\
states q0 q1
input a
tape a
counters c
edge q0 a push a q1
edge q1 - check k c q0
initial q0
final q0
";

    fn k_a(_: &str) -> Result<Nfa> {
        Nfa::from_words(&["a"], &[word("a")])
    }

    fn k_none(_: &str) -> Result<Nfa> {
        Ok(Nfa::empty(&["a"]))
    }

    #[test]
    fn steps() {
        let a = parse_ca(LOOP, k_a).unwrap();
        let c0 = a.initial_configuration();
        let c1 = ca_step(&a, &c0, Some("a"));
        assert_eq!(c1.len(), 1);
        assert_eq!(c1[0].tape, word("a"));
        let c2 = ca_step(&a, &c1[0], None);
        assert_eq!(c2[0].counters, vec![1]);
        assert!(c2[0].tape.is_empty());
        let miss = CaConfiguration { state: 1, tape: word("aa"), counters: vec![0] };
        assert_eq!(ca_step(&a, &miss, None)[0].counters, vec![0]);
    }

    #[test]
    fn values() {
        let a = parse_ca(LOOP, k_a).unwrap();
        assert_eq!(ca_value(&a, &word("aaa"), 1000).unwrap(), Some(3));
        assert_eq!(ca_value(&a, &[], 1000).unwrap(), Some(0));
    }

    #[test]
    fn parse_errors() {
        assert!(parse_ca("states q\nedge q a push a q\n", k_a).is_err());
        assert!(parse_ca("states q\ninput a\ntape a\nedge q a push b q\ninitial q\n", k_a).is_err());
        assert!(matches!(
            parse_ca("states q\nbogus\n", k_a),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn compiled_tuple() {
        let a = parse_ca(LOOP, k_a).unwrap();
        let c = ca_compile(&a).unwrap();
        assert_eq!(c.tuple.len(), 1);
        let w: Word = vec!["$d".into(), "a".into(), "$e1.c".into()];
        assert!(c.tuple[0].accepts(&w));
        let out = c.transducer.apply(&word("aa"), 10, 1000).unwrap();
        let expect: Word = ["$d", "a", "$e1.c", "$d", "a", "$e1.c", "$d"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(out.into_iter().collect::<Vec<_>>(), vec![expect]);
    }

    #[test]
    fn product_net_matches_transduction() {
        let a = parse_ca(LOOP, k_a).unwrap();
        let c = ca_compile(&a).unwrap();
        let n = fixtures::net_d();
        let image = transduce_net(&n, &c.transducer).unwrap();
        let got = enumerate_language(&image, 6, 8, 100_000).unwrap().words;
        let mut want = BTreeSet::new();
        for w in enumerate_language(&n, 6, 8, 100_000).unwrap().words {
            want.extend(c.transducer.apply(&w, 6, 100_000).unwrap());
        }
        assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), want);
    }

    #[test]
    fn ca_bounds() {
        let b = Budgets::default();
        let a = parse_ca(LOOP, k_a).unwrap();
        assert!(decide_ca_bounded(&fixtures::net_d(), &a, &b).unwrap().value.is_unbounded());
        assert_eq!(
            decide_ca_bounded(&fixtures::net_c(), &a, &b).unwrap().value,
            FactorBound::Bounded(0)
        );
        let never = parse_ca(LOOP, k_none).unwrap();
        assert_eq!(
            decide_ca_bounded(&fixtures::net_d(), &never, &b).unwrap().value,
            FactorBound::Bounded(0)
        );
    }
}
