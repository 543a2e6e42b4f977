//! Generators and independent reference implementations shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;

use vasbound_core::analyses::{parse_ca, CountingAutomaton};
use vasbound_core::automata::Nfa;
use vasbound_core::nets::{
    word, LabeledPetriNet, Letter, Marking, PetriNet, Transition, Word,
};
use vasbound_core::{Error, Result};

pub const AB: [&str; 2] = ["a", "b"];

/// All sequences over `alphabet` of length exactly `n`.
pub fn words_of_len<T: Clone>(alphabet: &[T], n: usize) -> Vec<Vec<T>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |x| {
                    let mut w = w.clone();
                    w.push(x.clone());
                    w
                })
            })
            .collect();
    }
    out
}

/// All sequences over `alphabet` of length at most `n`.
pub fn all_words<T: Clone>(alphabet: &[T], n: usize) -> Vec<Vec<T>> {
    (0..=n).flat_map(|k| words_of_len(alphabet, k)).collect()
}

/// A net with 1–3 places and 1–4 transitions over `{a, b, ε}`. The final
/// marking is the end of a short random walk, so it is always reachable.
pub fn random_net(rng: &mut impl Rng) -> LabeledPetriNet {
    let places = rng.gen_range(1..=3);
    let count = rng.gen_range(1..=4);
    let vector = |rng: &mut _| -> Vec<u64> {
        (0..places)
            .map(|_| if Rng::gen_bool(rng, 0.4) { 1 } else { 0 })
            .collect()
    };
    let transitions: Vec<Transition> = (0..count)
        .map(|i| Transition {
            name: format!("t{i}"),
            pre: vector(rng),
            post: vector(rng),
        })
        .collect();
    let labels = (0..count)
        .map(|_| match rng.gen_range(0..5) {
            0 => None,
            1 | 2 => Some("a".to_string()),
            _ => Some("b".to_string()),
        })
        .collect();
    let net = PetriNet::new((0..places).map(|p| format!("p{p}")).collect(), transitions)
        .expect("well-formed net");
    let initial = Marking(vector(rng));
    let mut m = initial.clone();
    for _ in 0..rng.gen_range(0..=5) {
        let enabled: Vec<Marking> = (0..count)
            .filter_map(|t| net.fire(&m, t).expect("transition index"))
            .collect();
        if enabled.is_empty() {
            break;
        }
        m = enabled[rng.gen_range(0..enabled.len())].clone();
    }
    LabeledPetriNet::new(net, labels, initial, m).expect("well-formed labeled net")
}

/// A 3-state automaton over `{a, b}` without ε-edges.
pub fn random_nfa(rng: &mut impl Rng) -> Nfa {
    let mut a = Nfa::new(&AB);
    let states: Vec<usize> = (0..3).map(|_| a.add_state()).collect();
    for &p in &states {
        for l in AB {
            for &q in &states {
                if rng.gen_bool(0.25) {
                    a.add_edge(p, Some(l), q).expect("valid edge");
                }
            }
        }
        if rng.gen_bool(0.4) {
            a.set_final(p).expect("valid state");
        }
    }
    a.set_initial(states[0]).expect("valid state");
    a
}

/// Largest number of disjoint factors of `w` taken from the finite set `ks`.
pub fn brute_factor_count(w: &[Letter], ks: &[Word]) -> u64 {
    // best[i]: the count achievable within w[..i]
    let mut best = vec![0u64; w.len() + 1];
    for i in 1..=w.len() {
        best[i] = best[i - 1];
        for k in ks {
            if !k.is_empty() && k.len() <= i && w[i - k.len()..i] == k[..] {
                best[i] = best[i].max(best[i - k.len()] + 1);
            }
        }
    }
    best[w.len()]
}

/// A counting automaton together with a closed-form value function.
pub struct CaFixture {
    pub name: &'static str,
    pub automaton: CountingAutomaton,
    pub formula: fn(&Word) -> Option<u64>,
}

const COUNT_A: &str = "\
states q0 q1
input a
tape a
counters c
edge q0 a push a q1
edge q1 - check a c q0
initial q0
final q0
";

const PAIRS: &str = "\
states q
input a b
tape a b
counters c1 c2
edge q a push a q
edge q b push b q
edge q - check ab c1 q
edge q - check ba c2 q
initial q
final q
";

const AB_BLOCKS: &str = "\
states q
input a b
tape a b
counters c
edge q a push a q
edge q b push b q
edge q - check ab+ c q
initial q
final q
";

fn check_language(name: &str) -> Result<Nfa> {
    match name {
        "a" => Nfa::from_words(&["a"], &[word("a")]),
        "ab" => Nfa::from_words(&AB, &[word("ab")]),
        "ba" => Nfa::from_words(&AB, &[word("ba")]),
        "ab+" => {
            let ab = Nfa::from_words(&AB, &[word("ab")])?;
            ab.concat(&ab.star())
        }
        _ => Err(Error::Precondition(format!("unknown language {name}"))),
    }
}

/// Counter pairs `(#ab blocks, #ba blocks)` over all factorisations of `w`.
fn block_counts(w: &[Letter]) -> BTreeSet<(u64, u64)> {
    if w.is_empty() {
        return BTreeSet::from([(0, 0)]);
    }
    let mut out = BTreeSet::new();
    for cut in 1..=w.len() {
        let block: Vec<&str> = w[..cut].iter().map(String::as_str).collect();
        let d1 = u64::from(block == ["a", "b"]);
        let d2 = u64::from(block == ["b", "a"]);
        for (x, y) in block_counts(&w[cut..]) {
            out.insert((x + d1, y + d2));
        }
    }
    out
}

pub fn fixture_cas() -> Result<Vec<CaFixture>> {
    Ok(vec![
        CaFixture {
            name: "count-a",
            automaton: parse_ca(COUNT_A, check_language)?,
            formula: |w| w.iter().all(|l| l == "a").then_some(w.len() as u64),
        },
        CaFixture {
            name: "pairs",
            automaton: parse_ca(PAIRS, check_language)?,
            formula: |w| block_counts(w).into_iter().map(|(x, y)| x.min(y)).max(),
        },
        CaFixture {
            name: "ab-blocks",
            automaton: parse_ca(AB_BLOCKS, check_language)?,
            formula: |w| Some(w.windows(2).filter(|p| p[0] == "a" && p[1] == "b").count() as u64),
        },
    ])
}
