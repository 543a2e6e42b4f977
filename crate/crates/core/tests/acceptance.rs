//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vasbound_core::analyses::{
    decide_bounded, decide_ca_bounded, decide_factor_universal, decide_factor_unbounded,
    downward_closure, ca_value, Boundedness,
};
use vasbound_core::automata::{chain_inclusion, FactorBound, Nfa};
use vasbound_core::klmst::{approximate, decompose_traced, mgts_member};
use vasbound_core::nets::{
    enumerate_language, fixtures, oracle_factors, show_word, word, FactorSearch, LabeledPetriNet,
    Word,
};
use vasbound_core::numeric::{solve_nat, DiophSystem};
use vasbound_core::predicates::{
    axiom_check_1dim, predicate_fu, predicate_inf, predicate_nof, predicate_not_bounded,
};
use vasbound_core::{Budgets, Result};

use common::{
    all_words, brute_factor_count, fixture_cas, random_net, random_nfa, words_of_len, AB,
};

type Check = std::result::Result<String, String>;
type Criterion = fn() -> Result<Check>;

fn run(name: &str, f: Criterion) -> bool {
    let start = Instant::now();
    let outcome = f().unwrap_or_else(|e| Err(format!("error: {e}")));
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("PASS  {name} ({secs:.1}s): {detail}");
            true
        }
        Err(detail) => {
            println!("FAIL  {name} ({secs:.1}s): {detail}");
            false
        }
    }
}

/// The fixtures followed by ten seeded random nets.
fn test_nets() -> Vec<(String, LabeledPetriNet)> {
    let mut nets: Vec<(String, LabeledPetriNet)> =
        fixtures::all().into_iter().map(|(n, net)| (n.to_string(), net)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..10 {
        nets.push((format!("random-{i}"), random_net(&mut rng)));
    }
    nets
}

fn approximation_soundness() -> Result<Check> {
    let start = Instant::now();
    let budgets = Budgets::default();
    let nets = test_nets();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut words, mut tuples) = (0, 0);
    let mut failures = Vec::new();
    for (name, net) in &nets {
        let approx = approximate(net, &budgets)?;
        let union = approx.union_nfa()?;
        for w in enumerate_language(net, 6, 64, 1_000_000)?.words {
            words += 1;
            if !union.accepts(&w) {
                failures.push(format!("{name}: `{}` not in the approximation", show_word(&w)));
            }
        }
        if approx.rows.is_empty() {
            continue;
        }
        for _ in 0..20 {
            let row = &approx.rows[rng.gen_range(0..approx.rows.len())];
            let tuple: Vec<Word> = row
                .iter()
                .map(|entry| {
                    let choices = entry.enumerate(3);
                    choices[rng.gen_range(0..choices.len())].clone()
                })
                .collect();
            tuples += 1;
            match oracle_factors(net, &tuple, 64, 2_000_000)? {
                FactorSearch::Witness(_) => {}
                FactorSearch::NotFound { truncated } => failures.push(format!(
                    "{name}: no witness for {:?} (truncated: {truncated})",
                    tuple.iter().map(|w| show_word(w)).collect::<Vec<_>>()
                )),
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("took {elapsed:?}, limit 60s"));
    }
    Ok(verdict(
        failures,
        format!("{} nets, {words} words, {tuples} row tuples", nets.len()),
    ))
}

fn refinement_preservation() -> Result<Check> {
    let mut steps = 0;
    let mut words_checked = 0;
    let mut failures = Vec::new();
    for (name, net) in test_nets() {
        let alphabet: Vec<usize> = (0..net.net.transition_count()).collect();
        let words = all_words(&alphabet, 5);
        decompose_traced(&net, &Budgets::default(), |s| {
            steps += 1;
            for w in &words {
                words_checked += 1;
                let before = mgts_member(s.parent, w).expect("membership");
                let after = s
                    .children
                    .iter()
                    .any(|c| mgts_member(c, w).expect("membership"));
                if before != after {
                    failures.push(format!("{name}: {w:?} before={before} after={after}"));
                }
            }
        })?;
    }
    Ok(verdict(
        failures,
        format!("{steps} refine calls, {words_checked} transition words"),
    ))
}

fn predicate_axioms() -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let samples: Vec<(Nfa, Nfa)> =
        (0..50).map(|_| (random_nfa(&mut rng), random_nfa(&mut rng))).collect();
    let ab = Nfa::from_words(&AB, &[word("ab")])?;
    let predicates = [
        predicate_inf(),
        predicate_not_bounded(),
        predicate_nof(ab.clone())?,
        predicate_fu(ab),
    ];
    let mut failures = Vec::new();
    for p in &predicates {
        let report = axiom_check_1dim(p, &samples)?;
        for f in report.failures {
            failures.push(format!("{}: axiom {} on sample {}", p.name(), f.axiom, f.sample));
        }
    }
    // Splitting for a_1*…a_n* under concatenation, every letter tuple n ≤ 3.
    let mut splits = 0;
    for n in 1..=3 {
        for letters in words_of_len(&AB.map(String::from), n) {
            for (i, (k, l)) in samples.iter().enumerate() {
                let (k, l) = (k.with_alphabet(&AB)?, l.with_alphabet(&AB)?);
                if !chain_inclusion(&letters, &k.concat(&l)?)? {
                    continue;
                }
                splits += 1;
                let mut ok = false;
                for cut in 0..=n {
                    if chain_inclusion(&letters[..cut], &k)? && chain_inclusion(&letters[cut..], &l)? {
                        ok = true;
                        break;
                    }
                }
                if !ok {
                    failures.push(format!("sup:{}: no split on sample {i}", letters.join(",")));
                }
            }
        }
    }
    Ok(verdict(
        failures,
        format!("4 predicates x 50 pairs, {splits} sup split instances"),
    ))
}

fn application_verdicts() -> Result<Check> {
    let b = Budgets::default();
    let mut failures = Vec::new();
    let mut expect = |what: &str, ok: bool| {
        if !ok {
            failures.push(what.to_string());
        }
    };
    let bounded = |n| -> Result<bool> {
        Ok(matches!(decide_bounded(&n, &b)?.value, Boundedness::Bounded(_)))
    };
    expect("NET-B bounded", bounded(fixtures::net_b())?);
    expect("NET-A unbounded", !bounded(fixtures::net_a())?);

    let sigma = Nfa::sigma_star(&AB);
    let a_star = Nfa::sigma_star(&["a"]);
    let equiv = |x: &Nfa, y: &Nfa| -> Result<bool> {
        let (x, y) = Nfa::align(x, y);
        Nfa::equivalent(&x, &y)
    };
    expect(
        "dclosure(NET-A) = {a,b}*",
        equiv(&downward_closure(&fixtures::net_a(), &b)?.value, &sigma)?,
    );
    expect(
        "dclosure(NET-D) = a*",
        equiv(&downward_closure(&fixtures::net_d(), &b)?.value, &a_star)?,
    );

    let ab = Nfa::from_words(&AB, &[word("ab")])?;
    expect(
        "factors(NET-A, {ab}) unbounded",
        decide_factor_unbounded(&fixtures::net_a(), &ab, &b)?.value == FactorBound::Unbounded,
    );
    expect(
        "factors(NET-B, {ab}) >= 1",
        matches!(
            decide_factor_unbounded(&fixtures::net_b(), &ab, &b)?.value,
            FactorBound::Bounded(x) if x >= 1
        ),
    );
    let letters = Nfa::from_words(&AB, &[word("a"), word("b")])?;
    expect(
        "universal(NET-A, {a,b})",
        decide_factor_universal(&fixtures::net_a(), &letters, &b)?.value,
    );
    expect(
        "not universal(NET-D, {a,b})",
        !decide_factor_universal(&fixtures::net_d(), &letters, &b)?.value,
    );
    Ok(verdict(failures, "8 verdicts".into()))
}

/// Maximum of `value` over words of the language with at most `len` letters.
fn enumerated_max(
    net: &LabeledPetriNet,
    len: usize,
    mut value: impl FnMut(&Word) -> Result<Option<u64>>,
) -> Result<u64> {
    let mut best = 0;
    for w in enumerate_language(net, len, 64, 1_000_000)?.words {
        best = best.max(value(&w)?.unwrap_or(0));
    }
    Ok(best)
}

fn bound_domination() -> Result<Check> {
    let b = Budgets::default();
    let factor_sets: [&[&str]; 4] = [&["ab"], &["a"], &["ba"], &["aa", "b"]];
    let cas = fixture_cas()?;
    let mut failures = Vec::new();
    let mut bounds = 0;
    for (name, net) in fixtures::all() {
        for ks in factor_sets {
            let words: Vec<Word> = ks.iter().map(|w| word(w)).collect();
            let k = Nfa::from_words(&AB, &words)?;
            if let FactorBound::Bounded(x) = decide_factor_unbounded(&net, &k, &b)?.value {
                bounds += 1;
                let seen = enumerated_max(&net, 10, |w| Ok(Some(brute_factor_count(w, &words))))?;
                if seen > x {
                    failures.push(format!("{name}, K={ks:?}: bound {x} < enumerated {seen}"));
                }
            }
        }
        for ca in &cas {
            if let FactorBound::Bounded(x) = decide_ca_bounded(&net, &ca.automaton, &b)?.value {
                bounds += 1;
                let seen = enumerated_max(&net, 8, |w| ca_value(&ca.automaton, w, 1_000_000))?;
                if seen > x {
                    failures.push(format!("{name}, {}: bound {x} < enumerated {seen}", ca.name));
                }
            }
        }
    }
    Ok(verdict(failures, format!("{bounds} finite bounds checked")))
}

fn counting_semantics() -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cas = fixture_cas()?;
    let mut failures = Vec::new();
    for ca in &cas {
        for _ in 0..100 {
            let len = rng.gen_range(0..=8);
            let w: Word = (0..len).map(|_| AB[rng.gen_range(0..2)].to_string()).collect();
            let got = ca_value(&ca.automaton, &w, 1_000_000)?;
            let want = (ca.formula)(&w);
            if got != want {
                failures.push(format!("{} on `{}`: {got:?} vs {want:?}", ca.name, show_word(&w)));
            }
        }
    }
    let b = Budgets::default();
    let mut unbounded = 0;
    for (name, net) in fixtures::all() {
        for ca in &cas {
            if decide_ca_bounded(&net, &ca.automaton, &b)?.value != FactorBound::Unbounded {
                continue;
            }
            unbounded += 1;
            let maxima = [4, 8, 12]
                .iter()
                .map(|&len| enumerated_max(&net, len, |w| ca_value(&ca.automaton, w, 1_000_000)))
                .collect::<Result<Vec<_>>>()?;
            if !maxima.windows(2).all(|p| p[0] < p[1]) {
                failures.push(format!("{name}, {}: witnesses do not grow: {maxima:?}", ca.name));
            }
        }
    }
    Ok(verdict(
        failures,
        format!("{} automata x 100 words, {unbounded} unbounded verdicts", cas.len()),
    ))
}

fn diophantine() -> Result<Check> {
    const BOX: u64 = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let points = words_of_len(&(0..=BOX).collect::<Vec<_>>(), 3);
    let mut failures = Vec::new();
    for s in 0..30 {
        let rows: Vec<Vec<i64>> =
            (0..2).map(|_| (0..3).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let rhs: Vec<i64> = (0..2).map(|_| rng.gen_range(-3..=3)).collect();
        let sys = DiophSystem::new(rows, rhs, 3)?;
        let d = solve_nat(&sys, 200_000)?;
        let solutions: Vec<&Vec<u64>> = points.iter().filter(|p| sys.is_solution(p)).collect();
        let minimal: BTreeSet<Vec<u64>> = solutions
            .iter()
            .filter(|p| !solutions.iter().any(|q| q != *p && le(q, p)))
            .map(|p| p.to_vec())
            .collect();
        let in_box: BTreeSet<Vec<u64>> =
            d.particular.iter().filter(|p| p.iter().all(|&x| x <= BOX)).cloned().collect();
        if minimal != in_box {
            failures.push(format!("system {s}: minimal {minimal:?} vs solver {in_box:?}"));
        }
        // Every solution in the box is a minimal solution plus basis vectors.
        let mut memo = HashMap::new();
        for p in &solutions {
            let generated = d.particular.iter().any(|m| {
                le(m, p) && {
                    let rest: Vec<u64> = p.iter().zip(m).map(|(a, b)| a - b).collect();
                    generated_by(&rest, &d.homogeneous, &mut memo)
                }
            });
            if !generated {
                failures.push(format!("system {s}: {p:?} not generated"));
            }
        }
        for h in &d.homogeneous {
            if !sys.is_homogeneous_solution(h) {
                failures.push(format!("system {s}: {h:?} not homogeneous"));
            }
        }
    }
    Ok(verdict(failures, "30 systems over [0,8]^3".into()))
}

fn le(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn generated_by(x: &[u64], basis: &[Vec<u64>], memo: &mut HashMap<Vec<u64>, bool>) -> bool {
    if x.iter().all(|&v| v == 0) {
        return true;
    }
    if let Some(&r) = memo.get(x) {
        return r;
    }
    let r = basis.iter().any(|h| {
        h.iter().any(|&v| v > 0) && le(h, x) && {
            let rest: Vec<u64> = x.iter().zip(h).map(|(a, b)| a - b).collect();
            generated_by(&rest, basis, memo)
        }
    });
    memo.insert(x.to_vec(), r);
    r
}

fn verdict(failures: Vec<String>, summary: String) -> Check {
    if failures.is_empty() {
        Ok(summary)
    } else {
        let shown: Vec<_> = failures.iter().take(5).cloned().collect();
        Err(format!("{} failures ({summary}); first: {}", failures.len(), shown.join("; ")))
    }
}

fn main() {
    let criteria: [(&str, Criterion); 7] = [
        ("1 approximation soundness", approximation_soundness),
        ("2 refinement preserves languages", refinement_preservation),
        ("3 predicate axioms", predicate_axioms),
        ("4 application verdicts", application_verdicts),
        ("5 bound domination", bound_domination),
        ("6 counting automaton semantics", counting_semantics),
        ("7 diophantine solver", diophantine),
    ];
    let mut all = true;
    for (name, f) in criteria {
        all &= run(name, f);
    }
    if !all {
        std::process::exit(1);
    }
}
