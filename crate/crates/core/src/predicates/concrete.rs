use crate::automata::{
    chain_inclusion, downward_closure_nfa, factor_universal_regular, factor_unbounded_regular,
    is_bounded_regular, simultaneous_unbounded, FactorBound, FactorOracle, Nfa,
    RegularFactorOracle,
};
use crate::error::{Error, Result};
use crate::nets::{show_word, Letter, Word};
use crate::predicates::Predicate;

fn widened(r: &Nfa, letters: &[Letter]) -> Result<Nfa> {
    let mut all = r.alphabet().to_vec();
    all.extend(letters.iter().cloned());
    r.with_alphabet(&all)
}

fn no_epsilon(k: &Nfa, what: &str) -> Result<()> {
    if k.accepts(&[]) {
        return Err(Error::Precondition(format!("{what}: ε must not be in K")));
    }
    Ok(())
}

/// `F(L)` is infinite iff `L` is.
pub fn predicate_inf() -> Predicate {
    Predicate::new("inf", 1, |r| Ok(!r.is_finite()))
}

pub fn predicate_not_bounded() -> Predicate {
    Predicate::new("notb", 1, |r| Ok(is_bounded_regular(r)?.is_none()))
}

/// `a_1* × ⋯ × a_n* ⊆ ↓S`.
pub fn predicate_sup(letters: &[Letter]) -> Predicate {
    let letters = letters.to_vec();
    Predicate::new(format!("sup:{}", letters.join(",")), letters.len().max(1), move |r| {
        chain_inclusion(&letters, &widened(r, &letters)?)
    })
}

/// The number of disjoint factors from `K` is unbounded.
pub fn predicate_nof(k: Nfa) -> Result<Predicate> {
    no_epsilon(&k, "nof")?;
    let oracle = RegularFactorOracle::new(k);
    Ok(Predicate::new("nof", 1, move |r| {
        Ok(factor_unbounded_regular(r, &oracle)?.is_unbounded())
    }))
}

/// `K* ⊆ F(L)`.
pub fn predicate_fu(k: Nfa) -> Predicate {
    let oracle = RegularFactorOracle::new(k);
    Predicate::new("fu", 1, move |r| factor_universal_regular(r, &oracle))
}

/// `(a_1, …, a_n) ∈ S`, i.e. `w ∈ ↓L`.
pub fn predicate_word(w: &[Letter]) -> Predicate {
    let w: Word = w.to_vec();
    Predicate::new(format!("word:{}", show_word(&w)), w.len().max(1), move |r| {
        Ok(downward_closure_nfa(&widened(r, &w)?).accepts(&w))
    })
}

/// Letter names of the counting automaton.
fn index_letter(i: usize) -> Letter {
    format!("k{}", i + 1)
}

/// Over letters `k1 … kn`: an edge `k_i` from `p` to `q` whenever `K_i` meets
/// the words read from `p` to `q`; the original edges remain as ε.
pub fn counting_letter_automaton(r: &Nfa, tuple: &[Nfa]) -> Result<Nfa> {
    let t = r.trim();
    let letters: Vec<Letter> = (0..tuple.len()).map(index_letter).collect();
    let mut b = Nfa::new(&letters);
    for _ in 0..t.state_count() {
        b.add_state();
    }
    for &q in t.initial_states() {
        b.set_initial(q)?;
    }
    for &q in t.final_states() {
        b.set_final(q)?;
    }
    for (p, _, q) in t.edges() {
        b.add_edge(p, None, q)?;
    }
    let oracles: Vec<RegularFactorOracle> =
        tuple.iter().cloned().map(RegularFactorOracle::new).collect();
    for p in 0..t.state_count() {
        for q in 0..t.state_count() {
            let between = t.between(p, q);
            for (i, o) in oracles.iter().enumerate() {
                if o.intersects(&between)? {
                    b.add_edge(p, Some(&letters[i]), q)?;
                }
            }
        }
    }
    Ok(b)
}

fn pairwise_disjoint(tuple: &[Nfa]) -> Result<bool> {
    for (i, a) in tuple.iter().enumerate() {
        for b in &tuple[i + 1..] {
            let (a, b) = Nfa::align(a, b);
            if !a.product(&b)?.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The largest `ℓ` such that some factorization has, for every `i`, at least
/// `ℓ` factors in `K_i`; or unbounded.
///
/// Each factor is assigned to one index in the letter automaton. When the
/// `K_i` overlap, the returned bound is scaled to stay an upper bound.
pub fn counting_bound(r: &Nfa, tuple: &[Nfa]) -> Result<FactorBound> {
    if tuple.is_empty() {
        return Ok(FactorBound::Bounded(0));
    }
    for k in tuple {
        no_epsilon(k, "count")?;
    }
    let b = counting_letter_automaton(r, tuple)?;
    Ok(match simultaneous_unbounded(&b)? {
        FactorBound::Unbounded => FactorBound::Unbounded,
        FactorBound::Bounded(x) if pairwise_disjoint(tuple)? => FactorBound::Bounded(x),
        FactorBound::Bounded(x) => {
            let n = tuple.len() as u64;
            FactorBound::Bounded(
                n.checked_mul(x + 1)
                    .map(|v| v - 1)
                    .ok_or(Error::Overflow("counting bound"))?,
            )
        }
    })
}

pub fn predicate_counting(tuple: Vec<Nfa>) -> Result<Predicate> {
    for k in &tuple {
        no_epsilon(k, "count")?;
    }
    let n = tuple.len();
    Ok(Predicate::new("count", n.max(1), move |r| {
        Ok(counting_bound(r, &tuple)?.is_unbounded())
    }))
}
