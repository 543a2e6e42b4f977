use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::numeric::OmegaNat;

/// A letter of the observable alphabet (or a transition name, when words
/// range over transitions).
pub type Letter = String;

/// A finite word; letters may be longer than one character.
pub type Word = Vec<Letter>;

/// Renders a word compactly: letters are concatenated when all of them are
/// single characters, otherwise separated by spaces. The empty word is `ε`.
pub fn show_word(w: &[Letter]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else if w.iter().all(|l| l.chars().count() == 1) {
        w.concat()
    } else {
        w.join(" ")
    }
}

/// Splits a compact word (`"abab"`) into single-character letters.
pub fn word(s: &str) -> Word {
    s.chars().map(|c| c.to_string()).collect()
}

/// Token counts indexed by place position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking(pub Vec<u64>);

impl Marking {
    pub fn zero(places: usize) -> Self {
        Marking(vec![0; places])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Marking) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn to_omega(&self) -> OmegaMarking {
        OmegaMarking(self.0.iter().map(|&v| OmegaNat::Fin(v)).collect())
    }

    /// `self ≤_ω m`: agrees with `m` wherever `m` is finite.
    pub fn le_omega(&self, m: &OmegaMarking) -> bool {
        self.0
            .iter()
            .zip(&m.0)
            .all(|(&a, &b)| OmegaNat::Fin(a).le_omega(b))
    }

    pub fn max_entry(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl Index<usize> for Marking {
    type Output = u64;
    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Marking {
    fn index_mut(&mut self, i: usize) -> &mut u64 {
        &mut self.0[i]
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A marking that may carry ω on some places.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaMarking(pub Vec<OmegaNat>);

impl OmegaMarking {
    pub fn all_omega(places: usize) -> Self {
        OmegaMarking(vec![OmegaNat::Omega; places])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn omega_count(&self) -> usize {
        self.0.iter().filter(|v| v.is_omega()).count()
    }

    pub fn omega_places(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_omega())
            .map(|(i, _)| i)
    }

    /// `self ≤_ω other`.
    pub fn le_omega(&self, other: &OmegaMarking) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a.le_omega(*b))
    }

    /// Componentwise order with ω as top.
    pub fn le(&self, other: &OmegaMarking) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Pointwise meet for `≤_ω`; `None` if two finite entries disagree.
    pub fn meet(&self, other: &OmegaMarking) -> Option<OmegaMarking> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.meet(*b))
            .collect::<Option<Vec<_>>>()
            .map(OmegaMarking)
    }

    /// The concrete marking, when no entry is ω.
    pub fn to_finite(&self) -> Option<Marking> {
        self.0
            .iter()
            .map(|v| v.finite())
            .collect::<Option<Vec<_>>>()
            .map(Marking)
    }
}

impl Index<usize> for OmegaMarking {
    type Output = OmegaNat;
    fn index(&self, i: usize) -> &OmegaNat {
        &self.0[i]
    }
}

impl IndexMut<usize> for OmegaMarking {
    fn index_mut(&mut self, i: usize) -> &mut OmegaNat {
        &mut self.0[i]
    }
}

impl fmt::Display for OmegaMarking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transition {
    pub name: String,
    pub pre: Vec<u64>,
    pub post: Vec<u64>,
}

impl Transition {
    pub fn delta(&self) -> Vec<i64> {
        self.post
            .iter()
            .zip(&self.pre)
            .map(|(&b, &a)| b as i64 - a as i64)
            .collect()
    }
}

/// Places, transitions and their Pre/Post vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PetriNet {
    places: Vec<String>,
    transitions: Vec<Transition>,
}

impl PetriNet {
    pub fn new(places: Vec<String>, transitions: Vec<Transition>) -> Result<Self> {
        let distinct: BTreeSet<&String> = places.iter().collect();
        if distinct.len() != places.len() {
            return Err(Error::Structure("duplicate place name".into()));
        }
        let names: BTreeSet<&String> = transitions.iter().map(|t| &t.name).collect();
        if names.len() != transitions.len() {
            return Err(Error::Structure("duplicate transition name".into()));
        }
        for t in &transitions {
            if t.pre.len() != places.len() || t.post.len() != places.len() {
                return Err(Error::Structure(format!(
                    "transition {} has Pre/Post of the wrong dimension",
                    t.name
                )));
            }
        }
        Ok(PetriNet {
            places,
            transitions,
        })
    }

    pub fn places(&self) -> &[String] {
        &self.places
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn place_count(&self) -> usize {
        self.places.len()
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn place_index(&self, name: &str) -> Option<usize> {
        self.places.iter().position(|p| p == name)
    }

    pub fn transition_index(&self, name: &str) -> Option<usize> {
        self.transitions.iter().position(|t| t.name == name)
    }

    pub fn transition(&self, t: usize) -> Result<&Transition> {
        self.transitions
            .get(t)
            .ok_or_else(|| Error::Structure(format!("unknown transition index {t}")))
    }

    pub fn delta(&self, t: usize) -> Result<Vec<i64>> {
        Ok(self.transition(t)?.delta())
    }

    /// Effect of a transition word.
    pub fn word_delta(&self, w: &[usize]) -> Result<Vec<i64>> {
        let mut d = vec![0i64; self.places.len()];
        for &t in w {
            for (acc, x) in d.iter_mut().zip(self.delta(t)?) {
                *acc += x;
            }
        }
        Ok(d)
    }

    /// Fires `t` at `m`; `Ok(None)` when `t` is not enabled.
    pub fn fire(&self, m: &Marking, t: usize) -> Result<Option<Marking>> {
        let tr = self.transition(t)?;
        if m.len() != self.places.len() {
            return Err(Error::Structure("marking dimension mismatch".into()));
        }
        if tr.pre.iter().zip(&m.0).any(|(p, v)| p > v) {
            return Ok(None);
        }
        Ok(Some(Marking(
            m.0.iter()
                .zip(tr.pre.iter().zip(&tr.post))
                .map(|(&v, (&a, &b))| v - a + b)
                .collect(),
        )))
    }

    /// Fires a whole transition word, `Ok(None)` if some step is blocked.
    pub fn fire_word(&self, m: &Marking, w: &[usize]) -> Result<Option<Marking>> {
        let mut cur = m.clone();
        for &t in w {
            match self.fire(&cur, t)? {
                Some(next) => cur = next,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    /// Fires `t` under ω-arithmetic; `None` when a finite place lacks tokens.
    pub fn fire_omega(&self, m: &OmegaMarking, t: usize) -> Option<OmegaMarking> {
        let tr = self.transitions.get(t)?;
        let mut out = Vec::with_capacity(m.len());
        for ((&v, &a), &b) in m.0.iter().zip(&tr.pre).zip(&tr.post) {
            if !v.covers(a) {
                return None;
            }
            out.push(v.offset(b as i64 - a as i64)?);
        }
        Some(OmegaMarking(out))
    }

    /// The net with Pre and Post swapped; its runs are the reversed runs of `self`.
    pub fn reversed(&self) -> PetriNet {
        PetriNet {
            places: self.places.clone(),
            transitions: self
                .transitions
                .iter()
                .map(|t| Transition {
                    name: t.name.clone(),
                    pre: t.post.clone(),
                    post: t.pre.clone(),
                })
                .collect(),
        }
    }
}

/// A Petri net with a labeling into `Σ ∪ {ε}` and initial/final markings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledPetriNet {
    pub net: PetriNet,
    pub labels: Vec<Option<Letter>>,
    pub initial: Marking,
    pub final_marking: Marking,
}

impl LabeledPetriNet {
    pub fn new(
        net: PetriNet,
        labels: Vec<Option<Letter>>,
        initial: Marking,
        final_marking: Marking,
    ) -> Result<Self> {
        if labels.len() != net.transition_count() {
            return Err(Error::Structure("labeling must be total".into()));
        }
        if initial.len() != net.place_count() || final_marking.len() != net.place_count() {
            return Err(Error::Structure(
                "initial/final marking dimension mismatch".into(),
            ));
        }
        Ok(LabeledPetriNet {
            net,
            labels,
            initial,
            final_marking,
        })
    }

    /// The letters used by the labeling, sorted.
    pub fn alphabet(&self) -> Vec<Letter> {
        let set: BTreeSet<&Letter> = self.labels.iter().flatten().collect();
        set.into_iter().cloned().collect()
    }

    pub fn label(&self, t: usize) -> Option<&Letter> {
        self.labels.get(t).and_then(Option::as_ref)
    }

    /// Applies the labeling morphism to a transition word.
    pub fn label_word(&self, w: &[usize]) -> Word {
        w.iter().filter_map(|&t| self.label(t).cloned()).collect()
    }

    pub fn transition_names(&self) -> Vec<String> {
        self.net.transitions().iter().map(|t| t.name.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nets::fixtures;

    #[test]
    fn fire_net_a() {
        let n = fixtures::net_a();
        let ta = n.net.transition_index("ta").unwrap();
        let tb = n.net.transition_index("tb").unwrap();
        assert_eq!(n.net.fire(&Marking(vec![0]), ta).unwrap(), Some(Marking(vec![1])));
        assert_eq!(n.net.fire(&Marking(vec![0]), tb).unwrap(), None);
        assert_eq!(n.net.fire(&Marking(vec![1]), tb).unwrap(), Some(Marking(vec![0])));
    }

    #[test]
    fn unknown_transition_is_structural() {
        let n = fixtures::net_a();
        assert!(matches!(
            n.net.fire(&Marking(vec![0]), 7),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn omega_firing() {
        let n = fixtures::net_a();
        let tb = n.net.transition_index("tb").unwrap();
        assert_eq!(
            n.net.fire_omega(&OmegaMarking::all_omega(1), tb),
            Some(OmegaMarking::all_omega(1))
        );
        assert_eq!(n.net.fire_omega(&Marking(vec![0]).to_omega(), tb), None);
    }

    #[test]
    fn reversal_swaps_pre_and_post() {
        let n = fixtures::net_a();
        let r = n.net.reversed();
        let ta = r.transition_index("ta").unwrap();
        assert_eq!(r.fire(&Marking(vec![0]), ta).unwrap(), None);
        assert_eq!(r.fire(&Marking(vec![1]), ta).unwrap(), Some(Marking(vec![0])));
    }

    #[test]
    fn show_word_forms() {
        assert_eq!(show_word(&word("abab")), "abab");
        assert_eq!(show_word(&[]), "ε");
        assert_eq!(show_word(&["ta".to_string(), "tb".to_string()]), "ta tb");
    }
}
