use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::klmst::component::{Edge, PrecoveringGraph};
use crate::nets::{LabeledPetriNet, Marking, OmegaMarking, PetriNet};

/// A marked graph-transition sequence `C_0, t_1, C_1, …, t_n, C_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mgts {
    pub net: PetriNet,
    pub components: Vec<PrecoveringGraph>,
    pub links: Vec<usize>,
}

/// Transition words are sequences of transition indices.
pub type TransitionWord = Vec<usize>;

impl Mgts {
    pub fn validate(&self) -> Result<()> {
        if self.components.is_empty() || self.links.len() + 1 != self.components.len() {
            return Err(Error::Structure(format!(
                "{} components but {} links",
                self.components.len(),
                self.links.len()
            )));
        }
        for c in &self.components {
            c.validate(&self.net)?;
        }
        for &t in &self.links {
            self.net.transition(t)?;
        }
        Ok(())
    }

    /// The same runs read backwards, as an MGTS of the reversed net.
    pub fn reversed(&self) -> Mgts {
        Mgts {
            net: self.net.reversed(),
            components: self.components.iter().rev().map(|c| c.reversed()).collect(),
            links: self.links.iter().rev().copied().collect(),
        }
    }

    /// Per-component ranks, sorted descending (a multiset).
    pub fn rank(&self) -> Vec<(usize, usize, usize)> {
        let mut r: Vec<_> = self.components.iter().map(|c| c.rank()).collect();
        r.sort_unstable_by(|a, b| b.cmp(a));
        r
    }

    /// Diagnostic text dump; ω is printed as `w`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                let _ = writeln!(out, "link {}", self.net.transitions()[self.links[i - 1]].name);
            }
            let _ = writeln!(out, "component {i}");
            for (j, v) in c.vertices.iter().enumerate() {
                let _ = writeln!(out, "  vertex v{j} {v}");
            }
            for e in &c.edges {
                let _ = writeln!(
                    out,
                    "  v{} -{}-> v{}",
                    e.from,
                    self.net.transitions()[e.transition].name,
                    e.to
                );
            }
            let _ = writeln!(out, "  m={}", c.distinguished());
            let _ = writeln!(out, "  init={}", c.init);
            let _ = writeln!(out, "  fin={}", c.fin);
        }
        out
    }
}

/// One all-ω vertex with a self-loop per transition, from `M_I` to `M_F`.
pub fn initial_mgts(n: &LabeledPetriNet) -> Mgts {
    let places = n.net.place_count();
    let c = PrecoveringGraph {
        vertices: vec![OmegaMarking::all_omega(places)],
        edges: (0..n.net.transition_count())
            .map(|t| Edge {
                from: 0,
                transition: t,
                to: 0,
            })
            .collect(),
        m: 0,
        init: n.initial.to_omega(),
        fin: n.final_marking.to_omega(),
    };
    Mgts {
        net: n.net.clone(),
        components: vec![c],
        links: vec![],
    }
}

/// Membership of a transition word in `L(m)`.
///
/// The concrete marking after each prefix is determined by the word, so the
/// search only tracks (position, component, vertex).
pub fn mgts_member(m: &Mgts, w: &[usize]) -> Result<bool> {
    let Some(start) = m.components[0].init.to_finite() else {
        return Ok(false);
    };
    // markings[i] = marking after the first i letters
    let mut markings: Vec<Marking> = vec![start];
    for &t in w {
        match m.net.fire(markings.last().expect("nonempty"), t)? {
            Some(next) => markings.push(next),
            None => return Ok(false),
        }
    }
    let last = m.components.len() - 1;
    let mut seen: HashSet<(usize, usize, usize)> = HashSet::new();
    let mut stack = Vec::new();
    if markings[0].le_omega(&m.components[0].init) {
        let s = (0, 0, m.components[0].m);
        seen.insert(s);
        stack.push(s);
    }
    while let Some((pos, ci, v)) = stack.pop() {
        let c = &m.components[ci];
        let mut push = |s: (usize, usize, usize), stack: &mut Vec<_>| {
            if seen.insert(s) {
                stack.push(s);
            }
        };
        if v == c.m && markings[pos].le_omega(&c.fin) {
            if ci == last {
                if pos == w.len() {
                    return Ok(true);
                }
            } else if pos < w.len() && w[pos] == m.links[ci] {
                let next = &m.components[ci + 1];
                if markings[pos + 1].le_omega(&next.init) {
                    push((pos + 1, ci + 1, next.m), &mut stack);
                }
            }
        }
        if pos < w.len() {
            for e in c.out_edges(v) {
                if e.transition == w[pos] {
                    push((pos + 1, ci, e.to), &mut stack);
                }
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nets::{enumerate_language, fixtures};

    fn tw(n: &LabeledPetriNet, names: &[&str]) -> Vec<usize> {
        names.iter().map(|s| n.net.transition_index(s).unwrap()).collect()
    }

    #[test]
    fn initial_shapes() {
        let a = initial_mgts(&fixtures::net_a());
        assert_eq!(a.components.len(), 1);
        assert_eq!(a.components[0].edges.len(), 2);
        a.validate().unwrap();
        let c = initial_mgts(&fixtures::net_c());
        assert!(c.components[0].edges.is_empty());
        assert_eq!(c.components[0].init.to_string(), "(0)");
        assert_eq!(c.components[0].fin.to_string(), "(1)");
    }

    #[test]
    fn membership() {
        let n = fixtures::net_a();
        let m = initial_mgts(&n);
        assert!(mgts_member(&m, &tw(&n, &["ta", "tb"])).unwrap());
        assert!(!mgts_member(&m, &tw(&n, &["tb"])).unwrap());
        let c = initial_mgts(&fixtures::net_c());
        assert!(!mgts_member(&c, &[]).unwrap());
    }

    #[test]
    fn initial_mgts_language_is_net_language() {
        let n = fixtures::net_a();
        let m = initial_mgts(&n);
        let lang: HashSet<Vec<String>> = enumerate_language(&n, 5, 8, 100_000)
            .unwrap()
            .words
            .into_iter()
            .collect();
        // every transition word up to length 5
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for len in 0..5 {
            let layer: Vec<Vec<usize>> = words.iter().filter(|w| w.len() == len).cloned().collect();
            for w in layer {
                for t in 0..2 {
                    let mut w2 = w.clone();
                    w2.push(t);
                    words.push(w2);
                }
            }
        }
        for w in words {
            let member = mgts_member(&m, &w).unwrap();
            let fires = n.net.fire_word(&n.initial, &w).unwrap() == Some(n.final_marking.clone());
            assert_eq!(member, fires, "{w:?}");
            if member {
                assert!(lang.contains(&n.label_word(&w)));
            }
        }
    }

    #[test]
    fn reversal_is_an_involution() {
        let m = initial_mgts(&fixtures::net_b());
        assert_eq!(m.reversed().reversed(), m);
        m.reversed().validate().unwrap();
    }
}
