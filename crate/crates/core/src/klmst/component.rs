use std::collections::BTreeSet;

use crate::automata::Nfa;
use crate::error::{Error, Result};
use crate::nets::{OmegaMarking, PetriNet};

/// A graph edge `from --transition--> to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub transition: usize,
    pub to: usize,
}

/// A strongly connected graph whose vertices carry ω-markings, with a
/// distinguished vertex `m` and entry/exit constraints `init`, `fin`.
///
/// Vertices are identified by index; two vertices may carry equal markings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrecoveringGraph {
    pub vertices: Vec<OmegaMarking>,
    pub edges: Vec<Edge>,
    pub m: usize,
    pub init: OmegaMarking,
    pub fin: OmegaMarking,
}

impl PrecoveringGraph {
    pub fn distinguished(&self) -> &OmegaMarking {
        &self.vertices[self.m]
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.from == v)
    }

    /// Checks strong connectivity, edge consistency and `init, fin ≤_ω m`.
    pub fn validate(&self, net: &PetriNet) -> Result<()> {
        let n = self.vertices.len();
        if self.m >= n {
            return Err(Error::Structure("distinguished vertex out of range".into()));
        }
        let places = net.place_count();
        if self.vertices.iter().any(|v| v.len() != places)
            || self.init.len() != places
            || self.fin.len() != places
        {
            return Err(Error::Structure("marking dimension mismatch in component".into()));
        }
        for e in &self.edges {
            if e.from >= n || e.to >= n {
                return Err(Error::Structure("edge endpoint out of range".into()));
            }
            net.transition(e.transition)?;
            let m3 = net.fire_omega(&self.vertices[e.from], e.transition).ok_or_else(|| {
                Error::Structure(format!(
                    "transition {} not fireable at vertex {}",
                    net.transitions()[e.transition].name,
                    self.vertices[e.from]
                ))
            })?;
            if !m3.le_omega(&self.vertices[e.to]) {
                return Err(Error::Structure(format!(
                    "edge {} -{}-> {} is inconsistent",
                    self.vertices[e.from],
                    net.transitions()[e.transition].name,
                    self.vertices[e.to]
                )));
            }
        }
        let m = self.distinguished();
        if !self.init.le_omega(m) || !self.fin.le_omega(m) {
            return Err(Error::Structure("init/fin not below the distinguished vertex".into()));
        }
        let comps = crate::graph::sccs(n, |v| self.out_edges(v).map(|e| e.to).collect());
        if comps.len() != 1 {
            return Err(Error::Structure("component graph is not strongly connected".into()));
        }
        Ok(())
    }

    /// Edges reversed, `init` and `fin` swapped.
    pub fn reversed(&self) -> PrecoveringGraph {
        PrecoveringGraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    from: e.to,
                    transition: e.transition,
                    to: e.from,
                })
                .collect(),
            m: self.m,
            init: self.fin.clone(),
            fin: self.init.clone(),
        }
    }

    /// `(ω-count of m, number of edges, ω-count of init and fin)`.
    pub fn rank(&self) -> (usize, usize, usize) {
        (
            self.distinguished().omega_count(),
            self.edges.len(),
            self.init.omega_count() + self.fin.omega_count(),
        )
    }

    pub(crate) fn sort_edges(&mut self) {
        let set: BTreeSet<Edge> = self.edges.iter().copied().collect();
        self.edges = set.into_iter().collect();
    }
}

/// Words over transition names read on paths `from → to`.
pub fn component_language(
    net: &PetriNet,
    c: &PrecoveringGraph,
    from: usize,
    to: usize,
) -> Result<Nfa> {
    if from >= c.vertices.len() || to >= c.vertices.len() {
        return Err(Error::Structure("vertex out of range".into()));
    }
    let names: Vec<&str> = net.transitions().iter().map(|t| t.name.as_str()).collect();
    let mut a = Nfa::new(&names);
    for _ in 0..c.vertices.len() {
        a.add_state();
    }
    for e in &c.edges {
        a.add_edge(e.from, Some(&net.transitions()[e.transition].name), e.to)?;
    }
    a.set_initial(from)?;
    a.set_final(to)?;
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nets::fixtures;
    use crate::numeric::OmegaNat;

    fn omega1() -> OmegaMarking {
        OmegaMarking(vec![OmegaNat::Omega])
    }

    fn zero1() -> OmegaMarking {
        OmegaMarking(vec![OmegaNat::Fin(0)])
    }

    fn names(a: &Nfa, n: usize) -> Vec<String> {
        a.enumerate(n).iter().map(|w| w.join(" ")).collect()
    }

    #[test]
    fn single_vertex_languages() {
        let net = fixtures::net_a().net;
        let loops = PrecoveringGraph {
            vertices: vec![omega1()],
            edges: vec![
                Edge { from: 0, transition: 0, to: 0 },
                Edge { from: 0, transition: 1, to: 0 },
            ],
            m: 0,
            init: zero1(),
            fin: zero1(),
        };
        loops.validate(&net).unwrap();
        let l = component_language(&net, &loops, 0, 0).unwrap();
        assert_eq!(l.count_by_length(3), vec![1, 2, 4, 8]);

        let bare = PrecoveringGraph { edges: vec![], ..loops };
        assert_eq!(names(&component_language(&net, &bare, 0, 0).unwrap(), 3), vec![""]);
    }

    #[test]
    fn two_vertex_cycle() {
        let net = fixtures::net_a().net;
        let c = PrecoveringGraph {
            vertices: vec![zero1(), OmegaMarking(vec![OmegaNat::Fin(1)])],
            edges: vec![
                Edge { from: 0, transition: 0, to: 1 },
                Edge { from: 1, transition: 1, to: 0 },
            ],
            m: 0,
            init: zero1(),
            fin: zero1(),
        };
        c.validate(&net).unwrap();
        assert_eq!(
            names(&component_language(&net, &c, 0, 0).unwrap(), 4),
            vec!["", "ta tb", "ta tb ta tb"]
        );
    }

    #[test]
    fn inconsistent_edge_rejected() {
        let net = fixtures::net_a().net;
        let c = PrecoveringGraph {
            vertices: vec![zero1()],
            edges: vec![Edge { from: 0, transition: 0, to: 0 }],
            m: 0,
            init: zero1(),
            fin: zero1(),
        };
        assert!(c.validate(&net).is_err());
    }
}
