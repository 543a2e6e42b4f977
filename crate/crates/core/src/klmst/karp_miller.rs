//! Karp–Miller coverability restricted to the paths of a component graph.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::klmst::component::{Edge, PrecoveringGraph};
use crate::nets::{OmegaMarking, PetriNet};
use crate::numeric::OmegaNat;

/// Nodes pair a component vertex with an ω-marking; node 0 is the root
/// `(m, init)`. Identical nodes are merged, so this is a graph, not a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmGraph {
    pub nodes: Vec<(usize, OmegaMarking)>,
    pub edges: Vec<Edge>,
}

impl KmGraph {
    pub fn labels(&self) -> Vec<OmegaMarking> {
        self.nodes.iter().map(|(_, mu)| mu.clone()).collect()
    }
}

/// Builds the coverability graph of `c` from `(c.m, c.init)`.
///
/// A successor that strictly dominates an ancestor at the same vertex is
/// accelerated: its strictly larger places become ω.
pub fn karp_miller(net: &PetriNet, c: &PrecoveringGraph, max_nodes: usize) -> Result<KmGraph> {
    let root = (c.m, c.init.clone());
    let mut nodes = vec![root.clone()];
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut index: HashMap<(usize, OmegaMarking), usize> = HashMap::from([(root, 0)]);
    let mut edges = Vec::new();
    let mut stack = vec![0];
    while let Some(n) = stack.pop() {
        let (v, mu) = nodes[n].clone();
        for e in c.out_edges(v) {
            let Some(mut next) = net.fire_omega(&mu, e.transition) else {
                continue;
            };
            let mut anc = Some(n);
            while let Some(a) = anc {
                let (av, amu) = &nodes[a];
                if *av == e.to && amu.le(&next) && *amu != next {
                    for p in 0..next.len() {
                        if amu[p] < next[p] {
                            next[p] = OmegaNat::Omega;
                        }
                    }
                }
                anc = parent[a];
            }
            let key = (e.to, next);
            let target = match index.get(&key) {
                Some(&t) => t,
                None => {
                    if nodes.len() >= max_nodes {
                        return Err(Error::budget("max_km_nodes", max_nodes)
                            .with_context("Karp–Miller graph of a component"));
                    }
                    nodes.push(key.clone());
                    parent.push(Some(n));
                    index.insert(key, nodes.len() - 1);
                    stack.push(nodes.len() - 1);
                    nodes.len() - 1
                }
            };
            let edge = Edge {
                from: n,
                transition: e.transition,
                to: target,
            };
            if !edges.contains(&edge) {
                edges.push(edge);
            }
        }
    }
    Ok(KmGraph { nodes, edges })
}

/// Whether some node at the distinguished vertex carries ω on every place
/// where the distinguished vertex does.
pub fn reaches_full_omega(c: &PrecoveringGraph, km: &KmGraph) -> bool {
    let target = c.distinguished().omega_count();
    km.nodes
        .iter()
        .any(|(v, mu)| *v == c.m && mu.omega_count() == target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klmst::mgts::initial_mgts;
    use crate::nets::fixtures;

    #[test]
    fn counter_gets_accelerated() {
        let n = fixtures::net_a();
        let m = initial_mgts(&n);
        let km = karp_miller(&n.net, &m.components[0], 100).unwrap();
        assert!(km.nodes.iter().any(|(_, mu)| mu.to_string() == "(w)"));
        assert!(reaches_full_omega(&m.components[0], &km));
    }

    #[test]
    fn zero_effect_loop_stays_finite() {
        let n = fixtures::net_d();
        let m = initial_mgts(&n);
        let km = karp_miller(&n.net, &m.components[0], 100).unwrap();
        assert_eq!(km.nodes.len(), 1);
        assert_eq!(km.edges.len(), 1);
        assert!(!reaches_full_omega(&m.components[0], &km));
    }

    #[test]
    fn phases_of_net_b() {
        let n = fixtures::net_b();
        let m = initial_mgts(&n);
        let km = karp_miller(&n.net, &m.components[0], 100).unwrap();
        let mut shown: Vec<String> = km.nodes.iter().map(|(_, mu)| mu.to_string()).collect();
        shown.sort();
        assert_eq!(shown, vec!["(0,0,1)", "(0,1,0)", "(w,0,1)", "(w,1,0)"]);
    }

    #[test]
    fn node_budget() {
        let n = fixtures::net_b();
        let m = initial_mgts(&n);
        assert!(karp_miller(&n.net, &m.components[0], 2).unwrap_err().is_budget());
    }
}
