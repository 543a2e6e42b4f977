//! Splitting an imperfect MGTS into finitely many MGTS with the same total
//! language and strictly smaller rank.

use std::collections::{BTreeMap, BTreeSet};

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::klmst::component::{Edge, PrecoveringGraph};
use crate::klmst::karp_miller::karp_miller;
use crate::klmst::mgts::Mgts;
use crate::klmst::perfect::Defect;
use crate::nets::OmegaMarking;
use crate::numeric::OmegaNat;

/// A graph whose vertices carry ω-markings; a component or a Karp–Miller graph.
struct LabeledGraph<'a> {
    labels: &'a [OmegaMarking],
    edges: &'a [Edge],
}

/// A chain `piece_0, link_1, piece_1, …` where each piece is
/// `(vertex set, distinguished vertex)` in the underlying graph.
#[derive(Clone, Debug)]
struct Chain {
    pieces: Vec<(Vec<usize>, usize)>,
    links: Vec<usize>,
}

impl Chain {
    fn then(mut self, link: usize, other: &Chain) -> Chain {
        self.links.push(link);
        self.links.extend_from_slice(&other.links);
        self.pieces.extend(other.pieces.iter().cloned());
        self
    }
}

impl LabeledGraph<'_> {
    /// The strongly connected component of `a` in the subgraph induced by `allowed`.
    fn scc_of(&self, allowed: &BTreeSet<usize>, a: usize) -> Vec<usize> {
        let reach = |forward: bool| {
            let mut seen = BTreeSet::from([a]);
            let mut stack = vec![a];
            while let Some(v) = stack.pop() {
                for e in self.edges {
                    let (from, to) = if forward { (e.from, e.to) } else { (e.to, e.from) };
                    if from == v && allowed.contains(&to) && seen.insert(to) {
                        stack.push(to);
                    }
                }
            }
            seen
        };
        let fwd = reach(true);
        reach(false).intersection(&fwd).copied().collect()
    }

    /// Every path `a → b` inside `allowed`, grouped by the last visit to each
    /// vertex it leaves for good.
    fn paths(&self, allowed: &BTreeSet<usize>, a: usize, b: usize) -> Vec<Chain> {
        let piece = (self.scc_of(allowed, a), a);
        if a == b {
            return vec![Chain { pieces: vec![piece], links: vec![] }];
        }
        let mut rest = allowed.clone();
        rest.remove(&a);
        let mut out = Vec::new();
        let steps: BTreeSet<(usize, usize)> = self
            .edges
            .iter()
            .filter(|e| e.from == a && e.to != a && rest.contains(&e.to))
            .map(|e| (e.transition, e.to))
            .collect();
        for (t, x) in steps {
            for tail in self.paths(&rest, x, b) {
                let head = Chain { pieces: vec![piece.clone()], links: vec![] };
                out.push(head.then(t, &tail));
            }
        }
        out
    }

    fn component(
        &self,
        vertices: &[usize],
        m: usize,
        init: OmegaMarking,
        fin: OmegaMarking,
    ) -> PrecoveringGraph {
        let index: BTreeMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut c = PrecoveringGraph {
            vertices: vertices.iter().map(|&v| self.labels[v].clone()).collect(),
            edges: self
                .edges
                .iter()
                .filter_map(|e| {
                    Some(Edge {
                        from: *index.get(&e.from)?,
                        transition: e.transition,
                        to: *index.get(&e.to)?,
                    })
                })
                .collect(),
            m: index[&m],
            init,
            fin,
        };
        c.sort_edges();
        c
    }

    /// Components for a chain, entering with `init` and leaving with `fin`.
    /// Inner boundaries are constrained only by the vertex labels.
    fn components(
        &self,
        chain: &Chain,
        init: &OmegaMarking,
        fin: &OmegaMarking,
    ) -> Vec<PrecoveringGraph> {
        let last = chain.pieces.len() - 1;
        chain
            .pieces
            .iter()
            .enumerate()
            .map(|(i, (vs, m))| {
                let label = &self.labels[*m];
                let ci = if i == 0 { init.clone() } else { label.clone() };
                let cf = if i == last { fin.clone() } else { label.clone() };
                self.component(vs, *m, ci, cf)
            })
            .collect()
    }
}

/// `m` with component `i` replaced by `chain`.
fn splice(m: &Mgts, i: usize, pieces: Vec<PrecoveringGraph>, links: &[usize]) -> Mgts {
    let mut components = m.components[..i].to_vec();
    components.extend(pieces);
    components.extend_from_slice(&m.components[i + 1..]);
    let mut all_links = m.links[..i].to_vec();
    all_links.extend_from_slice(links);
    all_links.extend_from_slice(&m.links[i..]);
    Mgts {
        net: m.net.clone(),
        components,
        links: all_links,
    }
}

/// Replaces component `i` by the Karp–Miller unfolding of its runs from `init`.
fn split_coverability(m: &Mgts, i: usize, budgets: &Budgets) -> Result<Vec<Mgts>> {
    let c = &m.components[i];
    let km = karp_miller(&m.net, c, budgets.max_km_nodes)?;
    let labels = km.labels();
    let g = LabeledGraph {
        labels: &labels,
        edges: &km.edges,
    };
    let all: BTreeSet<usize> = (0..labels.len()).collect();
    let mut out = Vec::new();
    for (b, (v, mu)) in km.nodes.iter().enumerate() {
        if *v != c.m {
            continue;
        }
        let Some(fin) = c.fin.meet(mu) else {
            continue;
        };
        for chain in g.paths(&all, 0, b) {
            let pieces = g.components(&chain, &c.init, &fin);
            out.push(splice(m, i, pieces, &chain.links));
        }
    }
    Ok(out)
}

fn pin(m: &Mgts, i: usize, place: usize, values: &[u64], entry: bool) -> Vec<Mgts> {
    values
        .iter()
        .map(|&v| {
            let mut out = m.clone();
            let c = &mut out.components[i];
            let target = if entry { &mut c.init } else { &mut c.fin };
            target[place] = OmegaNat::Fin(v);
            out
        })
        .collect()
}

/// Replaces component `i` by chains that use edge `e` exactly `c` times.
fn unfold(m: &Mgts, i: usize, e: usize, counts: &[u64]) -> Vec<Mgts> {
    let comp = &m.components[i];
    let edge = comp.edges[e];
    let rest: Vec<Edge> = comp
        .edges
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != e)
        .map(|(_, x)| *x)
        .collect();
    let g = LabeledGraph {
        labels: &comp.vertices,
        edges: &rest,
    };
    let all: BTreeSet<usize> = (0..comp.vertices.len()).collect();
    let mut out = Vec::new();
    for &count in counts {
        let chains = if count == 0 {
            g.paths(&all, comp.m, comp.m)
        } else {
            let head = g.paths(&all, comp.m, edge.from);
            let mid = g.paths(&all, edge.to, edge.from);
            let tail = g.paths(&all, edge.to, comp.m);
            let mut acc = head;
            for _ in 1..count {
                acc = acc
                    .iter()
                    .flat_map(|a| mid.iter().map(move |b| a.clone().then(edge.transition, b)))
                    .collect();
            }
            acc.iter()
                .flat_map(|a| tail.iter().map(move |b| a.clone().then(edge.transition, b)))
                .collect()
        };
        for chain in chains {
            let pieces = g.components(&chain, &comp.init, &comp.fin);
            out.push(splice(m, i, pieces, &chain.links));
        }
    }
    out
}

/// Strict multiset order on ranks; both inputs sorted descending.
pub(crate) fn multiset_less(small: &[(usize, usize, usize)], big: &[(usize, usize, usize)]) -> bool {
    let mut count: BTreeMap<(usize, usize, usize), i64> = BTreeMap::new();
    for &r in small {
        *count.entry(r).or_default() += 1;
    }
    for &r in big {
        *count.entry(r).or_default() -= 1;
    }
    let added: Vec<_> = count.iter().filter(|(_, &n)| n > 0).map(|(r, _)| *r).collect();
    let removed: Vec<_> = count.iter().filter(|(_, &n)| n < 0).map(|(r, _)| *r).collect();
    !removed.is_empty() && added.iter().all(|a| removed.iter().any(|r| r > a))
}

/// Applies the rule matching `defect` and returns MGTS whose languages union
/// to `L(m)`. Each result has strictly smaller rank than `m`.
pub fn refine(m: &Mgts, defect: &Defect, budgets: &Budgets) -> Result<Vec<Mgts>> {
    let mut out = match defect {
        Defect::NoForwardCovering { component } => split_coverability(m, *component, budgets)?,
        Defect::NoBackwardCovering { component } => {
            let rev = m.reversed();
            let j = m.components.len() - 1 - component;
            split_coverability(&rev, j, budgets)?
                .iter()
                .map(Mgts::reversed)
                .collect()
        }
        Defect::Unsolvable => Vec::new(),
        Defect::BoundedEntry { component, place, values } => {
            pin(m, *component, *place, values, true)
        }
        Defect::BoundedExit { component, place, values } => {
            pin(m, *component, *place, values, false)
        }
        Defect::BoundedEdge { component, edge, values } => unfold(m, *component, *edge, values),
    };
    let rank = m.rank();
    for child in &out {
        if !multiset_less(&child.rank(), &rank) {
            return Err(Error::Internal(format!(
                "refinement did not decrease the rank: {:?} -> {:?}",
                rank,
                child.rank()
            )));
        }
    }
    out.sort_by_key(|x| x.dump());
    out.dedup();
    Ok(out)
}
