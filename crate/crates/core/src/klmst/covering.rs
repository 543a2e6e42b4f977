//! Covering sequences: cycles at `m`, fireable from `init`, that pump every
//! place where `m` is ω and `init` is not, and leave the other places fixed.

use std::collections::{HashMap, VecDeque};

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::klmst::component::PrecoveringGraph;
use crate::klmst::karp_miller::{karp_miller, reaches_full_omega};
use crate::klmst::mgts::TransitionWord;
use crate::nets::{OmegaMarking, PetriNet};
use crate::numeric::OmegaNat;

/// Places that a covering sequence must strictly increase.
fn pumped_places(c: &PrecoveringGraph) -> Vec<usize> {
    let m = c.distinguished();
    (0..m.len())
        .filter(|&p| m[p].is_omega() && !c.init[p].is_omega())
        .collect()
}

/// Whether `u` is read on a cycle at `m`.
fn on_cycle(c: &PrecoveringGraph, u: &[usize]) -> bool {
    let mut cur = vec![c.m];
    for &t in u {
        let mut next: Vec<usize> = c
            .edges
            .iter()
            .filter(|e| e.transition == t && cur.contains(&e.from))
            .map(|e| e.to)
            .collect();
        next.sort_unstable();
        next.dedup();
        if next.is_empty() {
            return false;
        }
        cur = next;
    }
    cur.contains(&c.m)
}

fn fire_all(net: &PetriNet, start: &OmegaMarking, u: &[usize]) -> Option<OmegaMarking> {
    let mut cur = start.clone();
    for &t in u {
        cur = net.fire_omega(&cur, t)?;
    }
    Some(cur)
}

/// Checks the covering conditions for `u` exactly.
pub fn is_covering_sequence(net: &PetriNet, c: &PrecoveringGraph, u: &[usize]) -> Result<bool> {
    if !on_cycle(c, u) || fire_all(net, &c.init, u).is_none() {
        return Ok(false);
    }
    let delta = net.word_delta(u)?;
    let m = c.distinguished();
    Ok((0..m.len()).all(|p| {
        c.init[p].is_omega()
            || (m[p] == c.init[p] && delta[p] == 0)
            || (m[p].is_omega() && delta[p] > 0)
    }))
}

/// A shortest covering sequence, or `None` when none exists.
///
/// Existence is decided by the Karp–Miller graph; the witness is then found
/// by breadth-first search with token caps 1, 2, 4, … up to `max_token`.
pub fn covering_sequence(
    net: &PetriNet,
    c: &PrecoveringGraph,
    budgets: &Budgets,
) -> Result<Option<TransitionWord>> {
    let km = karp_miller(net, c, budgets.max_km_nodes)?;
    if !reaches_full_omega(c, &km) {
        return Ok(None);
    }
    let pumped = pumped_places(c);
    let mut cap = 1;
    loop {
        if let Some(u) = bfs_covering(net, c, &pumped, cap, budgets.max_states)? {
            if !is_covering_sequence(net, c, &u)? {
                return Err(Error::Internal("covering search returned an invalid word".into()));
            }
            return Ok(Some(u));
        }
        if cap >= budgets.max_token {
            return Err(Error::budget("max_token", budgets.max_token as usize)
                .with_context("covering sequence exists but needs larger markings"));
        }
        cap = (cap * 2).min(budgets.max_token);
    }
}

fn bfs_covering(
    net: &PetriNet,
    c: &PrecoveringGraph,
    pumped: &[usize],
    cap: u64,
    max_states: usize,
) -> Result<Option<TransitionWord>> {
    type Key = (usize, OmegaMarking);
    let done = |v: usize, mu: &OmegaMarking| {
        v == c.m && pumped.iter().all(|&p| mu[p] > c.init[p])
    };
    let start: Key = (c.m, c.init.clone());
    let mut parent: HashMap<Key, Option<(Key, usize)>> = HashMap::from([(start.clone(), None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(key) = queue.pop_front() {
        if done(key.0, &key.1) {
            let mut u = Vec::new();
            let mut cur = key;
            while let Some(Some((prev, t))) = parent.get(&cur) {
                u.push(*t);
                cur = prev.clone();
            }
            u.reverse();
            return Ok(Some(u));
        }
        for e in c.out_edges(key.0) {
            let Some(mu) = net.fire_omega(&key.1, e.transition) else {
                continue;
            };
            if mu.0.iter().any(|x| matches!(x, OmegaNat::Fin(k) if *k > cap)) {
                continue;
            }
            let k2 = (e.to, mu);
            if !parent.contains_key(&k2) {
                parent.insert(k2.clone(), Some((key.clone(), e.transition)));
                if parent.len() > max_states {
                    return Err(Error::budget("max_states", max_states)
                        .with_context("covering sequence search"));
                }
                queue.push_back(k2);
            }
        }
    }
    Ok(None)
}

/// `s^k v` for the least `k ≥ 1 + (largest drop of a prefix of v on an
/// ω-place of m)` that passes re-validation.
pub fn covering_with_suffix(
    net: &PetriNet,
    c: &PrecoveringGraph,
    s: &[usize],
    v: &[usize],
) -> Result<TransitionWord> {
    if !is_covering_sequence(net, c, s)? {
        return Err(Error::Precondition("s is not a covering sequence".into()));
    }
    if !on_cycle(c, v) {
        return Err(Error::Precondition("v is not in L(C)".into()));
    }
    let m = c.distinguished();
    let mut acc = vec![0i64; m.len()];
    let mut drop = 0i64;
    for &t in v {
        for (a, d) in acc.iter_mut().zip(net.delta(t)?) {
            *a += d;
        }
        for p in m.omega_places() {
            drop = drop.max(-acc[p]);
        }
    }
    let k0 = 1 + drop as usize;
    // Pre-conditions can exceed the net drop by at most the largest Pre entry.
    let max_pre = v
        .iter()
        .map(|&t| net.transitions()[t].pre.iter().copied().max().unwrap_or(0))
        .max()
        .unwrap_or(0) as usize;
    let limit = k0 + max_pre;
    for k in k0..=limit {
        let mut w = Vec::with_capacity(s.len() * k + v.len());
        for _ in 0..k {
            w.extend_from_slice(s);
        }
        w.extend_from_slice(v);
        if is_covering_sequence(net, c, &w)? {
            return Ok(w);
        }
    }
    Err(Error::Internal(format!(
        "no covering sequence s^k v with k ≤ {limit}"
    )))
}
