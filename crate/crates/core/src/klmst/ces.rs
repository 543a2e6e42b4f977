//! The characteristic equation system of an MGTS.
//!
//! Unknowns: one count per edge of every component, the entry marking on
//! places where `init` is ω, and the exit marking on places where `fin` is ω.
//! Exit unknowns are stored minus the Pre of the following link, which makes
//! "the link is enabled" a nonnegativity constraint.

use crate::error::{Error, Result};
use crate::klmst::mgts::Mgts;
use crate::numeric::DiophSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CesVar {
    Edge { component: usize, edge: usize },
    Entry { component: usize, place: usize },
    /// Value in the system is `exit - offset`.
    Exit { component: usize, place: usize, offset: u64 },
}

#[derive(Debug, Clone)]
pub struct Ces {
    pub system: DiophSystem,
    pub vars: Vec<CesVar>,
}

/// A linear form over the unknowns plus a constant.
#[derive(Clone)]
struct Affine {
    coeffs: Vec<(usize, i64)>,
    constant: i64,
}

fn to_i64(x: u64) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow("characteristic system"))
}

pub fn characteristic_system(m: &Mgts) -> Result<Ces> {
    let places = m.net.place_count();
    let mut vars = Vec::new();
    let mut entry: Vec<Vec<Affine>> = Vec::new();
    let mut exit: Vec<Vec<Affine>> = Vec::new();
    let mut edge_var: Vec<Vec<usize>> = Vec::new();
    let mut rows: Vec<(Vec<(usize, i64)>, i64)> = Vec::new();

    for (i, c) in m.components.iter().enumerate() {
        edge_var.push(
            (0..c.edges.len())
                .map(|e| {
                    vars.push(CesVar::Edge { component: i, edge: e });
                    vars.len() - 1
                })
                .collect(),
        );
        let next_pre = m
            .links
            .get(i)
            .map(|&t| m.net.transitions()[t].pre.clone())
            .unwrap_or_else(|| vec![0; places]);
        let mut en = Vec::with_capacity(places);
        let mut ex = Vec::with_capacity(places);
        for (p, &pre) in next_pre.iter().enumerate() {
            en.push(match c.init[p].finite() {
                Some(v) => Affine { coeffs: vec![], constant: to_i64(v)? },
                None => {
                    vars.push(CesVar::Entry { component: i, place: p });
                    Affine { coeffs: vec![(vars.len() - 1, 1)], constant: 0 }
                }
            });
            ex.push(match c.fin[p].finite() {
                Some(v) => {
                    if v < pre {
                        // The next link can never fire: 0 = 1.
                        rows.push((vec![], 1));
                    }
                    Affine { coeffs: vec![], constant: to_i64(v)? }
                }
                None => {
                    vars.push(CesVar::Exit { component: i, place: p, offset: next_pre[p] });
                    Affine {
                        coeffs: vec![(vars.len() - 1, 1)],
                        constant: to_i64(next_pre[p])?,
                    }
                }
            });
        }
        entry.push(en);
        exit.push(ex);
    }

    for (i, c) in m.components.iter().enumerate() {
        // Flow balance at every vertex.
        for v in 0..c.vertices.len() {
            let mut coeffs = Vec::new();
            for (e, edge) in c.edges.iter().enumerate() {
                let x = edge_var[i][e];
                if edge.to == v && edge.from != v {
                    coeffs.push((x, 1));
                }
                if edge.from == v && edge.to != v {
                    coeffs.push((x, -1));
                }
            }
            if !coeffs.is_empty() {
                rows.push((coeffs, 0));
            }
        }
        // exit = entry + Σ count·Δ on the ω-places of m.
        for p in c.distinguished().omega_places() {
            let mut coeffs = exit[i][p].coeffs.clone();
            for &(x, a) in &entry[i][p].coeffs {
                coeffs.push((x, -a));
            }
            for (e, edge) in c.edges.iter().enumerate() {
                let d = m.net.transitions()[edge.transition].delta()[p];
                if d != 0 {
                    coeffs.push((edge_var[i][e], -d));
                }
            }
            let rhs = entry[i][p].constant - exit[i][p].constant;
            rows.push((coeffs, rhs));
        }
    }

    // entry_{i+1} = exit_i + Δ(t_{i+1})
    for (i, &t) in m.links.iter().enumerate() {
        let delta = m.net.transitions()[t].delta();
        for p in 0..places {
            let mut coeffs = entry[i + 1][p].coeffs.clone();
            for &(x, a) in &exit[i][p].coeffs {
                coeffs.push((x, -a));
            }
            let rhs = exit[i][p].constant + delta[p] - entry[i + 1][p].constant;
            if coeffs.is_empty() && rhs == 0 {
                continue;
            }
            rows.push((coeffs, rhs));
        }
    }

    let n = vars.len();
    let mut a = Vec::with_capacity(rows.len());
    let mut b = Vec::with_capacity(rows.len());
    for (coeffs, rhs) in rows {
        let mut row = vec![0i64; n];
        for (x, c) in coeffs {
            row[x] += c;
        }
        a.push(row);
        b.push(rhs);
    }
    Ok(Ces {
        system: DiophSystem::new(a, b, n)?,
        vars,
    })
}
