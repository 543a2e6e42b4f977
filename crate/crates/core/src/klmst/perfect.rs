use crate::budget::Budgets;
use crate::error::Result;
use crate::klmst::ces::{characteristic_system, CesVar};
use crate::klmst::karp_miller::{karp_miller, reaches_full_omega};
use crate::klmst::mgts::Mgts;
use crate::numeric::solve_nat;

/// Why an MGTS is not perfect. Bounded variables carry the exact set of
/// values they take over all solutions of the characteristic system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Defect {
    /// No forward covering sequence in this component.
    NoForwardCovering { component: usize },
    /// No covering sequence of the reversed component from `fin`.
    NoBackwardCovering { component: usize },
    /// The characteristic system has no natural solution: the language is empty.
    Unsolvable,
    BoundedEntry { component: usize, place: usize, values: Vec<u64> },
    BoundedExit { component: usize, place: usize, values: Vec<u64> },
    BoundedEdge { component: usize, edge: usize, values: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PerfectnessReport {
    Perfect,
    Imperfect(Defect),
}

impl PerfectnessReport {
    pub fn is_perfect(&self) -> bool {
        matches!(self, PerfectnessReport::Perfect)
    }
}

/// Checks, in order: forward covering sequences, backward covering
/// sequences, solvability of the characteristic system, and unboundedness of
/// every edge count and every ω entry/exit value.
pub fn is_perfect(m: &Mgts, budgets: &Budgets) -> Result<PerfectnessReport> {
    for (i, c) in m.components.iter().enumerate() {
        let km = karp_miller(&m.net, c, budgets.max_km_nodes)?;
        if !reaches_full_omega(c, &km) {
            return Ok(PerfectnessReport::Imperfect(Defect::NoForwardCovering { component: i }));
        }
    }
    let rev_net = m.net.reversed();
    for (i, c) in m.components.iter().enumerate() {
        let r = c.reversed();
        let km = karp_miller(&rev_net, &r, budgets.max_km_nodes)?;
        if !reaches_full_omega(&r, &km) {
            return Ok(PerfectnessReport::Imperfect(Defect::NoBackwardCovering { component: i }));
        }
    }
    let ces = characteristic_system(m)?;
    let sol = solve_nat(&ces.system, budgets.max_basis)?;
    if !sol.is_solvable() {
        return Ok(PerfectnessReport::Imperfect(Defect::Unsolvable));
    }
    let values = |x: usize, offset: u64| {
        let mut v: Vec<u64> = sol.particular.iter().map(|p| p[x] + offset).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    // Pinning entry/exit values first keeps the unfoldings small.
    for (x, var) in ces.vars.iter().enumerate() {
        if sol.unbounded(x) {
            continue;
        }
        match *var {
            CesVar::Entry { component, place } => {
                return Ok(PerfectnessReport::Imperfect(Defect::BoundedEntry {
                    component,
                    place,
                    values: values(x, 0),
                }))
            }
            CesVar::Exit { component, place, offset } => {
                return Ok(PerfectnessReport::Imperfect(Defect::BoundedExit {
                    component,
                    place,
                    values: values(x, offset),
                }))
            }
            CesVar::Edge { .. } => {}
        }
    }
    for (x, var) in ces.vars.iter().enumerate() {
        if let CesVar::Edge { component, edge } = *var {
            if !sol.unbounded(x) {
                return Ok(PerfectnessReport::Imperfect(Defect::BoundedEdge {
                    component,
                    edge,
                    values: values(x, 0),
                }));
            }
        }
    }
    Ok(PerfectnessReport::Perfect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klmst::mgts::initial_mgts;
    use crate::nets::fixtures;

    #[test]
    fn fixture_verdicts() {
        let b = Budgets::default();
        assert!(is_perfect(&initial_mgts(&fixtures::net_a()), &b).unwrap().is_perfect());
        assert_eq!(
            is_perfect(&initial_mgts(&fixtures::net_c()), &b).unwrap(),
            PerfectnessReport::Imperfect(Defect::NoForwardCovering { component: 0 })
        );
        assert_eq!(
            is_perfect(&initial_mgts(&fixtures::net_d()), &b).unwrap(),
            PerfectnessReport::Imperfect(Defect::NoForwardCovering { component: 0 })
        );
    }
}
