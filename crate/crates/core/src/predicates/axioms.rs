use crate::automata::Nfa;
use crate::error::{Error, Result};
use crate::predicates::Predicate;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    /// `"i"`, `"ii"` or `"iii"`.
    pub axiom: &'static str,
    /// Index of the offending sample pair.
    pub sample: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checked: usize,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Tests the three one-dimensional axioms on sample pairs `(K, L)`:
/// monotonicity `p(K) ⇒ p(K ∪ L)`, and that `p` on `K ∪ L` or on `KL`
/// implies `p(K) ∨ p(L)`.
pub fn axiom_check_1dim(p: &Predicate, samples: &[(Nfa, Nfa)]) -> Result<AxiomReport> {
    if p.dimension() != 1 {
        return Err(Error::Precondition(format!(
            "axiom_check_1dim needs a 1-dimensional predicate, `{}` has dimension {}",
            p.name(),
            p.dimension()
        )));
    }
    let mut report = AxiomReport::default();
    for (i, (k, l)) in samples.iter().enumerate() {
        let (k, l) = Nfa::align(k, l);
        let pk = p.decide_regular(&k)?;
        let pl = p.decide_regular(&l)?;
        let union = p.decide_regular(&k.union(&l)?)?;
        let concat = p.decide_regular(&k.concat(&l)?)?;
        report.checked += 1;
        if pk && !union {
            report.failures.push(AxiomFailure { axiom: "i", sample: i });
        }
        if union && !(pk || pl) {
            report.failures.push(AxiomFailure { axiom: "ii", sample: i });
        }
        if concat && !(pk || pl) {
            report.failures.push(AxiomFailure { axiom: "iii", sample: i });
        }
    }
    Ok(report)
}
