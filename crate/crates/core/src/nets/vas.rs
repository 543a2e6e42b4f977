use crate::error::{Error, Result};
use crate::nets::net::{LabeledPetriNet, Letter, Marking, PetriNet, Transition};

/// A labeled vector addition system: integer vectors, a source and a target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vas {
    pub dim: usize,
    pub transitions: Vec<(Vec<i64>, Option<Letter>)>,
    pub source: Vec<u64>,
    pub target: Vec<u64>,
}

impl Vas {
    pub fn new(
        dim: usize,
        transitions: Vec<(Vec<i64>, Option<Letter>)>,
        source: Vec<u64>,
        target: Vec<u64>,
    ) -> Result<Self> {
        if source.len() != dim || target.len() != dim {
            return Err(Error::Structure("source/target dimension mismatch".into()));
        }
        if let Some(i) = transitions.iter().position(|(v, _)| v.len() != dim) {
            return Err(Error::Structure(format!(
                "vector {i} has dimension {}, expected {dim}",
                transitions[i].0.len()
            )));
        }
        Ok(Vas {
            dim,
            transitions,
            source,
            target,
        })
    }

    /// Adds `v` to `x`, `None` if a coordinate would go negative.
    pub fn step(&self, x: &[u64], t: usize) -> Option<Vec<u64>> {
        let (v, _) = self.transitions.get(t)?;
        x.iter()
            .zip(v)
            .map(|(&a, &d)| {
                let r = a as i128 + d as i128;
                u64::try_from(r).ok()
            })
            .collect()
    }
}

/// Splits each vector into its negative part (Pre) and positive part (Post).
/// Places are named `p0, p1, …`, transitions `t0, t1, …`.
pub fn vas_to_net(v: &Vas) -> Result<LabeledPetriNet> {
    let places = (0..v.dim).map(|i| format!("p{i}")).collect();
    let mut transitions = Vec::with_capacity(v.transitions.len());
    let mut labels = Vec::with_capacity(v.transitions.len());
    for (i, (vec, label)) in v.transitions.iter().enumerate() {
        transitions.push(Transition {
            name: format!("t{i}"),
            pre: vec.iter().map(|&d| if d < 0 { d.unsigned_abs() } else { 0 }).collect(),
            post: vec.iter().map(|&d| if d > 0 { d as u64 } else { 0 }).collect(),
        });
        labels.push(label.clone());
    }
    LabeledPetriNet::new(
        PetriNet::new(places, transitions)?,
        labels,
        Marking(v.source.clone()),
        Marking(v.target.clone()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nets::fixtures;

    #[test]
    fn counter_vas_matches_net_a_structure() {
        let v = Vas::new(
            1,
            vec![(vec![1], Some("a".into())), (vec![-1], Some("b".into()))],
            vec![0],
            vec![0],
        )
        .unwrap();
        let n = vas_to_net(&v).unwrap();
        let a = fixtures::net_a();
        for (t, u) in n.net.transitions().iter().zip(a.net.transitions()) {
            assert_eq!((&t.pre, &t.post), (&u.pre, &u.post));
        }
        assert_eq!(n.labels, a.labels);
        assert_eq!(n.initial, a.initial);
        assert_eq!(n.final_marking, a.final_marking);
    }

    #[test]
    fn empty_vas_is_net_c() {
        let v = Vas::new(1, vec![], vec![0], vec![1]).unwrap();
        let n = vas_to_net(&v).unwrap();
        assert_eq!(n.net.transition_count(), 0);
        assert_eq!(n.final_marking, fixtures::net_c().final_marking);
    }

    #[test]
    fn dimension_checked() {
        assert!(Vas::new(2, vec![(vec![1], None)], vec![0, 0], vec![0, 0]).is_err());
    }
}
