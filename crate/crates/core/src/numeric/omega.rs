use std::cmp::Ordering;
use std::fmt;

/// A natural number or the symbolic value ω.
///
/// Arithmetic with a finite offset leaves ω unchanged: `ω + k = ω - k = ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OmegaNat {
    Fin(u64),
    Omega,
}

pub use OmegaNat::Omega;

impl OmegaNat {
    pub const ZERO: OmegaNat = OmegaNat::Fin(0);

    pub fn is_omega(self) -> bool {
        matches!(self, OmegaNat::Omega)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            OmegaNat::Fin(n) => Some(n),
            OmegaNat::Omega => None,
        }
    }

    /// Adds a signed offset. Returns `None` when a finite value would drop below zero.
    pub fn offset(self, delta: i64) -> Option<OmegaNat> {
        match self {
            OmegaNat::Omega => Some(OmegaNat::Omega),
            OmegaNat::Fin(n) => {
                let v = n as i128 + delta as i128;
                if v < 0 {
                    None
                } else {
                    Some(OmegaNat::Fin(v as u64))
                }
            }
        }
    }

    /// `self >= k` with ω dominating every natural.
    pub fn covers(self, k: u64) -> bool {
        match self {
            OmegaNat::Omega => true,
            OmegaNat::Fin(n) => n >= k,
        }
    }

    /// The ω-refinement order: `u ≤_ω v` iff `u = v` or `v = ω`.
    pub fn le_omega(self, other: OmegaNat) -> bool {
        other.is_omega() || self == other
    }

    /// Greatest lower bound for `≤_ω`; `None` when two different finite values meet.
    pub fn meet(self, other: OmegaNat) -> Option<OmegaNat> {
        match (self, other) {
            (OmegaNat::Omega, x) | (x, OmegaNat::Omega) => Some(x),
            (OmegaNat::Fin(a), OmegaNat::Fin(b)) if a == b => Some(OmegaNat::Fin(a)),
            _ => None,
        }
    }
}

impl From<u64> for OmegaNat {
    fn from(n: u64) -> Self {
        OmegaNat::Fin(n)
    }
}

/// The usual order on ℕ ∪ {ω} with ω as top element.
impl PartialOrd for OmegaNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OmegaNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (OmegaNat::Omega, OmegaNat::Omega) => Ordering::Equal,
            (OmegaNat::Omega, _) => Ordering::Greater,
            (_, OmegaNat::Omega) => Ordering::Less,
            (OmegaNat::Fin(a), OmegaNat::Fin(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for OmegaNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaNat::Fin(n) => write!(f, "{n}"),
            OmegaNat::Omega => f.write_str("w"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_absorbs_offsets() {
        assert_eq!(Omega.offset(5), Some(Omega));
        assert_eq!(Omega.offset(-5), Some(Omega));
        assert_eq!(OmegaNat::Fin(2).offset(-3), None);
        assert_eq!(OmegaNat::Fin(2).offset(-2), Some(OmegaNat::Fin(0)));
    }

    #[test]
    fn le_omega_is_a_partial_order() {
        let vals = [OmegaNat::Fin(0), OmegaNat::Fin(1), OmegaNat::Fin(7), Omega];
        for &a in &vals {
            assert!(a.le_omega(a));
            for &b in &vals {
                if a.le_omega(b) && b.le_omega(a) {
                    assert_eq!(a, b);
                }
                for &c in &vals {
                    if a.le_omega(b) && b.le_omega(c) {
                        assert!(a.le_omega(c));
                    }
                }
            }
        }
        assert!(!OmegaNat::Fin(1).le_omega(OmegaNat::Fin(2)));
        assert!(!Omega.le_omega(OmegaNat::Fin(2)));
    }

    #[test]
    fn meet_of_conflicting_values() {
        assert_eq!(OmegaNat::Fin(1).meet(OmegaNat::Fin(2)), None);
        assert_eq!(Omega.meet(OmegaNat::Fin(2)), Some(OmegaNat::Fin(2)));
    }
}
