/// Search limits used by the brute-force oracles and by the decomposition.
///
/// Every limit is enforced explicitly: running out yields
/// [`Error::Budget`](crate::Error::Budget), never a truncated answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Largest token count per place a concrete search may visit.
    pub max_token: u64,
    /// Maximum number of MGTS processed by the decomposition worklist.
    pub max_worklist: usize,
    /// Maximum size of a Hilbert basis / frontier in the Diophantine solver.
    pub max_basis: usize,
    /// Maximum number of states explored by any single explicit search.
    pub max_states: usize,
    /// Maximum number of Karp–Miller nodes per component.
    pub max_km_nodes: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_token: 64,
            max_worklist: 20_000,
            max_basis: 200_000,
            max_states: 2_000_000,
            max_km_nodes: 5_000,
        }
    }
}

/// Running tally of resources consumed, reported alongside verdicts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Usage {
    pub mgts_processed: usize,
    pub refine_calls: usize,
    pub perfect_mgts: usize,
}
