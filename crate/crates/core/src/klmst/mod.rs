//! Marked graph-transition sequences: perfectness, decomposition, covering
//! sequences, the iteration witness and the regular approximation.

mod ces;
mod component;
mod covering;
mod decompose;
mod karp_miller;
mod mgts;
mod perfect;
mod refine;

pub use ces::{characteristic_system, Ces, CesVar};
pub use component::{component_language, Edge, PrecoveringGraph};
pub use covering::{covering_sequence, covering_with_suffix, is_covering_sequence};
pub use decompose::{
    approximate, decompose, decompose_traced, iteration_witness, Decomposition,
    RefineStep, RegularApproximation,
};
pub use karp_miller::{karp_miller, reaches_full_omega, KmGraph};
pub use mgts::{initial_mgts, mgts_member, Mgts, TransitionWord};
pub use perfect::{is_perfect, Defect, PerfectnessReport};
pub use refine::refine;
