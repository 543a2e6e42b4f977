//! ω-arithmetic and exact natural solving of linear systems.

mod dioph;
mod omega;

pub use dioph::{solve_nat, variable_unbounded, DiophSystem, SolutionDescription};
pub use omega::{Omega, OmegaNat};
