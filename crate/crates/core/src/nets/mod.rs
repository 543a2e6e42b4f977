//! Petri nets, VAS, firing semantics and brute-force oracles.

pub mod fixtures;
mod net;
pub mod oracle;
mod text;
mod vas;

pub use net::{
    show_word, word, LabeledPetriNet, Letter, Marking, OmegaMarking, PetriNet, Transition, Word,
};
pub use oracle::{enumerate_language, f_count, oracle_factors, Enumeration, FactorSearch};
pub use text::{parse_net, print_net};
pub(crate) use text::tokens;
pub use vas::{vas_to_net, Vas};
