//! Finite p-group toolkit: presentations, Todd–Coxeter enumeration,
//! subgroup lattices, structural classification and metahamiltonian audits.

pub mod audit;
pub mod bitset;
pub mod classify;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod group;
pub mod kernel;
pub mod presentation;

pub use enumerate::{enumerate, DEFAULT_MAX_COSETS};
pub use error::{Error, Result};
pub use group::ConcreteGroup;
pub use presentation::{parse_presentation, Presentation, Word};
