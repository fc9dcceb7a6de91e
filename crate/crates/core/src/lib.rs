//! Exact computations with monomial ideals and their lcm-semilattices.

pub mod bits;
pub mod classify;
pub mod config;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod monomial;
pub mod morphism;
pub mod realize;
pub mod resolution;
pub mod sdepth;

pub use config::{Config, Field};
pub use error::{Error, Result};
pub use lattice::{JoinMap, Semilattice, StructureReport};
pub use monomial::{GeneratorSet, LcmLattice, Monomial, QuotientPair, Weighting};
