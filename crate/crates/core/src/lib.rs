//! Exact-arithmetic partial probability over Kleene three-valued logic.

pub mod dmf;
pub mod formula;
pub mod lattice;
pub mod logic;
pub mod partial_set;
pub mod prob;
pub mod partial_valuation;
pub mod rational;
pub mod translate;

pub use dmf::{DmfAlgebra, DmfMorphism};
pub use formula::{Formula, LogicKind};
pub use lattice::{FiniteLattice, LatticeMorphism, LatticeSpec, Valuation};
pub use partial_set::{PartialField, PartialMeasure, PartialSet, TValue};
pub use rational::Rational;
