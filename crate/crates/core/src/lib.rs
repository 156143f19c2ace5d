//! Nonnesting supercharacter theories of pattern groups over finite fields,
//! with the Hopf monoid of nonnesting superclass functions.

pub mod arcs;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod hopf;
pub mod json;
pub mod pattern;
pub mod poset;
pub mod supercharacters;

pub use arcs::{ArcDiagram, LabeledArc};
pub use cyclotomic::{CycNumber, RootSum};
pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use hopf::{
    Basis, CombinatorialEngine, Engine, FunctionalEngine, ScfVector, SpeciesElement, TensorElement,
};
pub use pattern::{AlgebraElement, Functional, GroupElement, PatternGroup};
pub use poset::Poset;
pub use supercharacters::{ClassFunction, SupercharacterTable, Theory};
