//! Exact slice spectral sequence computations over a field presented by its
//! mod-2 Milnor K-theory.
//!
//! The library materializes the first pages of the slice spectral sequences
//! for the motivic spectra `KT` (higher Witt theory), `KQ` (hermitian
//! K-theory) and `KGL/2` (mod-2 algebraic K-theory), applies the closed-form
//! d₁-differentials expressed in motivic Steenrod operations, and computes
//! E²-pages, the graded Witt ring and low-degree hermitian K-groups exactly.
//! A symbolic engine for the weight ≤ 2 fragment of the motivic Steenrod
//! algebra verifies the operation-level identities (Adem relations, d₁² = 0)
//! independently of the numeric path.

pub mod engine;
pub mod error;
pub mod field;
pub mod linalg;
pub mod opalg;
pub mod chart;
pub mod diff;
pub mod pages;
pub mod steenrod;

pub use error::{Error, Result};
pub use field::{FieldPresentation, MotClass, PresetKind};
