//! Exact linear algebra kernels: dense bit-packed GF(2) matrices and
//! arbitrary-precision integer matrices with Smith normal form.
//!
//! Every homology computation in the spectral sequence engine bottoms out
//! here. All routines use deterministic leftmost-pivot elimination so that
//! representative bases are reproducible across runs.

pub mod f2;
pub mod fgab;
pub mod smith;

pub use f2::{F2Matrix, F2Vec};
pub use fgab::{fgab_homology, raw_homology, FgAbGroup, PresentedMap, RawComplex};
pub use smith::{IntMatrix, SmithDecomposition};
