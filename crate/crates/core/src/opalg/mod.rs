//! Symbolic weight ≤ 2 motivic Steenrod operation algebra: formal GF(2)-sums
//! of words in {Sq¹,…,Sq⁵, δ, pr, τ, ρ}, rewriting to admissible normal form,
//! the hom-group basis tables between motivic Eilenberg-MacLane spectra in
//! weight ≤ 1, and the symbolic verification that each d₁ squares to zero.

mod d1;
mod normalize;
mod tables;
mod word;

pub use d1::{d1_row, d1_symbolic, d1_symbolic_kgl2, verify_d1_squared, SummandKind, VerifyEntry, VerifyReport};
pub use normalize::{adem_relation_checks, op_normalize, op_normalize_traced, NormalForm};
pub use tables::{hom_basis_dim, hom_basis_table, normalized_in_span, span_contains, HomBasisEntry};
pub use word::{op_compose, Bidegree, Coefficient, Letter, OpWord, Word};
