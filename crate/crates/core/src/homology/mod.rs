//! Reduced mod-2 homology: sparse GF(2) matrices, normalized chain
//! complexes, induced maps, and an implicit engine for large smash powers.

pub mod basis;
pub mod chain;
pub mod implicit;
pub mod matrix;

pub use basis::{induced_map, is_homologous_zero, quotient_betti_via_les, HomologyBasis};
pub use chain::{chain_complex, reduced_betti, subset_betti, BettiTable, ChainComplexGF2};
pub use implicit::{CellKind, FactorTables, TupleComplex};
pub use matrix::GF2SparseMatrix;
