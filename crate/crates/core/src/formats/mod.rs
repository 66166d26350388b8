//! Sparse storage formats and conversions between them.
//!
//! Three representations, ordered by how aggressively they compress the
//! column dimension:
//!
//! * [`TriplesMatrix`]: explicit `(row, col, value)` list; the exchange
//!   format for generators, file I/O, and block distribution.
//! * [`CscMatrix`]: compressed sparse columns: Θ(ncols + nnz) indices.
//! * [`DcscMatrix`]: doubly compressed sparse columns: only nonempty
//!   columns carry pointers, `2·nzc + 1 + nnz` index words total.
//!
//! All three preserve the exact entry multiset under conversion.

mod csc;
mod dcsc;
mod market;
mod stats;
mod triples;

pub use csc::CscMatrix;
pub use dcsc::{AuxIndex, DcscMatrix};
pub use market::{read_matrix_market, write_matrix_market};
pub use stats::MatrixStats;
pub use triples::{Entry, TriplesMatrix};
