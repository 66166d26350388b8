//! Semiring-generic sparse matrix-matrix multiplication (SpGEMM) with
//! doubly compressed storage, simulated 2D parallel executors, and
//! analytic performance models.
//!
//! # What's here
//!
//! * [`semiring`]: pluggable (⊕, ⊗, 0, 1) scalar algebras: real,
//!   tropical (min, +), boolean.
//! * [`formats`]: triples, CSC, and DCSC storage with conversions,
//!   transposition, and Matrix Market I/O. DCSC keeps index storage at
//!   `2·nzc + 1 + nnz` words regardless of dimension, which is what makes
//!   *hypersparse* submatrices (nnz < dimension) affordable.
//! * [`kernels`]: the classical Gustavson kernel, a heap-based
//!   outer-product kernel whose work never touches the ambient dimension,
//!   and a dense reference oracle. All report exact multiplication counts.
//! * [`generators`]: deterministic R-MAT, Erdős–Rényi, 3D-grid, and
//!   permutation matrix generators.
//! * [`grid`]: 1D and 2D block decomposition onto a logical processor
//!   grid, and reassembly.
//! * [`psgemm`]: simulated parallel executors (Sparse SUMMA, Sparse
//!   Cannon, 1D block-row) with per-processor, per-stage ledgers of flops
//!   and message volume, plus load-imbalance studies.
//! * [`perfmodel`]: α-β-γ cost models projecting speedup and efficiency
//!   of the 1D and 2D algorithms, an overlap model, and a kernel-scaling
//!   study that replays submatrix products at increasing grid sizes.
//!
//! The executors are simulations: `p` virtual processors exchanging typed
//! messages under a deterministic scheduler. Results and ledgers are
//! independent of scheduling order; nothing here measures wall-clock
//! distributed speedup.
//!
//! # Example
//!
//! Squaring a path graph's adjacency matrix over the tropical semiring
//! computes two-hop shortest distances:
//!
//! ```
//! use hypersparse::{DcscMatrix, TriplesMatrix, multiply_dcsc};
//! use hypersparse::semiring::Tropical;
//!
//! let mut adj = TriplesMatrix::new(3, 3);
//! for (i, j) in [(0, 1), (1, 0), (1, 2), (2, 1)] {
//!     adj.push(i, j, 1.0);
//! }
//! adj.normalize::<Tropical>();
//!
//! let a = DcscMatrix::from_triples(&adj)?;
//! let (a2, tally) = multiply_dcsc::<Tropical>(&a, &a)?;
//! let dist: Vec<_> = a2.to_triples().into_entries();
//! assert!(dist.contains(&(0, 2, 2.0))); // 0 -> 1 -> 2 costs 2
//! assert_eq!(tally.flops, 6); // sum over l of nnz(A(:,l))·nnz(A(l,:))
//! # Ok::<(), hypersparse::Error>(())
//! ```

pub mod error;
pub mod formats;
pub mod generators;
pub mod grid;
pub mod kernels;
pub mod perfmodel;
pub mod psgemm;
pub mod semiring;

pub use error::{Error, Result};
pub use formats::{
    read_matrix_market, write_matrix_market, CscMatrix, DcscMatrix, MatrixStats, TriplesMatrix,
};
pub use kernels::{
    count_flops, dense_oracle, gustavson_spgemm, hypersparse_spgemm, intersect_indices,
    multiply_dcsc, oracle_product, KernelTally,
};
pub use semiring::{check_semiring_axioms, AxiomReport, Boolean, Real, Semiring, Tropical};
