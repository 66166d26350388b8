//! Outer-product multiplication for hypersparse operands.
//!
//! `C = A·B` is the sum of rank-1 products `A(:, i)·B(i, :)` over the
//! indices `i` where both factors are nonempty. The algorithm:
//!
//! 1. intersect A's nonempty-column list with Bᵀ's nonempty-column list
//!    (B's nonempty rows) by a linear merge;
//! 2. treat each intersection index as an implicit, sorted list of
//!    cartesian-product entries and stream them through a min-heap of one
//!    cursor per list, combining equal `(col, row)` keys with ⊕ as they
//!    are popped; the lists are never materialized;
//! 3. assemble the doubly compressed result from the column-major output
//!    stack.
//!
//! Work is O(nzc(A) + nzc(B) + flops·lg ni); nothing scans the ambient
//! dimension. The caller provides B already transposed so the per-block
//! transposition cost can be amortized across uses.

use crate::error::{Error, Result};
use crate::formats::DcscMatrix;
use crate::kernels::heap::{HeapEntry, MergeHeap};
use crate::kernels::{intersect_indices, KernelTally};
use crate::semiring::Semiring;

/// Cursor over one implicit cartesian-product list: column entries of A
/// crossed with row entries of B, generated in column-major key order.
struct ListCursor {
    a_lo: usize,
    a_hi: usize,
    b_hi: usize,
    a_cur: usize,
    b_cur: usize,
}

impl ListCursor {
    /// Advances to the next (a, b) pair; inner index moves fastest.
    /// Returns false when the list is exhausted.
    fn advance(&mut self) -> bool {
        self.a_cur += 1;
        if self.a_cur == self.a_hi {
            self.a_cur = self.a_lo;
            self.b_cur += 1;
        }
        self.b_cur < self.b_hi
    }
}

/// Multiplies `A` (m×k) by `B` (k×n) over a semiring, taking `bt`, the
/// DCSC of `Bᵀ`, for row access to B.
pub fn hypersparse_spgemm<S: Semiring>(
    a: &DcscMatrix<S::Scalar>,
    bt: &DcscMatrix<S::Scalar>,
) -> Result<(DcscMatrix<S::Scalar>, KernelTally)> {
    if a.ncols() != bt.ncols() {
        return Err(Error::DimensionMismatch {
            left_rows: a.nrows(),
            left_cols: a.ncols(),
            right_rows: bt.ncols(),
            right_cols: bt.nrows(),
        });
    }
    let (out_rows, out_cols) = (a.nrows(), bt.nrows());
    let mut tally = KernelTally::default();

    let isect = intersect_indices(a.col_ids(), bt.col_ids());
    tally.entry_scans = isect.scan_steps;
    if isect.indices.is_empty() {
        return Ok((DcscMatrix::empty(out_rows, out_cols), tally));
    }

    let mut cursors: Vec<ListCursor> = Vec::with_capacity(isect.indices.len());
    let mut heap: MergeHeap<S::Scalar> = MergeHeap::with_capacity(isect.indices.len());
    for k in 0..isect.indices.len() {
        let (ka, kb) = (isect.left_pos[k], isect.right_pos[k]);
        let cursor = ListCursor {
            a_lo: a.col_ptrs()[ka],
            a_hi: a.col_ptrs()[ka + 1],
            b_hi: bt.col_ptrs()[kb + 1],
            a_cur: a.col_ptrs()[ka],
            b_cur: bt.col_ptrs()[kb],
        };
        // every listed column/row is nonempty, so the first element exists
        tally.flops += 1;
        heap.push(HeapEntry {
            col: bt.row_ids()[cursor.b_cur],
            row: a.row_ids()[cursor.a_cur],
            list: k,
            val: S::mul(a.values()[cursor.a_cur], bt.values()[cursor.b_cur]),
        });
        cursors.push(cursor);
    }

    // column-major output stack; equal keys are combined on the fly
    let mut out: Vec<(usize, usize, S::Scalar)> = Vec::new();
    let mut current: Option<(usize, usize, S::Scalar)> = None;
    while let Some(entry) = heap.pop() {
        match current {
            Some((c, r, acc)) if c == entry.col && r == entry.row => {
                tally.adds += 1;
                current = Some((c, r, S::add(acc, entry.val)));
            }
            Some((c, r, acc)) => {
                if !S::is_zero(&acc) {
                    out.push((r, c, acc));
                }
                current = Some((entry.col, entry.row, entry.val));
            }
            None => current = Some((entry.col, entry.row, entry.val)),
        }
        let cursor = &mut cursors[entry.list];
        if cursor.advance() {
            tally.flops += 1;
            heap.push(HeapEntry {
                col: bt.row_ids()[cursor.b_cur],
                row: a.row_ids()[cursor.a_cur],
                list: entry.list,
                val: S::mul(a.values()[cursor.a_cur], bt.values()[cursor.b_cur]),
            });
        }
    }
    if let Some((c, r, acc)) = current {
        if !S::is_zero(&acc) {
            out.push((r, c, acc));
        }
    }
    tally.heap_ops = heap.ops;
    tally.heap_comparisons = heap.comparisons;

    let triples = crate::formats::TriplesMatrix::from_entries(out_rows, out_cols, out)?;
    debug_assert!(triples.is_normalized());
    Ok((DcscMatrix::from_triples(&triples)?, tally))
}

/// Convenience wrapper that transposes `b` itself. Prefer
/// [`hypersparse_spgemm`] when the transpose can be reused.
pub fn multiply_dcsc<S: Semiring>(
    a: &DcscMatrix<S::Scalar>,
    b: &DcscMatrix<S::Scalar>,
) -> Result<(DcscMatrix<S::Scalar>, KernelTally)> {
    let bt = b.transpose();
    hypersparse_spgemm::<S>(a, &bt)
}
