//! Sequential multiplication kernels with exact work accounting.
//!
//! Two production kernels plus a brute-force reference:
//!
//! * [`gustavson_spgemm`]: the classical column-at-a-time algorithm on
//!   CSC with a sparse accumulator. O(flops + nnz + n): the `n` terms make
//!   it scan the ambient dimension, which is wasteful on hypersparse
//!   inputs.
//! * [`hypersparse_spgemm`]: outer-product formulation on DCSC. Work is
//!   O(nzc(A) + nzc(B) + flops·lg ni), independent of the matrix
//!   dimension.
//! * [`dense_oracle`]: triple-loop semiring product; ground truth for
//!   tests, capped at dimension 1024.
//!
//! Every kernel reports a [`KernelTally`]. `flops` counts scalar
//! multiplications only; semiring additions are tallied separately in
//! `adds`. This makes the identity
//! `flops = Σᵢ nnz(A(:,i)) · nnz(B(i,:))` over the column/row
//! intersection exact, as [`count_flops`] computes it without forming the
//! product.

mod gustavson;
mod heap;
mod hypersparse;
mod oracle;
mod spa;

pub use gustavson::gustavson_spgemm;
pub use hypersparse::{hypersparse_spgemm, multiply_dcsc};
pub use oracle::{dense_oracle, oracle_product};
pub(crate) use spa::Spa;

use crate::formats::DcscMatrix;

/// Work counters reported by the multiplication kernels.
///
/// The classical kernel fills `dim_scans` (SPA allocation plus the column
/// sweep, proportional to the ambient dimension) and `entry_scans`
/// (operand entry reads). The hypersparse kernel fills `entry_scans`
/// (intersection merge steps), `heap_ops` (pushes and pops) and
/// `heap_comparisons` (key comparisons during sifting). Both fill `flops`
/// and `adds`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KernelTally {
    /// Scalar multiplications.
    pub flops: u64,
    /// Semiring additions performed while accumulating.
    pub adds: u64,
    /// Work proportional to the matrix dimensions.
    pub dim_scans: u64,
    /// Work proportional to operand entry counts.
    pub entry_scans: u64,
    /// Heap pushes and pops.
    pub heap_ops: u64,
    /// Key comparisons inside heap sift operations.
    pub heap_comparisons: u64,
}

impl KernelTally {
    /// Total work of the dimension-free kernel: intersection scans plus
    /// all heap activity.
    pub fn hypersparse_work(&self) -> u64 {
        self.entry_scans + self.heap_ops + self.heap_comparisons
    }

    /// Total work of the classical kernel: dimension sweep, entry reads
    /// and multiplications.
    pub fn classical_work(&self) -> u64 {
        self.dim_scans + self.entry_scans + self.flops
    }

    pub fn merge(&mut self, other: &KernelTally) {
        self.flops += other.flops;
        self.adds += other.adds;
        self.dim_scans += other.dim_scans;
        self.entry_scans += other.entry_scans;
        self.heap_ops += other.heap_ops;
        self.heap_comparisons += other.heap_comparisons;
    }
}

/// Intersection of two strictly increasing index arrays, with the position
/// of every common index in each input.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Intersection {
    pub indices: Vec<usize>,
    pub left_pos: Vec<usize>,
    pub right_pos: Vec<usize>,
    /// Pointer advances performed by the merge: ≤ |left| + |right|.
    pub scan_steps: u64,
}

/// Linear merge of two sorted index lists. O(|left| + |right|).
pub fn intersect_indices(left: &[usize], right: &[usize]) -> Intersection {
    let mut out = Intersection::default();
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        out.scan_steps += 1;
        match left[i].cmp(&right[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.indices.push(left[i]);
                out.left_pos.push(i);
                out.right_pos.push(j);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Multiplications a product would need, computed from the operands'
/// structure alone: Σ over the intersection of A's nonempty columns with
/// B's nonempty rows of `nnz(A(:,i)) · nnz(B(i,:))`.
pub fn count_flops<T, U>(a: &DcscMatrix<T>, b: &DcscMatrix<U>) -> u64
where
    T: Copy + PartialEq + std::fmt::Debug,
    U: Copy + PartialEq + std::fmt::Debug,
{
    let b_rows = b.row_counts();
    let row_ids: Vec<usize> = b_rows.iter().map(|&(r, _)| r).collect();
    let isect = intersect_indices(a.col_ids(), &row_ids);
    let mut flops = 0u64;
    for k in 0..isect.indices.len() {
        let a_extent = a.col_len_at(isect.left_pos[k]) as u64;
        let b_extent = b_rows[isect.right_pos[k]].1 as u64;
        flops += a_extent * b_extent;
    }
    flops
}

/// Same count over precomputed `(index, count)` lists, used by the
/// accounting-only executor paths.
pub fn count_flops_from_counts(
    a_cols: &[(usize, usize)],
    b_rows: &[(usize, usize)],
) -> u64 {
    let mut flops = 0u64;
    let (mut i, mut j) = (0, 0);
    while i < a_cols.len() && j < b_rows.len() {
        match a_cols[i].0.cmp(&b_rows[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                flops += a_cols[i].1 as u64 * b_rows[j].1 as u64;
                i += 1;
                j += 1;
            }
        }
    }
    flops
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::TriplesMatrix;
    use crate::semiring::Real;

    #[test]
    fn intersection_matches_worked_example() {
        // A's nonempty columns {1,2,3,4,6} against B's nonempty rows
        // {1,3,4,5,6} participate at {1,3,4,6}.
        let got = intersect_indices(&[1, 2, 3, 4, 6], &[1, 3, 4, 5, 6]);
        assert_eq!(got.indices, vec![1, 3, 4, 6]);
        assert_eq!(got.left_pos, vec![0, 2, 3, 4]);
        assert_eq!(got.right_pos, vec![0, 1, 2, 4]);
    }

    #[test]
    fn intersection_with_empty_and_self() {
        let xs = [2, 5, 9];
        assert!(intersect_indices(&xs, &[]).indices.is_empty());
        assert_eq!(intersect_indices(&xs, &xs).indices, xs.to_vec());
    }

    fn identity(n: usize) -> DcscMatrix<f64> {
        let mut t = TriplesMatrix::new(n, n);
        for i in 0..n {
            t.push(i, i, 1.0);
        }
        t.normalize::<Real>();
        DcscMatrix::from_triples(&t).unwrap()
    }

    #[test]
    fn flop_count_of_identity_product() {
        let i8 = identity(8);
        assert_eq!(count_flops(&i8, &i8), 8);
    }

    #[test]
    fn flop_count_of_dense_2x2() {
        let mut t = TriplesMatrix::new(2, 2);
        for r in 0..2 {
            for c in 0..2 {
                t.push(r, c, 1.0);
            }
        }
        t.normalize::<Real>();
        let d = DcscMatrix::from_triples(&t).unwrap();
        assert_eq!(count_flops(&d, &d), 8); // k·m·n = 2·2·2
    }
}
