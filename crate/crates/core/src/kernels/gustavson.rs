//! Classical column-at-a-time multiplication with a sparse accumulator.

use crate::error::{Error, Result};
use crate::formats::CscMatrix;
use crate::kernels::{KernelTally, Spa};
use crate::semiring::Semiring;

/// Computes `C = A·B` over a semiring, building C one column at a time:
/// column j of C accumulates `A(:, l)` scaled by each entry `B(l, j)`.
///
/// Runs in O(flops + nnz(B) + nrows(A) + ncols(B)). The two dimension
/// terms (allocating the accumulator, sweeping B's column pointers) are
/// charged to `dim_scans`; they are what make this kernel scale poorly on
/// hypersparse operands.
pub fn gustavson_spgemm<S: Semiring>(
    a: &CscMatrix<S::Scalar>,
    b: &CscMatrix<S::Scalar>,
) -> Result<(CscMatrix<S::Scalar>, KernelTally)> {
    if a.ncols() != b.nrows() {
        return Err(Error::DimensionMismatch {
            left_rows: a.nrows(),
            left_cols: a.ncols(),
            right_rows: b.nrows(),
            right_cols: b.ncols(),
        });
    }
    let mut tally = KernelTally {
        dim_scans: (a.nrows() + b.ncols()) as u64,
        ..KernelTally::default()
    };

    let mut spa = Spa::new(a.nrows(), S::zero());
    let mut col_ptrs = Vec::with_capacity(b.ncols() + 1);
    col_ptrs.push(0usize);
    let mut row_ids = Vec::new();
    let mut vals = Vec::new();

    for j in 0..b.ncols() {
        for (l, bv) in b.col(j) {
            tally.entry_scans += 1;
            for (i, av) in a.col(l) {
                tally.flops += 1;
                if spa.accumulate::<S>(i, S::mul(av, bv)) {
                    tally.adds += 1;
                }
            }
        }
        spa.drain_sorted::<S>(|i, v| {
            row_ids.push(i);
            vals.push(v);
        });
        col_ptrs.push(row_ids.len());
    }

    let mut out = crate::formats::TriplesMatrix::with_capacity(a.nrows(), b.ncols(), vals.len());
    for j in 0..b.ncols() {
        for k in col_ptrs[j]..col_ptrs[j + 1] {
            out.push(row_ids[k], j, vals[k]);
        }
    }
    Ok((CscMatrix::from_triples(&out)?, tally))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::TriplesMatrix;
    use crate::semiring::{Real, Tropical};

    fn csc(nrows: usize, ncols: usize, entries: Vec<(usize, usize, f64)>) -> CscMatrix<f64> {
        let mut t = TriplesMatrix::from_entries(nrows, ncols, entries).unwrap();
        t.normalize::<Real>();
        CscMatrix::from_triples(&t).unwrap()
    }

    #[test]
    fn small_dense_product() {
        // A = [[1,2],[0,3]], B = [[4,0],[5,6]] over (+, ×):
        // C = [[14,12],[15,18]], and the dense count of nonzero scalar
        // products is 1·1 + 2·2 = 5 multiplications (plus one addition).
        let a = csc(2, 2, vec![(0, 0, 1.0), (0, 1, 2.0), (1, 1, 3.0)]);
        let b = csc(2, 2, vec![(0, 0, 4.0), (1, 0, 5.0), (1, 1, 6.0)]);
        let (c, tally) = gustavson_spgemm::<Real>(&a, &b).unwrap();
        let expect = csc(
            2,
            2,
            vec![(0, 0, 14.0), (1, 0, 15.0), (0, 1, 12.0), (1, 1, 18.0)],
        );
        assert_eq!(c, expect);
        assert_eq!(tally.flops, 5);
        assert_eq!(tally.adds, 1);
    }

    #[test]
    fn identity_times_b() {
        let mut id = TriplesMatrix::new(4, 4);
        for i in 0..4 {
            id.push(i, i, 1.0);
        }
        id.normalize::<Real>();
        let a = CscMatrix::from_triples(&id).unwrap();
        let b = csc(4, 3, vec![(0, 0, 2.0), (3, 1, -1.0), (2, 2, 0.5), (1, 0, 7.0)]);
        let (c, tally) = gustavson_spgemm::<Real>(&a, &b).unwrap();
        assert_eq!(c, b);
        assert_eq!(tally.flops, b.nnz() as u64);
    }

    #[test]
    fn tropical_two_hop_distance() {
        // Path graph 0 - 1 - 2 with unit weights; squaring the adjacency
        // over (min, +) yields the two-hop distance C(0,2) = 2.
        let entries = vec![(0, 1, 1.0), (1, 0, 1.0), (1, 2, 1.0), (2, 1, 1.0)];
        let mut t = TriplesMatrix::from_entries(3, 3, entries).unwrap();
        t.normalize::<Tropical>();
        let a = CscMatrix::from_triples(&t).unwrap();
        let (c, _) = gustavson_spgemm::<Tropical>(&a, &a).unwrap();
        let triples = c.to_triples();
        let at = |r: usize, cc: usize| {
            triples
                .entries()
                .iter()
                .find(|&&(er, ec, _)| er == r && ec == cc)
                .map(|&(_, _, v)| v)
        };
        assert_eq!(at(0, 2), Some(2.0));
        assert_eq!(at(0, 0), Some(2.0));
        assert_eq!(at(2, 0), Some(2.0));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a = csc(2, 3, vec![(0, 0, 1.0)]);
        let b = csc(2, 2, vec![(0, 0, 1.0)]);
        assert!(matches!(
            gustavson_spgemm::<Real>(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn degenerate_shapes_yield_empty() {
        let a = csc(0, 3, vec![]);
        let b = csc(3, 2, vec![(1, 0, 1.0)]);
        let (c, tally) = gustavson_spgemm::<Real>(&a, &b).unwrap();
        assert_eq!((c.nrows(), c.ncols(), c.nnz()), (0, 2, 0));
        assert_eq!(tally.flops, 0);
    }
}
