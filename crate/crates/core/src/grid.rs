//! Block decomposition of matrices onto a logical processor grid.
//!
//! Block boundaries use the floor split `⌊i·extent/parts⌋`, which handles
//! extents not divisible by the grid and keeps block sizes within one of
//! each other. Block `(i, j)` of a 2D distribution holds rows
//! `⌊i·m/pr⌋ .. ⌊(i+1)·m/pr⌋` and columns `⌊j·n/pc⌋ .. ⌊(j+1)·n/pc⌋`,
//! stored with block-local indices in doubly compressed form.

use crate::error::{Error, Result};
use crate::formats::{DcscMatrix, MatrixStats, TriplesMatrix};

/// Logical processor grid: `rows × cols` virtual processors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridConfig {
    rows: usize,
    cols: usize,
}

impl GridConfig {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParams("grid dimensions must be positive".into()));
        }
        Ok(GridConfig { rows, cols })
    }

    /// Square `side × side` grid.
    pub fn square(side: usize) -> Result<Self> {
        GridConfig::new(side, side)
    }

    /// Square grid for a processor count that is a perfect square.
    pub fn square_for(p: usize) -> Result<Self> {
        let side = (p as f64).sqrt().round() as usize;
        if side * side != p || p == 0 {
            return Err(Error::InvalidParams(format!(
                "{p} processors do not form a square grid"
            )));
        }
        GridConfig::square(side)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn p(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquareGrid {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

/// Floor-split boundaries: `parts + 1` offsets with
/// `bounds[i] = ⌊i·extent/parts⌋`.
pub fn split_bounds(extent: usize, parts: usize) -> Vec<usize> {
    (0..=parts).map(|i| i * extent / parts).collect()
}

fn block_of(bounds: &[usize], idx: usize) -> usize {
    // last block whose start is <= idx; empty blocks are skipped because
    // an index can only fall in a block of positive width
    bounds.partition_point(|&b| b <= idx) - 1
}

/// A matrix 2D-block-partitioned over a processor grid. Blocks are
/// independently owned values; each can move to its own task.
#[derive(Clone, Debug, PartialEq)]
pub struct DistMatrix<T> {
    nrows: usize,
    ncols: usize,
    grid: GridConfig,
    row_bounds: Vec<usize>,
    col_bounds: Vec<usize>,
    blocks: Vec<DcscMatrix<T>>, // row-major over the grid
}

impl<T: Copy + PartialEq + std::fmt::Debug> DistMatrix<T> {
    /// Assigns every entry of a normalized matrix to exactly one block,
    /// re-indexed to block-local coordinates.
    pub fn distribute_2d(t: &TriplesMatrix<T>, grid: GridConfig) -> Result<Self> {
        if !t.is_normalized() {
            return Err(Error::NotNormalized);
        }
        let row_bounds = split_bounds(t.nrows(), grid.rows());
        let col_bounds = split_bounds(t.ncols(), grid.cols());
        let mut buckets: Vec<Vec<(usize, usize, T)>> = vec![Vec::new(); grid.p()];
        for &(r, c, v) in t.entries() {
            let bi = block_of(&row_bounds, r);
            let bj = block_of(&col_bounds, c);
            buckets[bi * grid.cols() + bj].push((r - row_bounds[bi], c - col_bounds[bj], v));
        }
        let mut blocks = Vec::with_capacity(grid.p());
        for (idx, mut bucket) in buckets.into_iter().enumerate() {
            let (bi, bj) = (idx / grid.cols(), idx % grid.cols());
            bucket.sort_unstable_by_key(|&(r, c, _)| (c, r));
            let local = TriplesMatrix::from_entries(
                row_bounds[bi + 1] - row_bounds[bi],
                col_bounds[bj + 1] - col_bounds[bj],
                bucket,
            )?;
            blocks.push(DcscMatrix::from_triples(&local)?);
        }
        Ok(DistMatrix {
            nrows: t.nrows(),
            ncols: t.ncols(),
            grid,
            row_bounds,
            col_bounds,
            blocks,
        })
    }

    /// 1D block-row distribution: each of `p` processors receives a band
    /// of consecutive rows. Equivalent to a `p × 1` grid.
    pub fn distribute_1d_rows(t: &TriplesMatrix<T>, p: usize) -> Result<Self> {
        Self::distribute_2d(t, GridConfig::new(p, 1)?)
    }

    pub fn from_parts(
        nrows: usize,
        ncols: usize,
        grid: GridConfig,
        blocks: Vec<DcscMatrix<T>>,
    ) -> Result<Self> {
        if blocks.len() != grid.p() {
            return Err(Error::InvalidParams(format!(
                "{} blocks for a {}x{} grid",
                blocks.len(),
                grid.rows(),
                grid.cols()
            )));
        }
        let row_bounds = split_bounds(nrows, grid.rows());
        let col_bounds = split_bounds(ncols, grid.cols());
        for i in 0..grid.rows() {
            for j in 0..grid.cols() {
                let b = &blocks[i * grid.cols() + j];
                if b.nrows() != row_bounds[i + 1] - row_bounds[i]
                    || b.ncols() != col_bounds[j + 1] - col_bounds[j]
                {
                    return Err(Error::Malformed(format!(
                        "block ({i}, {j}) has shape {}x{}, expected {}x{}",
                        b.nrows(),
                        b.ncols(),
                        row_bounds[i + 1] - row_bounds[i],
                        col_bounds[j + 1] - col_bounds[j]
                    )));
                }
            }
        }
        Ok(DistMatrix {
            nrows,
            ncols,
            grid,
            row_bounds,
            col_bounds,
            blocks,
        })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn grid(&self) -> GridConfig {
        self.grid
    }

    pub fn row_bounds(&self) -> &[usize] {
        &self.row_bounds
    }

    pub fn col_bounds(&self) -> &[usize] {
        &self.col_bounds
    }

    pub fn block(&self, i: usize, j: usize) -> &DcscMatrix<T> {
        &self.blocks[i * self.grid.cols() + j]
    }

    pub fn blocks(&self) -> &[DcscMatrix<T>] {
        &self.blocks
    }

    pub fn total_nnz(&self) -> usize {
        self.blocks.iter().map(|b| b.nnz()).sum()
    }

    /// Inverse of distribution: the original entry set with global
    /// coordinates, normalized order.
    pub fn reassemble(&self) -> TriplesMatrix<T> {
        let mut t = TriplesMatrix::with_capacity(self.nrows, self.ncols, self.total_nnz());
        for i in 0..self.grid.rows() {
            for j in 0..self.grid.cols() {
                let (r0, c0) = (self.row_bounds[i], self.col_bounds[j]);
                for k in 0..self.block(i, j).nzc() {
                    let c = self.block(i, j).col_ids()[k];
                    for (r, v) in self.block(i, j).col_at(k) {
                        t.push(r0 + r, c0 + c, v);
                    }
                }
            }
        }
        t.sort_col_major();
        t
    }

    /// Per-block entry statistics, row-major over the grid.
    pub fn block_stats(&self) -> Vec<MatrixStats> {
        self.blocks.iter().map(|b| b.stats()).collect()
    }

    /// Mean over blocks of nnz per local column, the quantity whose drop
    /// below 1 marks the onset of hypersparsity as grids grow.
    pub fn mean_block_nnz_per_col(&self) -> f64 {
        let ratios: Vec<f64> = self
            .blocks
            .iter()
            .map(|b| b.nnz() as f64 / b.ncols().max(1) as f64)
            .collect();
        ratios.iter().sum::<f64>() / ratios.len().max(1) as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_rmat, RmatParams};
    use crate::semiring::Real;

    fn identity(n: usize) -> TriplesMatrix<f64> {
        let mut t = TriplesMatrix::new(n, n);
        for i in 0..n {
            t.push(i, i, 1.0);
        }
        t.normalize::<Real>();
        t
    }

    #[test]
    fn identity_on_2x2_grid_is_block_diagonal() {
        let d = DistMatrix::distribute_2d(&identity(4), GridConfig::square(2).unwrap()).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let b = d.block(i, j);
                if i == j {
                    assert_eq!(b.nnz(), 2);
                    assert_eq!(b.col_ids(), &[0, 1]);
                    assert_eq!(b.row_ids(), &[0, 1]);
                } else {
                    assert_eq!(b.nnz(), 0);
                }
            }
        }
    }

    #[test]
    fn sparse_9x9_entry_lands_in_expected_block() {
        // entry (5,0) on a 3x3 grid: the split of 9 rows/cols is
        // [0,3,6,9], so it belongs to block (1,0) at local (2,0)
        let mut t = TriplesMatrix::new(9, 9);
        t.push(5, 0, 0.1);
        t.push(7, 0, 0.2);
        t.push(3, 6, 0.3);
        t.push(1, 7, 0.4);
        t.normalize::<Real>();
        let d = DistMatrix::distribute_2d(&t, GridConfig::square(3).unwrap()).unwrap();
        let b = d.block(1, 0);
        assert_eq!(b.nnz(), 1);
        assert_eq!(b.col_ids(), &[0]);
        assert_eq!(b.row_ids(), &[2]);
    }

    #[test]
    fn reassemble_round_trips() {
        let a = gen_rmat(&RmatParams::new(7, 21)).unwrap();
        for grid in [
            GridConfig::square(2).unwrap(),
            GridConfig::square(3).unwrap(),
            GridConfig::new(2, 5).unwrap(),
        ] {
            let d = DistMatrix::distribute_2d(&a, grid).unwrap();
            assert_eq!(d.total_nnz(), a.nnz(), "conservation on {grid:?}");
            assert_eq!(d.reassemble(), a, "round trip on {grid:?}");
        }
    }

    #[test]
    fn one_dimensional_split_of_identity() {
        let d = DistMatrix::distribute_1d_rows(&identity(4), 2).unwrap();
        assert_eq!(d.grid().rows(), 2);
        assert_eq!(d.grid().cols(), 1);
        assert_eq!(d.block(0, 0).nnz(), 2);
        assert_eq!(d.block(1, 0).nnz(), 2);
        assert_eq!(d.block(0, 0).nrows(), 2);
        assert_eq!(d.block(0, 0).ncols(), 4);
    }

    #[test]
    fn floor_split_keeps_parts_within_one() {
        for extent in [0usize, 1, 5, 9, 64, 100] {
            for parts in [1usize, 2, 3, 7, 16] {
                let bounds = split_bounds(extent, parts);
                assert_eq!(bounds.len(), parts + 1);
                assert_eq!(bounds[0], 0);
                assert_eq!(bounds[parts], extent);
                let sizes: Vec<usize> = bounds.windows(2).map(|w| w[1] - w[0]).collect();
                let (lo, hi) = (sizes.iter().min().unwrap(), sizes.iter().max().unwrap());
                assert!(hi - lo <= 1, "extent {extent} over {parts}: {sizes:?}");
            }
        }
    }

    #[test]
    fn uneven_rows_follow_floor_split() {
        let mut t = TriplesMatrix::new(5, 3);
        for r in 0..5 {
            t.push(r, 0, r as f64 + 1.0);
        }
        t.normalize::<Real>();
        let d = DistMatrix::distribute_1d_rows(&t, 2).unwrap();
        assert_eq!(d.row_bounds(), &[0, 2, 5]);
        assert_eq!(d.block(0, 0).nrows(), 2);
        assert_eq!(d.block(1, 0).nrows(), 3);
        assert_eq!(d.reassemble(), t);
    }

    #[test]
    fn block_stats_flag_hypersparsity() {
        let empty = TriplesMatrix::<f64>::new(16, 16);
        let d = DistMatrix::distribute_2d(&empty, GridConfig::square(2).unwrap()).unwrap();
        assert!(d.block_stats().iter().all(|s| s.is_hypersparse()));
        assert!(d.block_stats().iter().all(|s| s.nnz == 0));

        let d = DistMatrix::distribute_2d(&identity(16), GridConfig::square(1).unwrap()).unwrap();
        assert!(!d.block_stats()[0].is_hypersparse());
    }

    #[test]
    fn rmat_block_ratio_tracks_degree_over_grid_side() {
        // degree-8 R-MAT on a 16x16 grid: mean block nnz per local column
        // approximates 8/16 = 0.5
        let a = gen_rmat(&RmatParams::new(12, 31)).unwrap();
        let d = DistMatrix::distribute_2d(&a, GridConfig::square(16).unwrap()).unwrap();
        let ratio = d.mean_block_nnz_per_col();
        assert!(
            (ratio - 0.5).abs() < 0.1,
            "ratio {ratio} far from 8/sqrt(256)"
        );
        let hyper = d.block_stats().iter().filter(|s| s.is_hypersparse()).count();
        assert!(hyper > 200, "most 256 blocks hypersparse, got {hyper}");
    }

    #[test]
    fn hypersparse_fraction_grows_with_p() {
        let a = gen_rmat(&RmatParams::new(12, 13)).unwrap();
        let mut last = 0.0;
        for side in [2usize, 4, 8, 16] {
            let d = DistMatrix::distribute_2d(&a, GridConfig::square(side).unwrap()).unwrap();
            let stats = d.block_stats();
            let frac = stats.iter().filter(|s| s.is_hypersparse()).count() as f64
                / stats.len() as f64;
            assert!(
                frac >= last,
                "hypersparse fraction dropped from {last} to {frac} at side {side}"
            );
            last = frac;
        }
    }

    #[test]
    fn regular_matrix_block_columns_thin_as_grid_grows() {
        // c-regular test matrix: exactly c entries per column
        use rand::{Rng, SeedableRng};
        let (n, c) = (256usize, 8usize);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let mut t = TriplesMatrix::new(n, n);
        for col in 0..n {
            let mut rows = std::collections::BTreeSet::new();
            while rows.len() < c {
                rows.insert(rng.gen_range(0..n));
            }
            for r in rows {
                t.push(r, col, 1.0);
            }
        }
        t.normalize::<Real>();
        for side in [2usize, 4, 8] {
            let d = DistMatrix::distribute_2d(&t, GridConfig::square(side).unwrap()).unwrap();
            let measured = d.mean_block_nnz_per_col();
            let predicted = c as f64 / side as f64;
            assert!(
                (measured - predicted).abs() <= 0.2 * predicted,
                "side {side}: measured {measured}, predicted {predicted}"
            );
        }
    }
}
