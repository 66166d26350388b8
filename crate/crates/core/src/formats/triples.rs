//! Coordinate (triples) storage: the exchange format between generators,
//! file I/O, and the compressed formats.

use crate::error::{Error, Result};
use crate::semiring::Semiring;

/// One stored entry: `(row, col, value)`. Indices are 0-based everywhere
/// inside the crate; 1-based conventions (Matrix Market files) are
/// converted at the boundary.
pub type Entry<T> = (usize, usize, T);

/// A sparse matrix as an explicit entry list.
///
/// Entries may be unordered and may contain duplicates until
/// [`normalize`](TriplesMatrix::normalize) is called; the compressed formats
/// require normalized input.
#[derive(Clone, Debug, PartialEq)]
pub struct TriplesMatrix<T> {
    nrows: usize,
    ncols: usize,
    entries: Vec<Entry<T>>,
}

impl<T: Copy + PartialEq + std::fmt::Debug> TriplesMatrix<T> {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        TriplesMatrix {
            nrows,
            ncols,
            entries: Vec::new(),
        }
    }

    pub fn with_capacity(nrows: usize, ncols: usize, cap: usize) -> Self {
        TriplesMatrix {
            nrows,
            ncols,
            entries: Vec::with_capacity(cap),
        }
    }

    /// Builds from an entry list, rejecting out-of-range coordinates.
    pub fn from_entries(nrows: usize, ncols: usize, entries: Vec<Entry<T>>) -> Result<Self> {
        for &(r, c, _) in &entries {
            if r >= nrows || c >= ncols {
                return Err(Error::IndexOutOfRange {
                    row: r,
                    col: c,
                    nrows,
                    ncols,
                });
            }
        }
        Ok(TriplesMatrix {
            nrows,
            ncols,
            entries,
        })
    }

    pub fn push(&mut self, row: usize, col: usize, val: T) {
        assert!(
            row < self.nrows && col < self.ncols,
            "entry ({row}, {col}) outside {}x{}",
            self.nrows,
            self.ncols
        );
        self.entries.push((row, col, val));
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Entry<T>] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Entry<T>> {
        self.entries
    }

    /// Sorts column-major, merges duplicate coordinates with the semiring's
    /// ⊕, and drops entries equal to its zero.
    pub fn normalize<S: Semiring<Scalar = T>>(&mut self) {
        self.entries
            .sort_unstable_by_key(|&(r, c, _)| (c, r));
        let mut out: Vec<Entry<T>> = Vec::with_capacity(self.entries.len());
        for &(r, c, v) in &self.entries {
            match out.last_mut() {
                Some(&mut (lr, lc, ref mut lv)) if lr == r && lc == c => {
                    *lv = S::add(*lv, v);
                }
                _ => out.push((r, c, v)),
            }
        }
        out.retain(|(_, _, v)| !S::is_zero(v));
        self.entries = out;
    }

    /// True when entries are in strictly increasing column-major order
    /// (which also rules out duplicates). Absence of stored zeros cannot be
    /// checked without a semiring and is the caller's obligation.
    pub fn is_normalized(&self) -> bool {
        self.entries
            .windows(2)
            .all(|w| (w[0].1, w[0].0) < (w[1].1, w[1].0))
    }

    /// Swaps rows and columns, keeping the result in normalized order.
    pub fn transpose(&self) -> Self {
        let mut entries: Vec<Entry<T>> =
            self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable_by_key(|&(r, c, _)| (c, r));
        TriplesMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            entries,
        }
    }

    /// Re-embeds the same entry set in a larger ambient dimension.
    pub fn padded(&self, nrows: usize, ncols: usize) -> Result<Self> {
        if nrows < self.nrows || ncols < self.ncols {
            return Err(Error::InvalidParams(
                "padded dimensions must not shrink".into(),
            ));
        }
        Ok(TriplesMatrix {
            nrows,
            ncols,
            entries: self.entries.clone(),
        })
    }

    pub(crate) fn sort_col_major(&mut self) {
        self.entries.sort_unstable_by_key(|&(r, c, _)| (c, r));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Real;

    #[test]
    fn normalize_merges_and_prunes() {
        let mut t = TriplesMatrix::new(3, 3);
        t.push(1, 2, 2.0);
        t.push(0, 0, 1.5);
        t.push(1, 2, -2.0);
        t.push(2, 1, 4.0);
        t.normalize::<Real>();
        assert_eq!(t.entries(), &[(0, 0, 1.5), (2, 1, 4.0)]);
        assert!(t.is_normalized());
    }

    #[test]
    fn from_entries_rejects_out_of_range() {
        let err = TriplesMatrix::from_entries(2, 2, vec![(2, 0, 1.0)]).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange { row: 2, .. }));
    }

    #[test]
    fn transpose_is_involutive() {
        let t = TriplesMatrix::from_entries(3, 4, vec![(2, 1, 2.0), (0, 3, 1.0)]).unwrap();
        assert!(t.is_normalized());
        assert_eq!(t.transpose().transpose(), t);
    }
}
