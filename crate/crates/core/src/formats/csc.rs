//! Compressed sparse columns: a dense array of column pointers over the
//! full column range. Θ(ncols + nnz) index storage.

use crate::error::{Error, Result};
use crate::formats::dcsc::DcscMatrix;
use crate::formats::triples::TriplesMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct CscMatrix<T> {
    nrows: usize,
    ncols: usize,
    col_ptrs: Vec<usize>, // length ncols + 1, non-decreasing
    row_ids: Vec<usize>,  // length nnz, strictly increasing per column
    vals: Vec<T>,
}

impl<T: Copy + PartialEq + std::fmt::Debug> CscMatrix<T> {
    pub fn empty(nrows: usize, ncols: usize) -> Self {
        CscMatrix {
            nrows,
            ncols,
            col_ptrs: vec![0; ncols + 1],
            row_ids: Vec::new(),
            vals: Vec::new(),
        }
    }

    /// Compresses normalized triples.
    pub fn from_triples(t: &TriplesMatrix<T>) -> Result<Self> {
        if !t.is_normalized() {
            return Err(Error::NotNormalized);
        }
        let (nrows, ncols) = (t.nrows(), t.ncols());
        let mut col_ptrs = vec![0usize; ncols + 1];
        let mut row_ids = Vec::with_capacity(t.nnz());
        let mut vals = Vec::with_capacity(t.nnz());
        for &(r, c, v) in t.entries() {
            if r >= nrows || c >= ncols {
                return Err(Error::IndexOutOfRange {
                    row: r,
                    col: c,
                    nrows,
                    ncols,
                });
            }
            col_ptrs[c + 1] += 1;
            row_ids.push(r);
            vals.push(v);
        }
        for c in 0..ncols {
            col_ptrs[c + 1] += col_ptrs[c];
        }
        Ok(CscMatrix {
            nrows,
            ncols,
            col_ptrs,
            row_ids,
            vals,
        })
    }

    pub fn to_triples(&self) -> TriplesMatrix<T> {
        let mut t = TriplesMatrix::with_capacity(self.nrows, self.ncols, self.nnz());
        for c in 0..self.ncols {
            for k in self.col_ptrs[c]..self.col_ptrs[c + 1] {
                t.push(self.row_ids[k], c, self.vals[k]);
            }
        }
        t
    }

    pub fn from_dcsc(d: &DcscMatrix<T>) -> Self {
        let mut col_ptrs = vec![0usize; d.ncols() + 1];
        for (k, &c) in d.col_ids().iter().enumerate() {
            col_ptrs[c + 1] = d.col_ptrs()[k + 1] - d.col_ptrs()[k];
        }
        for c in 0..d.ncols() {
            col_ptrs[c + 1] += col_ptrs[c];
        }
        CscMatrix {
            nrows: d.nrows(),
            ncols: d.ncols(),
            col_ptrs,
            row_ids: d.row_ids().to_vec(),
            vals: d.values().to_vec(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn col_ptrs(&self) -> &[usize] {
        &self.col_ptrs
    }

    pub fn row_ids(&self) -> &[usize] {
        &self.row_ids
    }

    pub fn values(&self) -> &[T] {
        &self.vals
    }

    /// `(row, value)` pairs of one column, rows strictly increasing.
    pub fn col(&self, c: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let range = self.col_ptrs[c]..self.col_ptrs[c + 1];
        range.map(move |k| (self.row_ids[k], self.vals[k]))
    }

    /// Total index-array length: `ncols + 1 + nnz`. Grows with the ambient
    /// dimension even for a fixed entry set, unlike the doubly compressed
    /// form.
    pub fn index_storage(&self) -> usize {
        self.col_ptrs.len() + self.row_ids.len()
    }

    pub fn check_invariants(&self) -> Result<()> {
        if self.col_ptrs.len() != self.ncols + 1 {
            return Err(Error::Malformed("col_ptrs length".into()));
        }
        if self.col_ptrs[0] != 0 || *self.col_ptrs.last().unwrap() != self.vals.len() {
            return Err(Error::Malformed("col_ptrs endpoints".into()));
        }
        if self.row_ids.len() != self.vals.len() {
            return Err(Error::Malformed("row/value length mismatch".into()));
        }
        for c in 0..self.ncols {
            if self.col_ptrs[c] > self.col_ptrs[c + 1] {
                return Err(Error::Malformed(format!("col_ptrs decreasing at {c}")));
            }
            for k in self.col_ptrs[c]..self.col_ptrs[c + 1] {
                if self.row_ids[k] >= self.nrows {
                    return Err(Error::Malformed(format!("row id out of range at {k}")));
                }
                if k > self.col_ptrs[c] && self.row_ids[k - 1] >= self.row_ids[k] {
                    return Err(Error::Malformed(format!(
                        "rows not strictly increasing in column {c}"
                    )));
                }
            }
        }
        Ok(())
    }
}
