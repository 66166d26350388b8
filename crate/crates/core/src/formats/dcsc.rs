//! Doubly compressed sparse columns: a sparse array of sparse columns.
//!
//! Where CSC keeps one pointer per column of the ambient dimension, this
//! format keeps pointers only for columns that actually hold a nonzero.
//! Index storage is `2·nzc + 1 + nnz`, independent of the matrix
//! dimension, which is what lets kernels stay efficient on *hypersparse*
//! blocks (nnz < dimension) produced by 2D partitioning.

use crate::error::{Error, Result};
use crate::formats::csc::CscMatrix;
use crate::formats::stats::MatrixStats;
use crate::formats::triples::TriplesMatrix;

/// On-demand lookup index over the nonempty-column list.
///
/// `ptrs[t]` is the first position in `col_ids` whose column id falls at or
/// after the start of the `t`-th chunk of `chunk_width` column ids. Built in
/// O(nzc), never serialized.
#[derive(Clone, Debug, PartialEq)]
pub struct AuxIndex {
    chunk_width: usize,
    ptrs: Vec<usize>,
}

impl AuxIndex {
    pub fn chunk_width(&self) -> usize {
        self.chunk_width
    }

    pub fn ptrs(&self) -> &[usize] {
        &self.ptrs
    }
}

#[derive(Clone, Debug)]
pub struct DcscMatrix<T> {
    nrows: usize,
    ncols: usize,
    col_ids: Vec<usize>,  // nonempty column ids, strictly increasing (nzc)
    col_ptrs: Vec<usize>, // offsets into row_ids/vals (nzc + 1)
    row_ids: Vec<usize>,  // strictly increasing within each column (nnz)
    vals: Vec<T>,
    aux: Option<AuxIndex>,
}

/// Equality is structural: the aux lookup index is a scratch structure
/// and does not participate.
impl<T: PartialEq> PartialEq for DcscMatrix<T> {
    fn eq(&self, other: &Self) -> bool {
        self.nrows == other.nrows
            && self.ncols == other.ncols
            && self.col_ids == other.col_ids
            && self.col_ptrs == other.col_ptrs
            && self.row_ids == other.row_ids
            && self.vals == other.vals
    }
}

impl<T: Copy + PartialEq + std::fmt::Debug> DcscMatrix<T> {
    pub fn empty(nrows: usize, ncols: usize) -> Self {
        DcscMatrix {
            nrows,
            ncols,
            col_ids: Vec::new(),
            col_ptrs: vec![0],
            row_ids: Vec::new(),
            vals: Vec::new(),
            aux: None,
        }
    }

    /// Compresses normalized triples: one `col_ids` entry per nonempty
    /// column, offsets in `col_ptrs`.
    pub fn from_triples(t: &TriplesMatrix<T>) -> Result<Self> {
        if !t.is_normalized() {
            return Err(Error::NotNormalized);
        }
        let (nrows, ncols) = (t.nrows(), t.ncols());
        for &(r, c, _) in t.entries() {
            if r >= nrows || c >= ncols {
                return Err(Error::IndexOutOfRange {
                    row: r,
                    col: c,
                    nrows,
                    ncols,
                });
            }
        }
        Ok(Self::from_sorted_entries(nrows, ncols, t.entries()))
    }

    /// Builds from entries already in strict column-major order.
    fn from_sorted_entries(nrows: usize, ncols: usize, entries: &[(usize, usize, T)]) -> Self {
        let mut m = DcscMatrix {
            nrows,
            ncols,
            col_ids: Vec::new(),
            col_ptrs: Vec::new(),
            row_ids: Vec::with_capacity(entries.len()),
            vals: Vec::with_capacity(entries.len()),
            aux: None,
        };
        for &(r, c, v) in entries {
            if m.col_ids.last() != Some(&c) {
                m.col_ids.push(c);
                m.col_ptrs.push(m.row_ids.len());
            }
            m.row_ids.push(r);
            m.vals.push(v);
        }
        m.col_ptrs.push(m.row_ids.len());
        if m.col_ids.is_empty() {
            m.col_ptrs = vec![0];
        }
        m
    }

    /// Builds from raw arrays, after checking every structural invariant.
    pub fn from_parts(
        nrows: usize,
        ncols: usize,
        col_ids: Vec<usize>,
        col_ptrs: Vec<usize>,
        row_ids: Vec<usize>,
        vals: Vec<T>,
    ) -> Result<Self> {
        let m = DcscMatrix {
            nrows,
            ncols,
            col_ids,
            col_ptrs,
            row_ids,
            vals,
            aux: None,
        };
        m.check_invariants()?;
        Ok(m)
    }

    pub fn to_triples(&self) -> TriplesMatrix<T> {
        let mut t = TriplesMatrix::with_capacity(self.nrows, self.ncols, self.nnz());
        for k in 0..self.nzc() {
            let c = self.col_ids[k];
            for i in self.col_ptrs[k]..self.col_ptrs[k + 1] {
                t.push(self.row_ids[i], c, self.vals[i]);
            }
        }
        t
    }

    pub fn from_csc(csc: &CscMatrix<T>) -> Self {
        let mut col_ids = Vec::new();
        let mut col_ptrs = vec![0usize];
        for c in 0..csc.ncols() {
            let (lo, hi) = (csc.col_ptrs()[c], csc.col_ptrs()[c + 1]);
            if lo < hi {
                col_ids.push(c);
                col_ptrs.push(hi);
            }
        }
        DcscMatrix {
            nrows: csc.nrows(),
            ncols: csc.ncols(),
            col_ids,
            col_ptrs,
            row_ids: csc.row_ids().to_vec(),
            vals: csc.values().to_vec(),
            aux: None,
        }
    }

    pub fn to_csc(&self) -> CscMatrix<T> {
        CscMatrix::from_dcsc(self)
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

    /// Number of columns holding at least one nonzero.
    pub fn nzc(&self) -> usize {
        self.col_ids.len()
    }

    pub fn col_ids(&self) -> &[usize] {
        &self.col_ids
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

    pub fn aux(&self) -> Option<&AuxIndex> {
        self.aux.as_ref()
    }

    /// Total index-array length: `2·nzc + 1 + nnz`, independent of `ncols`.
    pub fn index_storage(&self) -> usize {
        self.col_ids.len() + self.col_ptrs.len() + self.row_ids.len()
    }

    /// `(row, value)` pairs of the `k`-th nonempty column.
    pub fn col_at(&self, k: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        (self.col_ptrs[k]..self.col_ptrs[k + 1]).map(move |i| (self.row_ids[i], self.vals[i]))
    }

    /// nnz of the `k`-th nonempty column.
    pub fn col_len_at(&self, k: usize) -> usize {
        self.col_ptrs[k + 1] - self.col_ptrs[k]
    }

    /// Builds the chunked column lookup index. A no-op on an empty matrix,
    /// which keeps an empty index.
    pub fn build_aux(&mut self) {
        let nzc = self.nzc();
        if nzc == 0 {
            self.aux = Some(AuxIndex {
                chunk_width: 0,
                ptrs: Vec::new(),
            });
            return;
        }
        let chunk_width = self.ncols.div_ceil(nzc).max(1);
        let nchunks = self.ncols.div_ceil(chunk_width);
        let mut ptrs = Vec::with_capacity(nchunks + 1);
        let mut pos = 0usize;
        for t in 0..=nchunks {
            let start = t * chunk_width;
            while pos < nzc && self.col_ids[pos] < start {
                pos += 1;
            }
            ptrs.push(pos);
        }
        self.aux = Some(AuxIndex { chunk_width, ptrs });
    }

    /// Position of column `c` in the nonempty-column list, or `None` if the
    /// column is empty. Uses the aux index when present, otherwise a binary
    /// search over `col_ids`.
    pub fn lookup_col(&self, c: usize) -> Option<usize> {
        if c >= self.ncols {
            return None;
        }
        let (lo, hi) = match &self.aux {
            Some(aux) if aux.chunk_width > 0 => {
                let t = c / aux.chunk_width;
                if t + 1 >= aux.ptrs.len() {
                    return None;
                }
                (aux.ptrs[t], aux.ptrs[t + 1])
            }
            Some(_) => return None, // empty matrix
            None => (0, self.nzc()),
        };
        self.col_ids[lo..hi]
            .binary_search(&c)
            .ok()
            .map(|off| lo + off)
    }

    /// Transpose by key-sorting entries on (new column, new row):
    /// O(nnz·lg nnz), never touching the ambient dimension.
    pub fn transpose(&self) -> Self {
        let mut entries: Vec<(usize, usize, T)> = Vec::with_capacity(self.nnz());
        for k in 0..self.nzc() {
            let c = self.col_ids[k];
            for (r, v) in self.col_at(k) {
                entries.push((c, r, v)); // (new row, new col, val)
            }
        }
        entries.sort_unstable_by_key(|&(r, c, _)| (c, r));
        Self::from_sorted_entries(self.ncols, self.nrows, &entries)
    }

    /// Submatrix of columns `[lo, hi)`, re-indexed so the slice's first
    /// column becomes column 0.
    pub fn extract_col_range(&self, lo: usize, hi: usize) -> Self {
        debug_assert!(lo <= hi && hi <= self.ncols);
        let kl = self.col_ids.partition_point(|&c| c < lo);
        let kh = self.col_ids.partition_point(|&c| c < hi);
        let (el, eh) = (self.col_ptrs[kl], self.col_ptrs[kh]);
        DcscMatrix {
            nrows: self.nrows,
            ncols: hi - lo,
            col_ids: self.col_ids[kl..kh].iter().map(|&c| c - lo).collect(),
            col_ptrs: self.col_ptrs[kl..=kh].iter().map(|&p| p - el).collect(),
            row_ids: self.row_ids[el..eh].to_vec(),
            vals: self.vals[el..eh].to_vec(),
            aux: None,
        }
    }

    /// Concatenates column-disjoint pieces into one matrix of `ncols`
    /// columns. Each piece is placed at its column offset; offsets must be
    /// increasing and pieces must fit.
    pub fn assemble_from_col_pieces(
        nrows: usize,
        ncols: usize,
        pieces: &[(usize, &DcscMatrix<T>)],
    ) -> Result<Self> {
        let mut out = DcscMatrix::empty(nrows, ncols);
        for &(off, piece) in pieces {
            if piece.nrows != nrows || off + piece.ncols > ncols {
                return Err(Error::Malformed(
                    "column piece does not fit the assembly target".into(),
                ));
            }
            if let Some(&last) = out.col_ids.last() {
                if !piece.col_ids.is_empty() && off + piece.col_ids[0] <= last {
                    return Err(Error::Malformed(
                        "column pieces overlap or are out of order".into(),
                    ));
                }
            }
            let base = out.row_ids.len();
            for (k, &c) in piece.col_ids.iter().enumerate() {
                out.col_ids.push(off + c);
                out.col_ptrs.push(base + piece.col_ptrs[k + 1]);
            }
            out.row_ids.extend_from_slice(&piece.row_ids);
            out.vals.extend_from_slice(&piece.vals);
        }
        // col_ptrs currently holds [0, end_0, end_1, ...] which is already
        // the offsets array.
        Ok(out)
    }

    /// `(column id, nnz)` for every nonempty column.
    pub fn col_counts(&self) -> Vec<(usize, usize)> {
        (0..self.nzc())
            .map(|k| (self.col_ids[k], self.col_len_at(k)))
            .collect()
    }

    /// `(row id, nnz)` for every nonempty row, sorted by row id. Computed
    /// by sorting a copy of the row indices: O(nnz·lg nnz), no dependence
    /// on the row dimension.
    pub fn row_counts(&self) -> Vec<(usize, usize)> {
        let mut rows = self.row_ids.clone();
        rows.sort_unstable();
        let mut out: Vec<(usize, usize)> = Vec::new();
        for r in rows {
            match out.last_mut() {
                Some(&mut (lr, ref mut n)) if lr == r => *n += 1,
                _ => out.push((r, 1)),
            }
        }
        out
    }

    pub fn stats(&self) -> MatrixStats {
        MatrixStats {
            nrows: self.nrows,
            ncols: self.ncols,
            nnz: self.nnz(),
            nzc: self.nzc(),
            nzr: self.row_counts().len(),
        }
    }

    pub fn check_invariants(&self) -> Result<()> {
        let nzc = self.col_ids.len();
        if self.col_ptrs.len() != nzc + 1 {
            return Err(Error::Malformed("col_ptrs length != nzc + 1".into()));
        }
        if self.col_ptrs[0] != 0 || *self.col_ptrs.last().unwrap() != self.vals.len() {
            return Err(Error::Malformed("col_ptrs endpoints".into()));
        }
        if self.row_ids.len() != self.vals.len() {
            return Err(Error::Malformed("row/value length mismatch".into()));
        }
        for k in 0..nzc {
            if self.col_ids[k] >= self.ncols {
                return Err(Error::Malformed(format!("column id {} out of range", k)));
            }
            if k > 0 && self.col_ids[k - 1] >= self.col_ids[k] {
                return Err(Error::Malformed("col_ids not strictly increasing".into()));
            }
            if self.col_ptrs[k] >= self.col_ptrs[k + 1] {
                return Err(Error::Malformed(format!(
                    "listed column {} is empty",
                    self.col_ids[k]
                )));
            }
            for i in self.col_ptrs[k]..self.col_ptrs[k + 1] {
                if self.row_ids[i] >= self.nrows {
                    return Err(Error::Malformed(format!("row id out of range at {i}")));
                }
                if i > self.col_ptrs[k] && self.row_ids[i - 1] >= self.row_ids[i] {
                    return Err(Error::Malformed(format!(
                        "rows not strictly increasing in column {}",
                        self.col_ids[k]
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Real;

    fn example_9x9() -> TriplesMatrix<f64> {
        let mut t = TriplesMatrix::new(9, 9);
        t.push(5, 0, 0.1);
        t.push(7, 0, 0.2);
        t.push(3, 6, 0.3);
        t.push(1, 7, 0.4);
        t.normalize::<Real>();
        t
    }

    #[test]
    fn example_compression() {
        // in 1-based terms: JC = [1,7,8], CP = [1,3,4,5], IR = [6,8,4,2]
        let d = DcscMatrix::from_triples(&example_9x9()).unwrap();
        assert_eq!(d.col_ids(), &[0, 6, 7]);
        assert_eq!(d.col_ptrs(), &[0, 2, 3, 4]);
        assert_eq!(d.row_ids(), &[5, 7, 3, 1]);
        assert_eq!(d.values(), &[0.1, 0.2, 0.3, 0.4]);
        d.check_invariants().unwrap();
    }

    #[test]
    fn empty_matrix() {
        let t = TriplesMatrix::<f64>::new(4, 4);
        let d = DcscMatrix::from_triples(&t).unwrap();
        assert_eq!(d.nzc(), 0);
        assert_eq!(d.col_ptrs(), &[0]);
        assert_eq!(d.nnz(), 0);
        d.check_invariants().unwrap();
    }

    #[test]
    fn identity_compression() {
        let n = 6;
        let mut t = TriplesMatrix::new(n, n);
        for i in 0..n {
            t.push(i, i, 1.0);
        }
        t.normalize::<Real>();
        let d = DcscMatrix::from_triples(&t).unwrap();
        assert_eq!(d.col_ids(), &(0..n).collect::<Vec<_>>()[..]);
        assert_eq!(d.col_ptrs(), &(0..=n).collect::<Vec<_>>()[..]);
        assert_eq!(d.row_ids(), &(0..n).collect::<Vec<_>>()[..]);
    }

    #[test]
    fn round_trip_matches() {
        let t = example_9x9();
        let d = DcscMatrix::from_triples(&t).unwrap();
        let back = d.to_triples();
        assert_eq!(back, t);
        assert_eq!(DcscMatrix::from_triples(&back).unwrap(), d);
    }

    #[test]
    fn storage_is_dimension_free() {
        let t = example_9x9();
        let d = DcscMatrix::from_triples(&t).unwrap();
        assert_eq!(d.index_storage(), 2 * d.nzc() + 1 + d.nnz());

        let padded = t.padded(90, 90).unwrap();
        let dp = DcscMatrix::from_triples(&padded).unwrap();
        assert_eq!(dp.index_storage(), d.index_storage());
    }

    #[test]
    fn aux_resolves_columns() {
        // chunk width = ceil(9/3) = 3; column 6 sits in chunk 2.
        let mut d = DcscMatrix::from_triples(&example_9x9()).unwrap();
        d.build_aux();
        let aux = d.aux().unwrap();
        assert_eq!(aux.chunk_width(), 3);
        assert_eq!(d.lookup_col(6), Some(1));
        assert_eq!(d.lookup_col(0), Some(0));
        assert_eq!(d.lookup_col(7), Some(2));
        assert_eq!(d.lookup_col(3), None);
        assert_eq!(d.lookup_col(42), None);
    }

    #[test]
    fn aux_on_identity() {
        let mut t = TriplesMatrix::new(5, 5);
        for i in 0..5 {
            t.push(i, i, 1.0);
        }
        t.normalize::<Real>();
        let mut d = DcscMatrix::from_triples(&t).unwrap();
        d.build_aux();
        for c in 0..5 {
            assert_eq!(d.lookup_col(c), Some(c));
        }
    }

    #[test]
    fn aux_on_empty() {
        let mut d = DcscMatrix::<f64>::empty(4, 4);
        d.build_aux();
        assert!(d.aux().unwrap().ptrs().is_empty());
        assert_eq!(d.lookup_col(2), None);
    }

    #[test]
    fn transpose_swaps_ids() {
        let d = DcscMatrix::from_triples(&example_9x9()).unwrap();
        let dt = d.transpose();
        // new nonempty columns are the original row ids
        assert_eq!(dt.col_ids(), &[1, 3, 5, 7]);
        dt.check_invariants().unwrap();
        assert_eq!(dt.transpose(), d);
    }

    #[test]
    fn transpose_of_symmetric_is_identity() {
        let mut t = TriplesMatrix::new(4, 4);
        t.push(0, 1, 2.0);
        t.push(1, 0, 2.0);
        t.push(2, 2, 5.0);
        t.normalize::<Real>();
        let d = DcscMatrix::from_triples(&t).unwrap();
        assert_eq!(d.transpose(), d);
    }

    #[test]
    fn extract_and_assemble() {
        let d = DcscMatrix::from_triples(&example_9x9()).unwrap();
        let left = d.extract_col_range(0, 4);
        let right = d.extract_col_range(4, 9);
        assert_eq!(left.nnz() + right.nnz(), d.nnz());
        let whole =
            DcscMatrix::assemble_from_col_pieces(9, 9, &[(0, &left), (4, &right)]).unwrap();
        assert_eq!(whole, d);
    }

    #[test]
    fn counts() {
        let d = DcscMatrix::from_triples(&example_9x9()).unwrap();
        assert_eq!(d.col_counts(), vec![(0, 2), (6, 1), (7, 1)]);
        assert_eq!(d.row_counts(), vec![(1, 1), (3, 1), (5, 1), (7, 1)]);
        let s = d.stats();
        assert_eq!((s.nnz, s.nzc, s.nzr), (4, 3, 4));
        assert!(s.is_hypersparse());
    }
}
