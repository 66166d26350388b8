//! Summary counts used by the decomposition and scaling studies.

/// Entry and nonempty-line counts of a (sub)matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixStats {
    pub nrows: usize,
    pub ncols: usize,
    pub nnz: usize,
    /// Columns holding at least one nonzero.
    pub nzc: usize,
    /// Rows holding at least one nonzero.
    pub nzr: usize,
}

impl MatrixStats {
    /// A matrix is hypersparse when it has fewer nonzeros than its larger
    /// dimension. Dimension-proportional storage and column scans are then
    /// asymptotically wasteful.
    pub fn is_hypersparse(&self) -> bool {
        self.nnz < self.nrows.max(self.ncols)
    }

    /// Mean nonzeros per column of the ambient dimension.
    pub fn nnz_per_col(&self) -> f64 {
        if self.ncols == 0 {
            0.0
        } else {
            self.nnz as f64 / self.ncols as f64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypersparse_threshold() {
        let s = MatrixStats {
            nrows: 10,
            ncols: 10,
            nnz: 9,
            nzc: 5,
            nzr: 5,
        };
        assert!(s.is_hypersparse());
        let s = MatrixStats { nnz: 10, ..s };
        assert!(!s.is_hypersparse());
    }
}
