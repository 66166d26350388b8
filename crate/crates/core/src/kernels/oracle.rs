//! Brute-force reference multiplication.

use crate::error::{Error, Result};
use crate::formats::TriplesMatrix;
use crate::semiring::Semiring;

const ORACLE_DIM_CAP: usize = 1024;

/// Inner-product triple loop over dense scratch arrays: the defining
/// formula of matrix multiplication, evaluated literally. Ground truth for
/// kernel tests; capped at dimension 1024 to keep it test-scale.
pub fn dense_oracle<S: Semiring>(
    a: &TriplesMatrix<S::Scalar>,
    b: &TriplesMatrix<S::Scalar>,
) -> Result<Vec<Vec<S::Scalar>>> {
    let dim = a.nrows().max(a.ncols()).max(b.nrows()).max(b.ncols());
    if dim > ORACLE_DIM_CAP {
        return Err(Error::OracleTooLarge {
            dim,
            cap: ORACLE_DIM_CAP,
        });
    }
    if a.ncols() != b.nrows() {
        return Err(Error::DimensionMismatch {
            left_rows: a.nrows(),
            left_cols: a.ncols(),
            right_rows: b.nrows(),
            right_cols: b.ncols(),
        });
    }
    let mut da = vec![vec![S::zero(); a.ncols()]; a.nrows()];
    for &(r, c, v) in a.entries() {
        da[r][c] = v;
    }
    let mut db = vec![vec![S::zero(); b.ncols()]; b.nrows()];
    for &(r, c, v) in b.entries() {
        db[r][c] = v;
    }
    let mut out = vec![vec![S::zero(); b.ncols()]; a.nrows()];
    for i in 0..a.nrows() {
        for j in 0..b.ncols() {
            let mut acc = S::zero();
            for l in 0..a.ncols() {
                acc = S::add(acc, S::mul(da[i][l], db[l][j]));
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

/// Oracle product as normalized triples, zeros pruned.
pub fn oracle_product<S: Semiring>(
    a: &TriplesMatrix<S::Scalar>,
    b: &TriplesMatrix<S::Scalar>,
) -> Result<TriplesMatrix<S::Scalar>> {
    let dense = dense_oracle::<S>(a, b)?;
    let mut t = TriplesMatrix::new(a.nrows(), b.ncols());
    for (i, row) in dense.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !S::is_zero(v) {
                t.push(i, j, *v);
            }
        }
    }
    t.sort_col_major();
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Boolean, Real};

    #[test]
    fn zero_times_anything_is_zero() {
        let z = TriplesMatrix::<f64>::new(3, 3);
        let b = TriplesMatrix::from_entries(3, 3, vec![(0, 0, 5.0), (2, 1, 1.0)]).unwrap();
        let c = oracle_product::<Real>(&z, &b).unwrap();
        assert_eq!(c.nnz(), 0);
    }

    #[test]
    fn identity_times_b_is_b() {
        let mut id = TriplesMatrix::new(3, 3);
        for i in 0..3 {
            id.push(i, i, 1.0);
        }
        let mut b = TriplesMatrix::from_entries(3, 2, vec![(2, 0, 4.0), (0, 1, -1.0)]).unwrap();
        b.normalize::<Real>();
        let c = oracle_product::<Real>(&id, &b).unwrap();
        assert_eq!(c, b);
    }

    #[test]
    fn boolean_pattern_oracle() {
        let a = TriplesMatrix::from_entries(2, 2, vec![(0, 0, true), (1, 0, true)]).unwrap();
        let b = TriplesMatrix::from_entries(2, 2, vec![(0, 1, true)]).unwrap();
        let c = oracle_product::<Boolean>(&a, &b).unwrap();
        assert_eq!(c.entries(), &[(0, 1, true), (1, 1, true)]);
    }

    #[test]
    fn cap_is_enforced() {
        let a = TriplesMatrix::<f64>::new(2000, 2000);
        assert!(matches!(
            dense_oracle::<Real>(&a, &a),
            Err(Error::OracleTooLarge { .. })
        ));
    }
}
