//! Deterministic synthetic matrix generators.
//!
//! All generators are pure functions of their parameters and a 64-bit
//! seed, driven by the counter-based ChaCha8 stream cipher, so the same
//! seed yields a bit-identical matrix on every platform. Duplicate draws
//! are merged additively (values accumulate), so realized entry counts sit
//! slightly below the nominal target.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formats::TriplesMatrix;
use crate::semiring::Real;

/// Parameters of the recursive Kronecker (R-MAT) generator.
///
/// Each of `⌊avg_degree·n⌋` edge draws descends `scale` levels, picking a
/// quadrant with probabilities `(a, b, c, d)` at every level. The default
/// skew is `a = 0.6` with the remaining mass split evenly over the other
/// three quadrants (`b = c = d ≈ 0.13`), which yields scale-free degree
/// distributions.
#[derive(Clone, Copy, Debug)]
pub struct RmatParams {
    /// Matrix dimension is `2^scale`.
    pub scale: u32,
    /// Expected nonzeros per column before duplicate merging.
    pub avg_degree: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub seed: u64,
}

impl RmatParams {
    pub fn new(scale: u32, seed: u64) -> Self {
        RmatParams {
            scale,
            avg_degree: 8.0,
            a: 0.6,
            b: 0.4 / 3.0,
            c: 0.4 / 3.0,
            d: 0.4 / 3.0,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.scale < 1 {
            return Err(Error::InvalidParams("scale must be at least 1".into()));
        }
        let sum = self.a + self.b + self.c + self.d;
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParams(format!(
                "quadrant probabilities sum to {sum}, expected 1"
            )));
        }
        if [self.a, self.b, self.c, self.d].iter().any(|&q| q < 0.0) {
            return Err(Error::InvalidParams(
                "quadrant probabilities must be non-negative".into(),
            ));
        }
        if self.avg_degree <= 0.0 {
            return Err(Error::InvalidParams("avg_degree must be positive".into()));
        }
        Ok(())
    }
}

/// Generates a scale-free adjacency matrix by repeated quadrant descent.
/// Duplicate edges sum, so `nnz ≤ ⌊avg_degree·n⌋`.
pub fn gen_rmat(p: &RmatParams) -> Result<TriplesMatrix<f64>> {
    p.validate()?;
    let n = 1usize << p.scale;
    let draws = (p.avg_degree * n as f64).floor() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut t = TriplesMatrix::with_capacity(n, n, draws);
    let ab = p.a + p.b;
    let abc = ab + p.c;
    for _ in 0..draws {
        let (mut row, mut col) = (0usize, 0usize);
        for _ in 0..p.scale {
            let r: f64 = rng.gen();
            let (rbit, cbit) = if r < p.a {
                (0, 0)
            } else if r < ab {
                (0, 1)
            } else if r < abc {
                (1, 0)
            } else {
                (1, 1)
            };
            row = (row << 1) | rbit;
            col = (col << 1) | cbit;
        }
        t.push(row, col, 1.0);
    }
    t.normalize::<Real>();
    Ok(t)
}

/// Uniform random matrix: `nnz_target` positions drawn i.i.d. over the
/// n×n grid, duplicates merged.
pub fn gen_erdos_renyi(n: usize, nnz_target: usize, seed: u64) -> Result<TriplesMatrix<f64>> {
    if n == 0 {
        return Err(Error::InvalidParams("dimension must be positive".into()));
    }
    if nnz_target > n.saturating_mul(n) {
        return Err(Error::InvalidParams(format!(
            "nnz target {nnz_target} exceeds n^2 = {}",
            n * n
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = TriplesMatrix::with_capacity(n, n, nnz_target);
    for _ in 0..nnz_target {
        let row = rng.gen_range(0..n);
        let col = rng.gen_range(0..n);
        t.push(row, col, 1.0);
    }
    t.normalize::<Real>();
    Ok(t)
}

/// Laplacian of the k×k×k 7-point finite-difference mesh: every vertex
/// couples to itself and its up-to-six axis neighbors. Exactly
/// `7k³ − 6k²` entries, symmetric.
pub fn gen_grid3d(k: usize) -> Result<TriplesMatrix<f64>> {
    if k < 2 {
        return Err(Error::InvalidParams("grid3d needs k >= 2".into()));
    }
    let n = k * k * k;
    let id = |x: usize, y: usize, z: usize| (z * k + y) * k + x;
    let mut t = TriplesMatrix::with_capacity(n, n, 7 * n);
    for z in 0..k {
        for y in 0..k {
            for x in 0..k {
                let v = id(x, y, z);
                t.push(v, v, 6.0);
                if x > 0 {
                    t.push(v, id(x - 1, y, z), -1.0);
                }
                if x + 1 < k {
                    t.push(v, id(x + 1, y, z), -1.0);
                }
                if y > 0 {
                    t.push(v, id(x, y - 1, z), -1.0);
                }
                if y + 1 < k {
                    t.push(v, id(x, y + 1, z), -1.0);
                }
                if z > 0 {
                    t.push(v, id(x, y, z - 1), -1.0);
                }
                if z + 1 < k {
                    t.push(v, id(x, y, z + 1), -1.0);
                }
            }
        }
    }
    t.normalize::<Real>();
    Ok(t)
}

/// Uniformly random permutation of `[0, n)` via Fisher–Yates.
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

/// Permutation matrix P with `P(perm[i], i) = 1`, so `P·A·Pᵀ` relabels
/// entry `(i, j)` to `(perm[i], perm[j])`.
pub fn permutation_matrix(perm: &[usize]) -> Result<TriplesMatrix<f64>> {
    validate_permutation(perm)?;
    let n = perm.len();
    let mut t = TriplesMatrix::with_capacity(n, n, n);
    for (i, &pi) in perm.iter().enumerate() {
        t.push(pi, i, 1.0);
    }
    t.normalize::<Real>();
    Ok(t)
}

fn validate_permutation(perm: &[usize]) -> Result<()> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidPermutation { n });
        }
        seen[p] = true;
    }
    Ok(())
}

/// Symmetric relabeling `(i, j) ↦ (perm[i], perm[j])` of a square matrix:
/// the triple product `P·A·Pᵀ` without forming P. Preserves nnz.
pub fn apply_sym_perm<T>(a: &TriplesMatrix<T>, perm: &[usize]) -> Result<TriplesMatrix<T>>
where
    T: Copy + PartialEq + std::fmt::Debug,
{
    if a.nrows() != a.ncols() || a.nrows() != perm.len() {
        return Err(Error::InvalidParams(format!(
            "symmetric permutation needs a square matrix matching the permutation length \
             (matrix {}x{}, permutation {})",
            a.nrows(),
            a.ncols(),
            perm.len()
        )));
    }
    validate_permutation(perm)?;
    let entries: Vec<(usize, usize, T)> = a
        .entries()
        .iter()
        .map(|&(r, c, v)| (perm[r], perm[c], v))
        .collect();
    let mut out = TriplesMatrix::from_entries(a.nrows(), a.ncols(), entries)?;
    out.sort_col_major();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rmat_is_deterministic() {
        let p = RmatParams::new(8, 42);
        assert_eq!(gen_rmat(&p).unwrap(), gen_rmat(&p).unwrap());
        let other = RmatParams::new(8, 43);
        assert_ne!(gen_rmat(&p).unwrap(), gen_rmat(&other).unwrap());
    }

    #[test]
    fn rmat_degenerate_quadrant_collapses_to_origin() {
        let p = RmatParams {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 0.0,
            ..RmatParams::new(1, 3)
        };
        let t = gen_rmat(&p).unwrap();
        assert_eq!(t.nnz(), 1);
        assert_eq!(t.entries()[0].0, 0);
        assert_eq!(t.entries()[0].1, 0);
        // all 16 draws merged into one summed entry
        assert_eq!(t.entries()[0].2, 16.0);
    }

    #[test]
    fn rmat_rejects_bad_probabilities() {
        let p = RmatParams {
            a: 0.7,
            ..RmatParams::new(4, 0)
        };
        assert!(gen_rmat(&p).is_err());
    }

    #[test]
    fn rmat_scale15_nnz_near_nominal() {
        let t = gen_rmat(&RmatParams::new(15, 11)).unwrap();
        let n = 1 << 15;
        let nominal = 8.0 * n as f64;
        assert!(
            (t.nnz() as f64) > 0.85 * nominal && (t.nnz() as f64) <= nominal,
            "nnz {} not within 15% of {nominal}",
            t.nnz()
        );
    }

    #[test]
    fn rmat_degree_distribution_is_skewed() {
        let t = gen_rmat(&RmatParams::new(15, 5)).unwrap();
        let n = 1 << 15;
        let mut col_deg = vec![0usize; n];
        for &(_, c, _) in t.entries() {
            col_deg[c] += 1;
        }
        let max = *col_deg.iter().max().unwrap() as f64;
        let mean = t.nnz() as f64 / n as f64;
        assert!(
            max > 10.0 * mean,
            "max column degree {max} not > 10x mean {mean}"
        );
    }

    #[test]
    fn erdos_renyi_column_counts_near_binomial() {
        let n = 1000;
        let t = gen_erdos_renyi(n, 8 * n, 9).unwrap();
        let mut col_deg = vec![0usize; n];
        for &(_, c, _) in t.entries() {
            col_deg[c] += 1;
        }
        let mean = col_deg.iter().sum::<usize>() as f64 / n as f64;
        assert!((mean - 8.0).abs() < 0.5, "mean {mean}");
        // chi-square against the Poisson(mean) approximation of the
        // binomial column-count distribution, on coarse bins
        let lambda = mean;
        let pois = |k: usize| -> f64 {
            let mut p = (-lambda).exp();
            for i in 1..=k {
                p *= lambda / i as f64;
            }
            p
        };
        let bins: &[(usize, usize)] = &[(0, 4), (5, 6), (7, 8), (9, 10), (11, usize::MAX)];
        let mut chi2 = 0.0;
        for &(lo, hi) in bins {
            let observed = col_deg
                .iter()
                .filter(|&&d| d >= lo && d <= hi)
                .count() as f64;
            let mut expect_p = 0.0;
            if hi == usize::MAX {
                expect_p = 1.0 - (0..lo).map(pois).sum::<f64>();
            } else {
                for k in lo..=hi {
                    expect_p += pois(k);
                }
            }
            let expected = expect_p * n as f64;
            chi2 += (observed - expected).powi(2) / expected.max(1e-9);
        }
        // 4 degrees of freedom; 0.999 quantile is about 18.5
        assert!(chi2 < 18.5, "chi-square {chi2}");
    }

    #[test]
    fn erdos_renyi_extremes() {
        assert_eq!(gen_erdos_renyi(10, 0, 1).unwrap().nnz(), 0);
        let full = gen_erdos_renyi(4, 16, 1).unwrap();
        assert!(full.nnz() <= 16);
        assert!(gen_erdos_renyi(4, 17, 1).is_err());
    }

    #[test]
    fn grid3d_entry_count_formula() {
        for k in 2..=6 {
            let t = gen_grid3d(k).unwrap();
            assert_eq!(t.nnz(), 7 * k * k * k - 6 * k * k, "k = {k}");
        }
    }

    #[test]
    fn grid3d_k2_has_32_entries() {
        let t = gen_grid3d(2).unwrap();
        assert_eq!(t.nrows(), 8);
        assert_eq!(t.nnz(), 32);
    }

    #[test]
    fn grid3d_is_symmetric_and_center_row_full() {
        let t = gen_grid3d(3).unwrap();
        assert_eq!(t.transpose(), t);
        let id = |x: usize, y: usize, z: usize| (z * 3 + y) * 3 + x;
        let center = id(1, 1, 1);
        let row_len = t.entries().iter().filter(|&&(r, _, _)| r == center).count();
        assert_eq!(row_len, 7);
    }

    #[test]
    fn permutation_matrix_shape() {
        let perm = random_permutation(12, 4);
        let p = permutation_matrix(&perm).unwrap();
        assert_eq!(p.nnz(), 12);
        let mut row_seen = [0usize; 12];
        let mut col_seen = [0usize; 12];
        for &(r, c, v) in p.entries() {
            assert_eq!(v, 1.0);
            row_seen[r] += 1;
            col_seen[c] += 1;
        }
        assert!(row_seen.iter().all(|&x| x == 1));
        assert!(col_seen.iter().all(|&x| x == 1));
    }

    #[test]
    fn sym_perm_identity_and_inverse() {
        let a = gen_grid3d(2).unwrap();
        let identity: Vec<usize> = (0..a.nrows()).collect();
        assert_eq!(apply_sym_perm(&a, &identity).unwrap(), a);

        let perm = random_permutation(a.nrows(), 77);
        let mut inverse = vec![0usize; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let relabeled = apply_sym_perm(&a, &perm).unwrap();
        assert_eq!(relabeled.nnz(), a.nnz());
        assert_eq!(apply_sym_perm(&relabeled, &inverse).unwrap(), a);
    }

    #[test]
    fn sym_perm_rejects_non_bijections() {
        let a = gen_grid3d(2).unwrap();
        let bad = vec![0usize; a.nrows()];
        assert!(matches!(
            apply_sym_perm(&a, &bad),
            Err(Error::InvalidPermutation { .. })
        ));
    }
}
