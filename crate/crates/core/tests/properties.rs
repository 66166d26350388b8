//! Property tests: format round trips and kernel agreement on random
//! inputs.

use proptest::prelude::*;

use hypersparse::formats::{CscMatrix, DcscMatrix, TriplesMatrix};
use hypersparse::kernels::{
    count_flops, gustavson_spgemm, multiply_dcsc, oracle_product,
};
use hypersparse::semiring::{Boolean, Real, Tropical};

fn arb_matrix(max_dim: usize, max_nnz: usize) -> impl Strategy<Value = TriplesMatrix<f64>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(nrows, ncols)| {
        proptest::collection::vec(
            (0..nrows, 0..ncols, -4i8..=4),
            0..=max_nnz,
        )
        .prop_map(move |entries| {
            let mut t = TriplesMatrix::new(nrows, ncols);
            for (r, c, v) in entries {
                t.push(r, c, v as f64);
            }
            t.normalize::<Real>();
            t
        })
    })
}

fn arb_pair(
    max_dim: usize,
    max_nnz: usize,
) -> impl Strategy<Value = (TriplesMatrix<f64>, TriplesMatrix<f64>)> {
    (1..=max_dim, 1..=max_dim, 1..=max_dim).prop_flat_map(move |(m, k, n)| {
        let a = proptest::collection::vec((0..m, 0..k, 1i8..=4), 0..=max_nnz).prop_map(
            move |entries| {
                let mut t = TriplesMatrix::new(m, k);
                for (r, c, v) in entries {
                    t.push(r, c, v as f64);
                }
                t.normalize::<Real>();
                t
            },
        );
        let b = proptest::collection::vec((0..k, 0..n, 1i8..=4), 0..=max_nnz).prop_map(
            move |entries| {
                let mut t = TriplesMatrix::new(k, n);
                for (r, c, v) in entries {
                    t.push(r, c, v as f64);
                }
                t.normalize::<Real>();
                t
            },
        );
        (a, b)
    })
}

proptest! {
    #[test]
    fn conversions_preserve_entries(t in arb_matrix(40, 120)) {
        let d = DcscMatrix::from_triples(&t).unwrap();
        d.check_invariants().unwrap();
        prop_assert_eq!(d.to_triples(), t.clone());
        let c = CscMatrix::from_triples(&t).unwrap();
        c.check_invariants().unwrap();
        prop_assert_eq!(c.to_triples(), t.clone());
        prop_assert_eq!(DcscMatrix::from_csc(&c), d.clone());
        prop_assert_eq!(d.to_csc(), c);
        // the storage identity holds for every matrix
        prop_assert_eq!(d.index_storage(), 2 * d.nzc() + 1 + d.nnz());
    }

    #[test]
    fn transpose_is_an_involution(t in arb_matrix(40, 120)) {
        let d = DcscMatrix::from_triples(&t).unwrap();
        let dt = d.transpose();
        dt.check_invariants().unwrap();
        prop_assert_eq!(dt.transpose(), d);
    }

    #[test]
    fn aux_lookup_agrees_with_linear_search(t in arb_matrix(60, 80)) {
        let mut d = DcscMatrix::from_triples(&t).unwrap();
        d.build_aux();
        for c in 0..d.ncols() {
            let expect = d.col_ids().iter().position(|&x| x == c);
            prop_assert_eq!(d.lookup_col(c), expect);
        }
    }

    #[test]
    fn kernels_agree_with_oracle(pair in arb_pair(24, 60)) {
        let (a, b) = pair;
        let expect = oracle_product::<Real>(&a, &b).unwrap();

        let ac = CscMatrix::from_triples(&a).unwrap();
        let bc = CscMatrix::from_triples(&b).unwrap();
        let (c_classic, t_classic) = gustavson_spgemm::<Real>(&ac, &bc).unwrap();
        prop_assert_eq!(c_classic.to_triples(), expect.clone());

        let ad = DcscMatrix::from_triples(&a).unwrap();
        let bd = DcscMatrix::from_triples(&b).unwrap();
        let (c_hyper, t_hyper) = multiply_dcsc::<Real>(&ad, &bd).unwrap();
        // output honors all structural invariants: strictly increasing
        // nonempty-column ids, strictly increasing rows per column
        c_hyper.check_invariants().unwrap();
        prop_assert_eq!(c_hyper.to_triples(), expect.clone());

        // exact flop identity, and the output can never exceed it
        let flops = count_flops(&ad, &bd);
        prop_assert_eq!(t_classic.flops, flops);
        prop_assert_eq!(t_hyper.flops, flops);
        prop_assert!(expect.nnz() as u64 <= flops);
    }
}

/// The worked 6x6 pattern pair: A's nonempty columns are {1,2,3,4,6} and
/// B's nonempty rows are {1,3,4,5,6} (1-based), so only {1,3,4,6}
/// participate in the product.
fn pattern_pair() -> (TriplesMatrix<bool>, TriplesMatrix<bool>) {
    // 0-based columns {0,1,2,3,5} nonempty, column 4 empty
    let a_rows: [&[usize]; 6] = [&[0, 3], &[0, 1], &[2, 3, 5], &[0, 3], &[1], &[2]];
    let mut a = TriplesMatrix::new(6, 6);
    for (r, cols) in a_rows.iter().enumerate() {
        for &c in cols.iter() {
            a.push(r, c, true);
        }
    }
    a.normalize::<Boolean>();
    // 0-based rows {0,2,3,4,5} nonempty, row 1 empty
    let b_cols: [&[usize]; 6] = [&[0, 3], &[], &[0, 3], &[1, 4, 5], &[2, 4, 5], &[3, 4, 5]];
    let mut b = TriplesMatrix::new(6, 6);
    for (r, cols) in b_cols.iter().enumerate() {
        for &c in cols.iter() {
            b.push(r, c, true);
        }
    }
    b.normalize::<Boolean>();
    (a, b)
}

#[test]
fn pattern_product_intersects_only_participating_indices() {
    let (a, b) = pattern_pair();
    let ad = DcscMatrix::from_triples(&a).unwrap();
    let bd = DcscMatrix::from_triples(&b).unwrap();
    let bt = bd.transpose();
    assert_eq!(ad.col_ids(), &[0, 1, 2, 3, 5]);
    assert_eq!(bt.col_ids(), &[0, 2, 3, 4, 5]);
    let isect = hypersparse::kernels::intersect_indices(ad.col_ids(), bt.col_ids());
    assert_eq!(isect.indices, vec![0, 2, 3, 5]);

    let expect = oracle_product::<Boolean>(&a, &b).unwrap();
    let (c, _) = multiply_dcsc::<Boolean>(&ad, &bd).unwrap();
    assert_eq!(c.to_triples(), expect);

    let ac = CscMatrix::from_triples(&a).unwrap();
    let bc = CscMatrix::from_triples(&b).unwrap();
    let (cc, _) = gustavson_spgemm::<Boolean>(&ac, &bc).unwrap();
    assert_eq!(cc.to_triples(), expect);
}

#[test]
fn hypersparse_random_pairs_match_oracle() {
    // 200 hypersparse pairs: n = 256 with nnz in [0, 64]
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for case in 0..200 {
        let nnz_a = rng.gen_range(0..=64);
        let nnz_b = rng.gen_range(0..=64);
        let mut a = TriplesMatrix::new(256, 256);
        for _ in 0..nnz_a {
            a.push(rng.gen_range(0..256), rng.gen_range(0..256), rng.gen_range(1..=4) as f64);
        }
        a.normalize::<Real>();
        let mut b = TriplesMatrix::new(256, 256);
        for _ in 0..nnz_b {
            b.push(rng.gen_range(0..256), rng.gen_range(0..256), rng.gen_range(1..=4) as f64);
        }
        b.normalize::<Real>();

        let expect = oracle_product::<Real>(&a, &b).unwrap();
        let ad = DcscMatrix::from_triples(&a).unwrap();
        let bd = DcscMatrix::from_triples(&b).unwrap();
        let (c, _) = multiply_dcsc::<Real>(&ad, &bd).unwrap();
        assert_eq!(c.to_triples(), expect, "case {case}");
    }
}

#[test]
fn tropical_kernels_agree_with_oracle() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let n = rng.gen_range(2..40);
        let nnz = rng.gen_range(0..4 * n);
        let mut a = TriplesMatrix::new(n, n);
        for _ in 0..nnz {
            a.push(
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(1..100) as f64,
            );
        }
        a.normalize::<Tropical>();
        let expect = oracle_product::<Tropical>(&a, &a).unwrap();
        let ad = DcscMatrix::from_triples(&a).unwrap();
        let (c, _) = multiply_dcsc::<Tropical>(&ad, &ad).unwrap();
        assert_eq!(c.to_triples(), expect);
    }
}

#[test]
fn matrix_market_round_trips_generated_matrix() {
    use hypersparse::formats::{read_matrix_market, write_matrix_market};
    use hypersparse::generators::{gen_rmat, RmatParams};
    let a = gen_rmat(&RmatParams::new(8, 2)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rmat8.mtx");
    write_matrix_market(&a, &path).unwrap();
    let back = read_matrix_market(&path).unwrap();
    assert_eq!(back, a);
}

#[test]
fn dimension_padding_leaves_hypersparse_work_unchanged() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(88);
    let mut a = TriplesMatrix::new(128, 128);
    let mut b = TriplesMatrix::new(128, 128);
    for _ in 0..96 {
        a.push(rng.gen_range(0..128), rng.gen_range(0..128), 1.0);
        b.push(rng.gen_range(0..128), rng.gen_range(0..128), 1.0);
    }
    a.normalize::<Real>();
    b.normalize::<Real>();

    let run = |a: &TriplesMatrix<f64>, b: &TriplesMatrix<f64>| {
        let ad = DcscMatrix::from_triples(a).unwrap();
        let bd = DcscMatrix::from_triples(b).unwrap();
        let (_, hyper) = multiply_dcsc::<Real>(&ad, &bd).unwrap();
        let ac = CscMatrix::from_triples(a).unwrap();
        let bc = CscMatrix::from_triples(b).unwrap();
        let (_, classic) = gustavson_spgemm::<Real>(&ac, &bc).unwrap();
        (hyper, classic)
    };
    let (h0, c0) = run(&a, &b);
    let (h1, c1) = run(&a.padded(1280, 1280).unwrap(), &b.padded(1280, 1280).unwrap());

    // dimension-free kernel: identical work on the padded embedding
    assert_eq!(h0.hypersparse_work(), h1.hypersparse_work());
    assert_eq!(h0.flops, h1.flops);
    // classical kernel: dimension scans grow exactly tenfold
    assert_eq!(c1.dim_scans, 10 * c0.dim_scans);
}
