//! 1D block-row algorithm, in both memory regimes.

use crate::error::{Error, Result};
use crate::formats::{CscMatrix, DcscMatrix, TriplesMatrix};
use crate::grid::DistMatrix;
use crate::kernels::{gustavson_spgemm, Spa};
use crate::psgemm::{proc_order, ExecOptions, StageLedger};
use crate::semiring::Semiring;

/// Memory regime of the 1D algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MemoryMode {
    /// B arrives one block row per stage; every output row is loaded into
    /// and unloaded from the sparse accumulator at every stage. Memory
    /// stays at one block of B, but the accumulator traffic per processor
    /// (`spa_ops`) is dimension-proportional and does not shrink with p.
    Streamed,
    /// All of B is broadcast and assembled at each processor first, then
    /// one local multiply runs. Costs `(p−1)·nnz(B)/p` received words per
    /// processor on average and `nnz(B)` memory.
    Replicated,
}

/// Multiplies two block-row distributed matrices on `p` virtual
/// processors: processor `i` computes `C_i = A_i · B`.
pub fn block_row_1d<S: Semiring>(
    a: &DistMatrix<S::Scalar>,
    b: &DistMatrix<S::Scalar>,
    mode: MemoryMode,
    opts: &ExecOptions,
) -> Result<(DistMatrix<S::Scalar>, StageLedger)> {
    if a.grid().cols() != 1 || b.grid().cols() != 1 {
        return Err(Error::InvalidParams(
            "1D executor needs block-row (p x 1) distributions".into(),
        ));
    }
    if a.grid() != b.grid() {
        return Err(Error::GridMismatch {
            left_rows: a.grid().rows(),
            left_cols: a.grid().cols(),
            right_rows: b.grid().rows(),
            right_cols: b.grid().cols(),
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
    match mode {
        MemoryMode::Replicated => replicated::<S>(a, b, opts),
        MemoryMode::Streamed => streamed::<S>(a, b, opts),
    }
}

fn replicated<S: Semiring>(
    a: &DistMatrix<S::Scalar>,
    b: &DistMatrix<S::Scalar>,
    opts: &ExecOptions,
) -> Result<(DistMatrix<S::Scalar>, StageLedger)> {
    let grid = a.grid();
    let p = grid.rows();
    let mut ledger = StageLedger::new(grid, 1);

    // all-to-all broadcast of B's block rows
    let block_nnz: Vec<u64> = (0..p).map(|j| b.block(j, 0).nnz() as u64).collect();
    let total_b: u64 = block_nnz.iter().sum();
    for (i, &nnz) in block_nnz.iter().enumerate() {
        let rec = ledger.at_mut(i, 0);
        rec.words_sent += nnz * (p as u64 - 1);
        rec.words_recv += total_b - nnz;
    }

    let b_full = CscMatrix::from_triples(&b.reassemble())?;
    let mut blocks: Vec<Option<DcscMatrix<S::Scalar>>> = (0..p).map(|_| None).collect();
    for proc in proc_order(p, opts.schedule_seed, 0) {
        let a_local = a.block(proc, 0).to_csc();
        let (c_local, tally) = gustavson_spgemm::<S>(&a_local, &b_full)?;
        let rec = ledger.at_mut(proc, 0);
        rec.flops += tally.flops;
        rec.adds += tally.adds;
        blocks[proc] = Some(DcscMatrix::from_csc(&c_local));
    }
    let blocks: Vec<DcscMatrix<S::Scalar>> = blocks.into_iter().map(|b| b.unwrap()).collect();
    let c = DistMatrix::from_parts(a.nrows(), b.ncols(), grid, blocks)?;
    Ok((c, ledger))
}

fn streamed<S: Semiring>(
    a: &DistMatrix<S::Scalar>,
    b: &DistMatrix<S::Scalar>,
    opts: &ExecOptions,
) -> Result<(DistMatrix<S::Scalar>, StageLedger)> {
    let grid = a.grid();
    let p = grid.rows();
    let n_out = b.ncols();
    let mut ledger = StageLedger::new(grid, p);

    // row access to each A_i via its transpose, built once per processor
    let a_t: Vec<DcscMatrix<S::Scalar>> =
        (0..p).map(|i| a.block(i, 0).transpose()).collect();
    // per-processor output rows (each a sparse (col, val) list)
    type SparseRow<T> = Vec<(usize, T)>;
    let mut rows: Vec<Vec<SparseRow<S::Scalar>>> = (0..p)
        .map(|i| vec![Vec::new(); a.block(i, 0).nrows()])
        .collect();
    let mut spas: Vec<Spa<S::Scalar>> = (0..p).map(|_| Spa::new(n_out, S::zero())).collect();
    for i in 0..p {
        // dense value + flag allocation, charged once
        ledger.at_mut(i, 0).spa_ops += n_out as u64;
    }

    for stage in 0..p {
        let owner_block = b.block(stage, 0);
        let bt = {
            let mut bt = owner_block.transpose();
            bt.build_aux(); // repeated row lookups below
            bt
        };
        let words = owner_block.nnz() as u64;
        if words > 0 {
            ledger.at_mut(stage, 0).words_sent += words * (p as u64 - 1);
            for i in 0..p {
                if i != stage {
                    ledger.at_mut(i, 0).words_recv += words;
                }
            }
        }
        let (l0, l1) = (b.row_bounds()[stage], b.row_bounds()[stage + 1]);

        for proc in proc_order(p, opts.schedule_seed, stage) {
            let rec_base = proc;
            let at = &a_t[proc];
            let spa = &mut spas[proc];
            let mut flops = 0u64;
            let mut adds = 0u64;
            let mut spa_ops = 0u64;
            for (r, row) in rows[proc].iter_mut().enumerate() {
                // load current C_i(r, :), even when this stage contributes
                // nothing; that is the cost profile of the streamed mode
                spa_ops += 1 + row.len() as u64;
                for &(c, v) in row.iter() {
                    spa.accumulate::<S>(c, v);
                }
                if let Some(kr) = at.lookup_col(r) {
                    let (lo, hi) = (at.col_ptrs()[kr], at.col_ptrs()[kr + 1]);
                    let ids = &at.row_ids()[lo..hi];
                    let start = lo + ids.partition_point(|&l| l < l0);
                    let end = lo + ids.partition_point(|&l| l < l1);
                    for e in start..end {
                        let l = at.row_ids()[e];
                        let av = at.values()[e];
                        if let Some(kb) = bt.lookup_col(l - l0) {
                            for (c, bv) in bt.col_at(kb) {
                                flops += 1;
                                if spa.accumulate::<S>(c, S::mul(av, bv)) {
                                    adds += 1;
                                }
                            }
                        }
                    }
                }
                let mut fresh = Vec::with_capacity(spa.len());
                spa.drain_sorted::<S>(|c, v| fresh.push((c, v)));
                spa_ops += fresh.len() as u64;
                *row = fresh;
            }
            let rec = ledger.at_mut(rec_base, stage);
            rec.flops += flops;
            rec.adds += adds;
            rec.spa_ops += spa_ops;
        }
    }

    let mut blocks = Vec::with_capacity(p);
    for (i, proc_rows) in rows.into_iter().enumerate() {
        let m_i = a.block(i, 0).nrows();
        let mut t = TriplesMatrix::new(m_i, n_out);
        for (r, row) in proc_rows.into_iter().enumerate() {
            for (c, v) in row {
                t.push(r, c, v);
            }
        }
        t.sort_col_major();
        blocks.push(DcscMatrix::from_triples(&t)?);
    }
    let c = DistMatrix::from_parts(a.nrows(), b.ncols(), grid, blocks)?;
    Ok((c, ledger))
}
