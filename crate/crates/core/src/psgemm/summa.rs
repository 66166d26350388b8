//! Sparse SUMMA: stage-wise panel broadcasts on a (possibly rectangular)
//! processor grid.

use crate::error::{Error, Result};
use crate::formats::{DcscMatrix, TriplesMatrix};
use crate::grid::DistMatrix;
use crate::kernels::hypersparse_spgemm;
use crate::psgemm::{proc_order, BlockAccumulator, ExecOptions, StageLedger};
use crate::semiring::Semiring;

/// Multiplies two identically gridded distributed matrices by stage-wise
/// broadcasts: at stage `t`, the owners of inner-dimension columns
/// `[t·b, (t+1)·b)` broadcast their slice of A along their processor row
/// and their slice of B along their processor column; every processor
/// multiplies the assembled panels and accumulates into its C block.
///
/// `blocking` is the panel width `b`; the default of `⌈k/√p⌉` makes each
/// stage move exactly one block column/row. Narrower panels raise the
/// stage count and lower per-stage memory without changing the result or
/// the total flop count. Handles inner dimensions that do not divide
/// evenly: a panel straddling two owners is assembled from both pieces.
pub fn sparse_summa<S: Semiring>(
    a: &DistMatrix<S::Scalar>,
    b: &DistMatrix<S::Scalar>,
    blocking: Option<usize>,
    opts: &ExecOptions,
) -> Result<(DistMatrix<S::Scalar>, StageLedger)> {
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
    let grid = a.grid();
    let (pr, pc) = (grid.rows(), grid.cols());
    let k = a.ncols();
    let panel = match blocking {
        Some(0) => return Err(Error::InvalidParams("blocking must be positive".into())),
        Some(b) => b,
        None => k.div_ceil(pc).max(1),
    };
    let stages = if k == 0 { 0 } else { k.div_ceil(panel) };
    let mut ledger = StageLedger::new(grid, stages);

    // row access to B comes from transposed blocks, built once and reused
    // by every stage that slices them
    let bt_blocks: Vec<DcscMatrix<S::Scalar>> =
        b.blocks().iter().map(|blk| blk.transpose()).collect();

    let mut accs: Vec<BlockAccumulator<S>> = (0..grid.p())
        .map(|_| BlockAccumulator::new(opts.merge_threshold))
        .collect();

    for stage in 0..stages {
        let lo = stage * panel;
        let hi = (lo + panel).min(k);
        let width = hi - lo;

        // broadcast A panel pieces along processor rows
        let mut a_panels: Vec<DcscMatrix<S::Scalar>> = Vec::with_capacity(pr);
        for i in 0..pr {
            let mut pieces: Vec<(usize, DcscMatrix<S::Scalar>)> = Vec::new();
            for owner in 0..pc {
                let (c0, c1) = (a.col_bounds()[owner], a.col_bounds()[owner + 1]);
                let (s0, s1) = (lo.max(c0), hi.min(c1));
                if s0 >= s1 {
                    continue;
                }
                let piece = a.block(i, owner).extract_col_range(s0 - c0, s1 - c0);
                let words = piece.nnz() as u64;
                if words > 0 {
                    ledger.at_mut(i * pc + owner, stage).words_sent += words * (pc as u64 - 1);
                    for j in 0..pc {
                        if j != owner {
                            ledger.at_mut(i * pc + j, stage).words_recv += words;
                        }
                    }
                }
                pieces.push((s0 - lo, piece));
            }
            let refs: Vec<(usize, &DcscMatrix<S::Scalar>)> =
                pieces.iter().map(|(off, p)| (*off, p)).collect();
            a_panels.push(DcscMatrix::assemble_from_col_pieces(
                a.row_bounds()[i + 1] - a.row_bounds()[i],
                width,
                &refs,
            )?);
        }

        // broadcast transposed B panel pieces down processor columns
        let mut bt_panels: Vec<DcscMatrix<S::Scalar>> = Vec::with_capacity(pc);
        for j in 0..pc {
            let mut pieces: Vec<(usize, DcscMatrix<S::Scalar>)> = Vec::new();
            for owner in 0..pr {
                let (r0, r1) = (b.row_bounds()[owner], b.row_bounds()[owner + 1]);
                let (s0, s1) = (lo.max(r0), hi.min(r1));
                if s0 >= s1 {
                    continue;
                }
                let piece = bt_blocks[owner * pc + j].extract_col_range(s0 - r0, s1 - r0);
                let words = piece.nnz() as u64;
                if words > 0 {
                    ledger.at_mut(owner * pc + j, stage).words_sent += words * (pr as u64 - 1);
                    for i in 0..pr {
                        if i != owner {
                            ledger.at_mut(i * pc + j, stage).words_recv += words;
                        }
                    }
                }
                pieces.push((s0 - lo, piece));
            }
            let refs: Vec<(usize, &DcscMatrix<S::Scalar>)> =
                pieces.iter().map(|(off, p)| (*off, p)).collect();
            bt_panels.push(DcscMatrix::assemble_from_col_pieces(
                b.col_bounds()[j + 1] - b.col_bounds()[j],
                width,
                &refs,
            )?);
        }

        // local multiply-accumulate, in scheduler order
        for proc in proc_order(grid.p(), opts.schedule_seed, stage) {
            let (i, j) = (proc / pc, proc % pc);
            let (product, tally) = hypersparse_spgemm::<S>(&a_panels[i], &bt_panels[j])?;
            let rec = ledger.at_mut(proc, stage);
            rec.flops += tally.flops;
            rec.adds += tally.adds;
            rec.heap_ops += tally.heap_ops;
            let merge_adds = accs[proc].push_batch(product.to_triples().into_entries());
            ledger.at_mut(proc, stage).adds += merge_adds;
        }
    }

    finalize_blocks::<S>(a, b, accs, &mut ledger, stages.saturating_sub(1))
        .map(|c| (c, ledger))
}

/// Drains accumulators into a distributed result, charging flush
/// additions to `last_stage`.
pub(crate) fn finalize_blocks<S: Semiring>(
    a: &DistMatrix<S::Scalar>,
    b: &DistMatrix<S::Scalar>,
    accs: Vec<BlockAccumulator<S>>,
    ledger: &mut StageLedger,
    last_stage: usize,
) -> Result<DistMatrix<S::Scalar>> {
    let grid = a.grid();
    let pc = grid.cols();
    let mut blocks = Vec::with_capacity(grid.p());
    for (proc, acc) in accs.into_iter().enumerate() {
        let (i, j) = (proc / pc, proc % pc);
        let (entries, adds) = acc.finalize();
        if ledger.stages() > 0 {
            ledger.at_mut(proc, last_stage).adds += adds;
        }
        let local = TriplesMatrix::from_entries(
            a.row_bounds()[i + 1] - a.row_bounds()[i],
            b.col_bounds()[j + 1] - b.col_bounds()[j],
            entries,
        )?;
        blocks.push(DcscMatrix::from_triples(&local)?);
    }
    DistMatrix::from_parts(a.nrows(), b.ncols(), grid, blocks)
}
