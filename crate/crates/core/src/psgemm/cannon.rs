//! Sparse Cannon: skew-aligned multiply-and-shift rounds on a square grid.

use crate::error::{Error, Result};
use crate::formats::DcscMatrix;
use crate::grid::DistMatrix;
use crate::kernels::hypersparse_spgemm;
use crate::psgemm::summa::finalize_blocks;
use crate::psgemm::{proc_order, BlockAccumulator, ExecOptions, StageLedger};
use crate::semiring::Semiring;

/// Multiplies two identically gridded distributed matrices with Cannon's
/// schedule: processor `(i, j)` starts from the skew-aligned layout
/// (row `i` of A rotated left by `i`, column `j` of B rotated up by `j`)
/// and performs `√p` multiply rounds, circularly shifting its A block one
/// processor left and its B block one processor up between rounds.
///
/// The initial alignment is a data-layout relabeling; the ledger charges
/// the `√p − 1` interleaved neighbor shifts, each a point-to-point message
/// whose word count is the nnz of the forwarded block. B blocks travel in
/// transposed form, ready for the row-access side of the kernel, so each
/// block is transposed exactly once for its `√p` uses.
pub fn sparse_cannon<S: Semiring>(
    a: &DistMatrix<S::Scalar>,
    b: &DistMatrix<S::Scalar>,
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
    let side = a.grid().require_square()?;
    if a.ncols() != b.nrows() {
        return Err(Error::DimensionMismatch {
            left_rows: a.nrows(),
            left_cols: a.ncols(),
            right_rows: b.nrows(),
            right_cols: b.ncols(),
        });
    }
    let grid = a.grid();
    let p = grid.p();
    let mut ledger = StageLedger::new(grid, side);

    // skew-aligned working sets
    let mut a_cur: Vec<DcscMatrix<S::Scalar>> = (0..p)
        .map(|proc| {
            let (i, j) = (proc / side, proc % side);
            a.block(i, (i + j) % side).clone()
        })
        .collect();
    let mut bt_cur: Vec<DcscMatrix<S::Scalar>> = (0..p)
        .map(|proc| {
            let (i, j) = (proc / side, proc % side);
            b.block((i + j) % side, j).transpose()
        })
        .collect();

    let mut accs: Vec<BlockAccumulator<S>> = (0..p)
        .map(|_| BlockAccumulator::new(opts.merge_threshold))
        .collect();

    for stage in 0..side {
        for proc in proc_order(p, opts.schedule_seed, stage) {
            let (product, tally) = hypersparse_spgemm::<S>(&a_cur[proc], &bt_cur[proc])?;
            let rec = ledger.at_mut(proc, stage);
            rec.flops += tally.flops;
            rec.adds += tally.adds;
            rec.heap_ops += tally.heap_ops;
            let merge_adds = accs[proc].push_batch(product.to_triples().into_entries());
            ledger.at_mut(proc, stage).adds += merge_adds;
        }

        if stage + 1 < side {
            // point-to-point shifts: A one left, B one up
            for proc in 0..p {
                let (i, j) = (proc / side, proc % side);
                let a_words = a_cur[proc].nnz() as u64;
                let b_words = bt_cur[proc].nnz() as u64;
                ledger.at_mut(proc, stage).words_sent += a_words + b_words;
                let left = i * side + (j + side - 1) % side;
                let up = ((i + side - 1) % side) * side + j;
                ledger.at_mut(left, stage).words_recv += a_words;
                ledger.at_mut(up, stage).words_recv += b_words;
            }
            let rotate = |cur: Vec<DcscMatrix<S::Scalar>>, row_shift: bool| {
                (0..p)
                    .map(|proc| {
                        let (i, j) = (proc / side, proc % side);
                        let src = if row_shift {
                            i * side + (j + 1) % side
                        } else {
                            ((i + 1) % side) * side + j
                        };
                        cur[src].clone()
                    })
                    .collect::<Vec<_>>()
            };
            a_cur = rotate(a_cur, true);
            bt_cur = rotate(bt_cur, false);
        }
    }

    finalize_blocks::<S>(a, b, accs, &mut ledger, side - 1).map(|c| (c, ledger))
}
