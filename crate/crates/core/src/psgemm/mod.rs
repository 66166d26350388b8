//! Simulated parallel SpGEMM executors.
//!
//! Three algorithms on a logical processor grid, all built on the same
//! contract: every virtual processor owns its blocks, interaction happens
//! only through explicit messages, and the result plus all ledger totals
//! are independent of the order processors are stepped in. The runtime
//! here is a deterministic sequential scheduler; [`ExecOptions::schedule_seed`]
//! shuffles the per-stage processor order to demonstrate that independence.
//!
//! * [`sparse_summa`]: stage-wise broadcasts of column panels of A along
//!   processor rows and row panels of B along processor columns; blocking
//!   width trades stage count against message size.
//! * [`sparse_cannon`]: skew-aligned start, then multiply-and-shift
//!   rounds with point-to-point neighbor messages on a square grid.
//! * [`block_row_1d`]: the 1D block-row algorithm, either streaming B
//!   one block per stage through a sparse accumulator or replicating all
//!   of B at each processor first.
//!
//! Stage results accumulate into each output block as unmerged triple
//! batches that are merged lazily once the buffered entries exceed
//! [`ExecOptions::merge_threshold`] times the merged size.

mod block_row;
mod cannon;
mod imbalance;
mod ledger;
mod prefetch;
mod summa;

pub use block_row::{block_row_1d, MemoryMode};
pub use cannon::sparse_cannon;
pub use imbalance::{cannon_accounting, imbalance_study, trial_perm_seed, ImbalanceStudy};
pub use ledger::{ImbalanceReport, StageLedger, StageRecord};
pub use prefetch::{split_prefetch_schedule, PrefetchStage};
pub use summa::sparse_summa;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::semiring::Semiring;

/// Execution knobs for the simulated runtimes.
#[derive(Clone, Copy, Debug)]
pub struct ExecOptions {
    /// Seed for the per-stage processor stepping order. Any value yields
    /// the same result and ledger; varying it exercises that invariant.
    pub schedule_seed: u64,
    /// Merge buffered stage outputs once they exceed this multiple of the
    /// accumulated block's entry count.
    pub merge_threshold: f64,
}

impl Default for ExecOptions {
    fn default() -> Self {
        ExecOptions {
            schedule_seed: 0,
            merge_threshold: 4.0,
        }
    }
}

/// Processor stepping order for one stage of the sequential scheduler.
fn proc_order(p: usize, seed: u64, stage: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (stage as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    order.shuffle(&mut rng);
    order
}

/// Lazily merged accumulator for one output block.
///
/// Batches arrive as column-major sorted triples; they are buffered and
/// folded into the accumulated list with a two-list sorted merge once the
/// buffer crosses the threshold. Zeros produced by cancellation are kept
/// until finalization so later contributions still combine with them.
struct BlockAccumulator<S: Semiring> {
    acc: Vec<(usize, usize, S::Scalar)>,
    pending: Vec<Vec<(usize, usize, S::Scalar)>>,
    pending_len: usize,
    threshold: f64,
}

impl<S: Semiring> BlockAccumulator<S> {
    fn new(threshold: f64) -> Self {
        BlockAccumulator {
            acc: Vec::new(),
            pending: Vec::new(),
            pending_len: 0,
            threshold,
        }
    }

    /// Buffers one stage result. Returns the semiring additions performed
    /// if the threshold triggered a merge.
    fn push_batch(&mut self, batch: Vec<(usize, usize, S::Scalar)>) -> u64 {
        if batch.is_empty() {
            return 0;
        }
        self.pending_len += batch.len();
        self.pending.push(batch);
        if self.pending_len as f64 > self.threshold * self.acc.len() as f64 {
            self.merge_pending()
        } else {
            0
        }
    }

    fn merge_pending(&mut self) -> u64 {
        let mut adds = 0u64;
        for batch in std::mem::take(&mut self.pending) {
            adds += self.merge_one(batch);
        }
        self.pending_len = 0;
        adds
    }

    fn merge_one(&mut self, batch: Vec<(usize, usize, S::Scalar)>) -> u64 {
        let mut adds = 0u64;
        let mut merged = Vec::with_capacity(self.acc.len() + batch.len());
        let (mut i, mut j) = (0, 0);
        while i < self.acc.len() && j < batch.len() {
            let ka = (self.acc[i].1, self.acc[i].0);
            let kb = (batch[j].1, batch[j].0);
            match ka.cmp(&kb) {
                std::cmp::Ordering::Less => {
                    merged.push(self.acc[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    merged.push(batch[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    adds += 1;
                    merged.push((
                        self.acc[i].0,
                        self.acc[i].1,
                        S::add(self.acc[i].2, batch[j].2),
                    ));
                    i += 1;
                    j += 1;
                }
            }
        }
        merged.extend_from_slice(&self.acc[i..]);
        merged.extend_from_slice(&batch[j..]);
        self.acc = merged;
        adds
    }

    /// Merges whatever is still buffered, prunes exact zeros, and returns
    /// the final sorted entries plus the additions the flush performed.
    fn finalize(mut self) -> (Vec<(usize, usize, S::Scalar)>, u64) {
        let adds = self.merge_pending();
        self.acc.retain(|(_, _, v)| !S::is_zero(v));
        (self.acc, adds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Real;

    #[test]
    fn accumulator_merges_equal_keys() {
        let mut acc = BlockAccumulator::<Real>::new(4.0);
        acc.push_batch(vec![(0, 0, 1.0), (2, 0, 2.0)]);
        acc.push_batch(vec![(2, 0, 3.0), (1, 1, 4.0)]);
        let (entries, _) = acc.finalize();
        assert_eq!(entries, vec![(0, 0, 1.0), (2, 0, 5.0), (1, 1, 4.0)]);
    }

    #[test]
    fn accumulator_prunes_cancellation_only_at_finalize() {
        let mut acc = BlockAccumulator::<Real>::new(1000.0);
        acc.push_batch(vec![(0, 0, 1.0)]);
        acc.push_batch(vec![(0, 0, -1.0)]);
        acc.push_batch(vec![(0, 0, 5.0)]);
        let (entries, _) = acc.finalize();
        assert_eq!(entries, vec![(0, 0, 5.0)]);
    }

    #[test]
    fn proc_order_is_a_permutation() {
        let order = proc_order(9, 123, 4);
        let mut sorted = order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..9).collect::<Vec<_>>());
    }
}
