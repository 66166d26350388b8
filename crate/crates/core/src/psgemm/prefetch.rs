//! Stage plan for overlapping communication with computation by splitting
//! submatrices in half.

use crate::error::Result;
use crate::grid::GridConfig;

/// One stage of the split-prefetch plan: multiply one half-block while
/// fetching the next half. Block indices are relative to the processor's
/// own rotation order; halves are 0 (first) and 1 (second).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrefetchStage {
    pub multiply_block: usize,
    pub multiply_half: usize,
    /// Half-block to start fetching during this stage, if any remains.
    pub fetch: Option<(usize, usize)>,
    /// The first stage also fetches its own half before multiplying.
    pub initial_fetch: bool,
}

/// Emits the `2√p`-stage plan: with operands split in half, each
/// processor performs `2√p` half-block multiply-adds instead of `√p`,
/// fetching each half exactly once (the first via the stage-0 prologue,
/// every later one as the prefetch of the preceding stage). Consumed by
/// the overlap analysis of the performance model, not by a runtime.
pub fn split_prefetch_schedule(grid: GridConfig) -> Result<Vec<PrefetchStage>> {
    let side = grid.require_square()?;
    let stages = 2 * side;
    Ok((0..stages)
        .map(|s| {
            let next = s + 1;
            PrefetchStage {
                multiply_block: s / 2,
                multiply_half: s % 2,
                fetch: (next < stages).then_some((next / 2, next % 2)),
                initial_fetch: s == 0,
            }
        })
        .collect())
}
