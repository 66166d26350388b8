//! Per-processor, per-stage accounting of computation and communication.

use std::io::Write;

use crate::error::Result;
use crate::grid::GridConfig;

/// Counters for one processor at one stage. Communication is counted in
/// words, one word per transmitted nonzero, charged per
/// (sender, recipient) pair.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StageRecord {
    pub flops: u64,
    pub adds: u64,
    pub words_sent: u64,
    pub words_recv: u64,
    pub heap_ops: u64,
    /// Sparse-accumulator load/unload traffic (1D streamed mode only);
    /// exposes the per-stage reinitialization cost that keeps that
    /// algorithm's per-processor work constant in p.
    pub spa_ops: u64,
}

impl StageRecord {
    pub fn merge(&mut self, other: &StageRecord) {
        self.flops += other.flops;
        self.adds += other.adds;
        self.words_sent += other.words_sent;
        self.words_recv += other.words_recv;
        self.heap_ops += other.heap_ops;
        self.spa_ops += other.spa_ops;
    }
}

/// Load imbalance of a run: the ratio of the maximum per-processor flop
/// count to the mean, overall and per stage. A stage with no flops at all
/// counts as perfectly balanced.
#[derive(Clone, Debug, PartialEq)]
pub struct ImbalanceReport {
    pub overall: f64,
    pub per_stage: Vec<f64>,
    pub mean_per_stage: f64,
}

/// Ledger of a simulated run: `stages × p` stage records.
#[derive(Clone, Debug, PartialEq)]
pub struct StageLedger {
    grid: GridConfig,
    stages: usize,
    records: Vec<StageRecord>, // indexed stage * p + proc
}

impl StageLedger {
    pub fn new(grid: GridConfig, stages: usize) -> Self {
        StageLedger {
            grid,
            stages,
            records: vec![StageRecord::default(); stages * grid.p()],
        }
    }

    pub fn grid(&self) -> GridConfig {
        self.grid
    }

    pub fn stages(&self) -> usize {
        self.stages
    }

    pub fn at(&self, proc: usize, stage: usize) -> &StageRecord {
        &self.records[stage * self.grid.p() + proc]
    }

    pub fn at_mut(&mut self, proc: usize, stage: usize) -> &mut StageRecord {
        &mut self.records[stage * self.grid.p() + proc]
    }

    /// Totals per processor across stages.
    pub fn proc_totals(&self) -> Vec<StageRecord> {
        let p = self.grid.p();
        let mut totals = vec![StageRecord::default(); p];
        for stage in 0..self.stages {
            for (proc, total) in totals.iter_mut().enumerate() {
                total.merge(self.at(proc, stage));
            }
        }
        totals
    }

    /// Grand total across processors and stages.
    pub fn total(&self) -> StageRecord {
        let mut total = StageRecord::default();
        for r in &self.records {
            total.merge(r);
        }
        total
    }

    pub fn total_flops(&self) -> u64 {
        self.records.iter().map(|r| r.flops).sum()
    }

    fn lambda(flops: impl Iterator<Item = u64> + Clone) -> f64 {
        let count = flops.clone().count();
        if count == 0 {
            return 1.0;
        }
        let sum: u64 = flops.clone().sum();
        if sum == 0 {
            return 1.0;
        }
        let max = flops.max().unwrap_or(0) as f64;
        max / (sum as f64 / count as f64)
    }

    /// Flop-count imbalance, overall and stage by stage.
    pub fn imbalance(&self) -> ImbalanceReport {
        let p = self.grid.p();
        let totals = self.proc_totals();
        let overall = Self::lambda(totals.iter().map(|r| r.flops));
        let per_stage: Vec<f64> = (0..self.stages)
            .map(|s| Self::lambda((0..p).map(|proc| self.at(proc, s).flops)))
            .collect();
        let mean_per_stage = if per_stage.is_empty() {
            1.0
        } else {
            per_stage.iter().sum::<f64>() / per_stage.len() as f64
        };
        ImbalanceReport {
            overall,
            per_stage,
            mean_per_stage,
        }
    }

    /// CSV export: one row per (processor, stage), sorted by processor
    /// coordinates then stage.
    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "proc_i,proc_j,stage,flops,adds,words_sent,words_recv")?;
        let cols = self.grid.cols();
        for proc in 0..self.grid.p() {
            let (pi, pj) = (proc / cols, proc % cols);
            for stage in 0..self.stages {
                let r = self.at(proc, stage);
                writeln!(
                    w,
                    "{pi},{pj},{stage},{},{},{},{}",
                    r.flops, r.adds, r.words_sent, r.words_recv
                )?;
            }
        }
        Ok(())
    }
}
