//! Simulated parallel runs with ledger export.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use clap::{Args, ValueEnum};

use hypersparse::formats::{read_matrix_market, write_matrix_market, TriplesMatrix};
use hypersparse::generators::{apply_sym_perm, random_permutation};
use hypersparse::grid::DistMatrix;
use hypersparse::psgemm::{
    block_row_1d, cannon_accounting, imbalance_study, sparse_cannon, sparse_summa, trial_perm_seed,
    ExecOptions, MemoryMode, StageLedger,
};
use hypersparse::semiring::{Boolean, Real, Semiring, Tropical};
use hypersparse::{Error, Result};

use super::multiply::convert;
use super::{parse_grid, SemiringChoice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Summa,
    Cannon,
    /// 1D block-row; needs a Px1 grid.
    #[value(name = "1d")]
    OneD,
}

#[derive(Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    /// Processor grid, e.g. 4x4 (or 4x1 for the 1D algorithm).
    #[arg(long)]
    pub grid: String,
    #[arg(long, value_enum)]
    pub algo: Algo,
    #[arg(long, value_enum, default_value_t = SemiringChoice::Real)]
    pub semiring: SemiringChoice,
    /// SUMMA panel width; defaults to the block width.
    #[arg(long)]
    pub blocking: Option<usize>,
    /// Memory regime of the 1D algorithm.
    #[arg(long, value_enum, default_value_t = Memory::Streamed)]
    pub memory: Memory,
    /// Apply a seeded random symmetric relabeling to both operands first.
    #[arg(long)]
    pub permute: bool,
    /// With --permute and algo=cannon: run this many relabeling trials,
    /// accounting only, and report the median-imbalance trial.
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Result matrix path (.mtx); not written in multi-trial mode.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Ledger CSV path.
    #[arg(long)]
    pub ledger: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Memory {
    Streamed,
    Replicated,
}

fn run_as<S: Semiring>(
    a: &TriplesMatrix<S::Scalar>,
    b: &TriplesMatrix<S::Scalar>,
    args: &SimulateArgs,
) -> Result<(TriplesMatrix<S::Scalar>, StageLedger)> {
    let grid = parse_grid(&args.grid)?;
    let opts = ExecOptions {
        schedule_seed: args.seed,
        ..ExecOptions::default()
    };
    let (c, ledger) = match args.algo {
        Algo::Summa => {
            let da = DistMatrix::distribute_2d(a, grid)?;
            let db = DistMatrix::distribute_2d(b, grid)?;
            sparse_summa::<S>(&da, &db, args.blocking, &opts)?
        }
        Algo::Cannon => {
            let da = DistMatrix::distribute_2d(a, grid)?;
            let db = DistMatrix::distribute_2d(b, grid)?;
            sparse_cannon::<S>(&da, &db, &opts)?
        }
        Algo::OneD => {
            if grid.cols() != 1 {
                return Err(Error::InvalidParams(
                    "the 1D algorithm needs a Px1 grid".into(),
                ));
            }
            let da = DistMatrix::distribute_1d_rows(a, grid.rows())?;
            let db = DistMatrix::distribute_1d_rows(b, grid.rows())?;
            let mode = match args.memory {
                Memory::Streamed => MemoryMode::Streamed,
                Memory::Replicated => MemoryMode::Replicated,
            };
            block_row_1d::<S>(&da, &db, mode, &opts)?
        }
    };
    Ok((c.reassemble(), ledger))
}

fn write_ledger(ledger: &StageLedger, path: &PathBuf) -> Result<()> {
    let file = BufWriter::new(File::create(path)?);
    ledger.write_csv(file)
}

pub fn run(args: SimulateArgs) -> Result<()> {
    if let Some(out) = &args.out {
        super::validate_out_path(out)?;
    }
    super::validate_out_path(&args.ledger)?;
    super::log_config(format_args!(
        "simulate a={} b={} grid={} algo={:?} semiring={:?} blocking={:?} memory={:?} \
         permute={} trials={} seed={} ledger={}",
        args.a.display(),
        args.b.display(),
        args.grid,
        args.algo,
        args.semiring,
        args.blocking,
        args.memory,
        args.permute,
        args.trials,
        args.seed,
        args.ledger.display()
    ));
    let mut a = read_matrix_market(&args.a)?;
    let mut b = read_matrix_market(&args.b)?;

    if args.trials > 1 {
        // multi-trial imbalance study (accounting only)
        if !args.permute {
            return Err(Error::InvalidParams(
                "--trials above 1 requires --permute".into(),
            ));
        }
        if args.algo != Algo::Cannon {
            return Err(Error::InvalidParams(
                "the imbalance study runs on algo=cannon".into(),
            ));
        }
        let grid = parse_grid(&args.grid)?;
        let study = imbalance_study(&a, &b, grid, args.trials, args.seed)?;
        // export the ledger of the median trial
        let perm = random_permutation(a.nrows(), trial_perm_seed(args.seed, study.median_trial));
        let ap = apply_sym_perm(&a, &perm)?;
        let bp = apply_sym_perm(&b, &perm)?;
        let ledger = cannon_accounting(&ap, &bp, grid)?;
        write_ledger(&ledger, &args.ledger)?;
        println!(
            "trials={} overall_lambda={:?}",
            args.trials,
            study
                .overall_per_trial
                .iter()
                .map(|x| format!("{x:.4}"))
                .collect::<Vec<_>>()
        );
        println!(
            "median_trial={} lambda_overall={:.4} lambda_stage_mean={:.4}",
            study.median_trial, study.report.overall, study.report.mean_per_stage
        );
        return Ok(());
    }

    if args.permute {
        let perm = random_permutation(a.nrows(), args.seed);
        a = apply_sym_perm(&a, &perm)?;
        b = apply_sym_perm(&b, &perm)?;
    }

    let ledger = match args.semiring {
        SemiringChoice::Real => {
            let (ca, cb) = (convert::<Real>(&a, |v| v), convert::<Real>(&b, |v| v));
            let (c, ledger) = run_as::<Real>(&ca, &cb, &args)?;
            if let Some(out) = &args.out {
                write_matrix_market(&c, out)?;
            }
            ledger
        }
        SemiringChoice::Tropical => {
            let (ca, cb) = (convert::<Tropical>(&a, |v| v), convert::<Tropical>(&b, |v| v));
            let (c, ledger) = run_as::<Tropical>(&ca, &cb, &args)?;
            if let Some(out) = &args.out {
                write_matrix_market(&c, out)?;
            }
            ledger
        }
        SemiringChoice::Boolean => {
            let (ca, cb) = (
                convert::<Boolean>(&a, |v| v != 0.0),
                convert::<Boolean>(&b, |v| v != 0.0),
            );
            let (c, ledger) = run_as::<Boolean>(&ca, &cb, &args)?;
            if let Some(out) = &args.out {
                let mut real = TriplesMatrix::with_capacity(c.nrows(), c.ncols(), c.nnz());
                for &(r, cc, _) in c.entries() {
                    real.push(r, cc, 1.0);
                }
                write_matrix_market(&real, out)?;
            }
            ledger
        }
    };

    write_ledger(&ledger, &args.ledger)?;
    let report = ledger.imbalance();
    println!(
        "algo={:?} grid={} stages={} total_flops={}",
        args.algo,
        args.grid,
        ledger.stages(),
        ledger.total_flops()
    );
    println!(
        "lambda_overall={:.6} lambda_stage_mean={:.6}",
        report.overall, report.mean_per_stage
    );
    Ok(())
}
