//! Performance-model sweeps as CSV.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, ValueEnum};

use hypersparse::perfmodel::{write_model_csv, ModelKind, PerfParams};
use hypersparse::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelChoice {
    #[value(name = "1d")]
    OneD,
    #[value(name = "2d")]
    TwoD,
    Overlap,
    All,
}

#[derive(Args)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value_t = ModelChoice::All)]
    pub model: ModelChoice,
    /// Smallest matrix dimension as log2(n).
    #[arg(long, default_value_t = 17)]
    pub scale_min: u32,
    /// Largest matrix dimension as log2(n).
    #[arg(long, default_value_t = 24)]
    pub scale_max: u32,
    /// Nonzeros per row/column of the uniform model.
    #[arg(long, default_value_t = 8)]
    pub c: u32,
    /// Largest processor count of the sweep; the 1D model walks powers of
    /// two, the 2D models powers of four (square grids).
    #[arg(long, default_value_t = 4096)]
    pub p_max: usize,
    /// Per-flop cost of the classical kernel, ns.
    #[arg(long, default_value_t = 293.6)]
    pub gamma_classical: f64,
    /// Per-flop cost of the dimension-free kernel, ns.
    #[arg(long, default_value_t = 19.2)]
    pub gamma_hypersparse: f64,
    /// Link bandwidth, GB/s.
    #[arg(long, default_value_t = 1.0)]
    pub bandwidth: f64,
    /// Per-message latency, ns.
    #[arg(long, default_value_t = 2300.0)]
    pub alpha: f64,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: ModelArgs) -> Result<()> {
    super::validate_out_path(&args.out)?;
    super::log_config(format_args!(
        "model model={:?} scales={}..={} c={} p_max={} gamma_classical={} \
         gamma_hypersparse={} bandwidth={} alpha={} out={}",
        args.model,
        args.scale_min,
        args.scale_max,
        args.c,
        args.p_max,
        args.gamma_classical,
        args.gamma_hypersparse,
        args.bandwidth,
        args.alpha,
        args.out.display()
    ));
    if args.scale_min > args.scale_max {
        return Err(Error::InvalidParams("scale-min exceeds scale-max".into()));
    }
    let params = PerfParams {
        gamma_classical_ns: args.gamma_classical,
        gamma_hypersparse_ns: args.gamma_hypersparse,
        alpha_ns: args.alpha,
        ..PerfParams::default()
    }
    .with_bandwidth_gb_per_s(args.bandwidth);

    let kinds: &[ModelKind] = match args.model {
        ModelChoice::OneD => &[ModelKind::OneD],
        ModelChoice::TwoD => &[ModelKind::TwoD],
        ModelChoice::Overlap => &[ModelKind::Overlap],
        ModelChoice::All => &[ModelKind::OneD, ModelKind::TwoD, ModelKind::Overlap],
    };
    let mut w = BufWriter::new(File::create(&args.out)?);
    write_model_csv(
        &mut w,
        &params,
        kinds,
        args.scale_min..=args.scale_max,
        args.c as f64,
        args.p_max,
    )?;
    w.flush()?;
    println!("wrote {}", args.out.display());
    Ok(())
}
