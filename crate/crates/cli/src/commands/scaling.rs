//! Kernel-scaling study: submatrix products replayed at increasing grid
//! sizes.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::Args;

use hypersparse::formats::read_matrix_market;
use hypersparse::generators::{apply_sym_perm, random_permutation};
use hypersparse::perfmodel::simulate_kernel_scaling;
use hypersparse::Result;

use super::parse_p_list;

#[derive(Args)]
pub struct ScalingArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    /// Comma-separated square processor counts, e.g. 1,4,16,64.
    #[arg(long)]
    pub p_list: String,
    /// Apply a seeded random symmetric relabeling to both operands first.
    /// Banded inputs (3D meshes) need this: without it their diagonal
    /// blocks keep the submatrices from ever becoming hypersparse.
    #[arg(long)]
    pub permute: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: ScalingArgs) -> Result<()> {
    super::validate_out_path(&args.out)?;
    super::log_config(format_args!(
        "scaling a={} b={} p_list={} permute={} seed={} out={}",
        args.a.display(),
        args.b.display(),
        args.p_list,
        args.permute,
        args.seed,
        args.out.display()
    ));
    let mut a = read_matrix_market(&args.a)?;
    let mut b = read_matrix_market(&args.b)?;
    if args.permute {
        let perm = random_permutation(a.nrows(), args.seed);
        a = apply_sym_perm(&a, &perm)?;
        b = apply_sym_perm(&b, &perm)?;
    }
    let p_list = parse_p_list(&args.p_list)?;
    let rows = simulate_kernel_scaling(&a, &b, &p_list)?;

    let mut w = BufWriter::new(File::create(&args.out)?);
    writeln!(
        w,
        "p,flops,classical_dim_scans,classical_work,hypersparse_work,mean_nnz_per_col,hypersparse_onset"
    )?;
    for r in &rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            r.p,
            r.flops,
            r.classical_dim_scans,
            r.classical_work,
            r.hypersparse_work,
            r.mean_nnz_per_col,
            r.hypersparse_onset
        )?;
    }
    w.flush()?;
    println!("wrote {}", args.out.display());
    Ok(())
}
