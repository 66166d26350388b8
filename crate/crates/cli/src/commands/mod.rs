//! Subcommand implementations and shared argument types.

pub mod model;
pub mod multiply;
pub mod scaling;
pub mod simulate;

pub use model::ModelArgs;
pub use multiply::MultiplyArgs;
pub use scaling::ScalingArgs;
pub use simulate::SimulateArgs;

use std::path::PathBuf;

use clap::{Args, ValueEnum};

use hypersparse::formats::{write_matrix_market, TriplesMatrix};
use hypersparse::generators::{
    gen_erdos_renyi, gen_grid3d, gen_rmat, permutation_matrix, random_permutation, RmatParams,
};
use hypersparse::grid::GridConfig;
use hypersparse::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SemiringChoice {
    /// Ordinary arithmetic (+, ×) over f64.
    Real,
    /// (min, +) over f64; zero is +infinity.
    Tropical,
    /// (or, and) over booleans; file values map to nonzero-ness.
    Boolean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelChoice {
    /// Column-at-a-time CSC kernel with a sparse accumulator.
    Classical,
    /// Dimension-free outer-product kernel on doubly compressed storage.
    Hypersparse,
}

/// Checks that an output file's directory exists, before any compute
/// runs.
pub fn validate_out_path(path: &std::path::Path) -> Result<()> {
    match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() && !parent.is_dir() => {
            Err(Error::InvalidParams(format!(
                "output directory {} does not exist",
                parent.display()
            )))
        }
        _ => Ok(()),
    }
}

/// Logs the fully resolved configuration of a run on stderr.
pub fn log_config(args: std::fmt::Arguments<'_>) {
    eprintln!("config: {args}");
}

/// Parses a `RxC` grid specification such as `4x4` or `8x1`.
pub fn parse_grid(spec: &str) -> Result<GridConfig> {
    let parts: Vec<&str> = spec.split(['x', 'X']).collect();
    if parts.len() != 2 {
        return Err(Error::InvalidParams(format!(
            "grid `{spec}` is not of the form RxC"
        )));
    }
    let rows: usize = parts[0]
        .parse()
        .map_err(|_| Error::InvalidParams(format!("bad grid rows in `{spec}`")))?;
    let cols: usize = parts[1]
        .parse()
        .map_err(|_| Error::InvalidParams(format!("bad grid cols in `{spec}`")))?;
    GridConfig::new(rows, cols)
}

/// Parses a comma-separated list of processor counts.
pub fn parse_p_list(spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParams(format!("bad processor count `{s}`")))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenerateKind {
    /// Scale-free adjacency matrix from recursive quadrant descent.
    Rmat,
    /// Uniform random positions (Erdős–Rényi).
    Er,
    /// 7-point Laplacian of a k×k×k mesh.
    Grid3d,
    /// Random permutation matrix.
    Perm,
}

#[derive(Args)]
pub struct GenerateArgs {
    pub kind: GenerateKind,
    /// Matrix dimension as log2(n) (rmat, er, perm).
    #[arg(long)]
    pub scale: Option<u32>,
    /// Side length of the 3D mesh (grid3d).
    #[arg(long)]
    pub k: Option<usize>,
    /// Expected nonzeros per column (rmat).
    #[arg(long, default_value_t = 8.0)]
    pub degree: f64,
    /// Total nonzero target (er).
    #[arg(long)]
    pub nnz: Option<usize>,
    /// Quadrant probabilities (rmat); must sum to 1.
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run_generate(args: GenerateArgs) -> Result<()> {
    validate_out_path(&args.out)?;
    log_config(format_args!(
        "generate kind={:?} scale={:?} k={:?} degree={} nnz={:?} seed={} out={}",
        args.kind,
        args.scale,
        args.k,
        args.degree,
        args.nnz,
        args.seed,
        args.out.display()
    ));
    let need_scale = || {
        args.scale.ok_or_else(|| {
            Error::InvalidParams("this generator needs --scale (n = 2^scale)".into())
        })
    };
    let t: TriplesMatrix<f64> = match args.kind {
        GenerateKind::Rmat => {
            let mut params = RmatParams::new(need_scale()?, args.seed);
            params.avg_degree = args.degree;
            if let (Some(a), Some(b), Some(c), Some(d)) = (args.a, args.b, args.c, args.d) {
                params.a = a;
                params.b = b;
                params.c = c;
                params.d = d;
            }
            gen_rmat(&params)?
        }
        GenerateKind::Er => {
            let n = 1usize << need_scale()?;
            let nnz = args
                .nnz
                .ok_or_else(|| Error::InvalidParams("er needs --nnz".into()))?;
            gen_erdos_renyi(n, nnz, args.seed)?
        }
        GenerateKind::Grid3d => {
            let k = args
                .k
                .ok_or_else(|| Error::InvalidParams("grid3d needs --k".into()))?;
            gen_grid3d(k)?
        }
        GenerateKind::Perm => {
            let n = 1usize << need_scale()?;
            permutation_matrix(&random_permutation(n, args.seed))?
        }
    };
    write_matrix_market(&t, &args.out)?;
    println!(
        "wrote {} ({}x{}, {} entries)",
        args.out.display(),
        t.nrows(),
        t.ncols(),
        t.nnz()
    );
    Ok(())
}
