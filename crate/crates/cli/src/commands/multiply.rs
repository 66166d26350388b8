//! Sequential multiplication with a flops report.

use std::path::PathBuf;

use clap::Args;

use hypersparse::formats::{
    read_matrix_market, write_matrix_market, CscMatrix, DcscMatrix, TriplesMatrix,
};
use hypersparse::kernels::{gustavson_spgemm, multiply_dcsc, KernelTally};
use hypersparse::semiring::{Boolean, Real, Semiring, Tropical};
use hypersparse::Result;

use super::{KernelChoice, SemiringChoice};

#[derive(Args)]
pub struct MultiplyArgs {
    /// Left operand (.mtx).
    #[arg(long)]
    pub a: PathBuf,
    /// Right operand (.mtx).
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long, value_enum, default_value_t = KernelChoice::Hypersparse)]
    pub kernel: KernelChoice,
    #[arg(long, value_enum, default_value_t = SemiringChoice::Real)]
    pub semiring: SemiringChoice,
    /// Result path (.mtx).
    #[arg(long)]
    pub out: PathBuf,
}

/// Converts f64 file entries into the semiring's scalar domain.
pub fn convert<S: Semiring>(
    t: &TriplesMatrix<f64>,
    map: impl Fn(f64) -> S::Scalar,
) -> TriplesMatrix<S::Scalar> {
    let mut out = TriplesMatrix::with_capacity(t.nrows(), t.ncols(), t.nnz());
    for &(r, c, v) in t.entries() {
        out.push(r, c, map(v));
    }
    out.normalize::<S>();
    out
}

fn product_as<S: Semiring>(
    a: &TriplesMatrix<S::Scalar>,
    b: &TriplesMatrix<S::Scalar>,
    kernel: KernelChoice,
) -> Result<(TriplesMatrix<S::Scalar>, KernelTally)> {
    match kernel {
        KernelChoice::Classical => {
            let ac = CscMatrix::from_triples(a)?;
            let bc = CscMatrix::from_triples(b)?;
            let (c, tally) = gustavson_spgemm::<S>(&ac, &bc)?;
            Ok((c.to_triples(), tally))
        }
        KernelChoice::Hypersparse => {
            let ad = DcscMatrix::from_triples(a)?;
            let bd = DcscMatrix::from_triples(b)?;
            let (c, tally) = multiply_dcsc::<S>(&ad, &bd)?;
            Ok((c.to_triples(), tally))
        }
    }
}

/// Runs the product over the chosen semiring; the result comes back as
/// f64 triples for serialization (booleans as 1.0).
pub fn dispatch_product(
    a: &TriplesMatrix<f64>,
    b: &TriplesMatrix<f64>,
    semiring: SemiringChoice,
    kernel: KernelChoice,
) -> Result<(TriplesMatrix<f64>, KernelTally)> {
    match semiring {
        SemiringChoice::Real => {
            let (ca, cb) = (convert::<Real>(a, |v| v), convert::<Real>(b, |v| v));
            product_as::<Real>(&ca, &cb, kernel)
        }
        SemiringChoice::Tropical => {
            let (ca, cb) = (convert::<Tropical>(a, |v| v), convert::<Tropical>(b, |v| v));
            product_as::<Tropical>(&ca, &cb, kernel)
        }
        SemiringChoice::Boolean => {
            let (ca, cb) = (
                convert::<Boolean>(a, |v| v != 0.0),
                convert::<Boolean>(b, |v| v != 0.0),
            );
            let (c, tally) = product_as::<Boolean>(&ca, &cb, kernel)?;
            let mut real = TriplesMatrix::with_capacity(c.nrows(), c.ncols(), c.nnz());
            for &(r, cc, _) in c.entries() {
                real.push(r, cc, 1.0);
            }
            Ok((real, tally))
        }
    }
}

pub fn run(args: MultiplyArgs) -> Result<()> {
    super::validate_out_path(&args.out)?;
    super::log_config(format_args!(
        "multiply a={} b={} kernel={:?} semiring={:?} out={}",
        args.a.display(),
        args.b.display(),
        args.kernel,
        args.semiring,
        args.out.display()
    ));
    let a = read_matrix_market(&args.a)?;
    let b = read_matrix_market(&args.b)?;
    let (c, tally) = dispatch_product(&a, &b, args.semiring, args.kernel)?;
    write_matrix_market(&c, &args.out)?;
    println!(
        "flops={} adds={} nnz_c={} kernel={:?} semiring={:?}",
        tally.flops,
        tally.adds,
        c.nnz(),
        args.kernel,
        args.semiring
    );
    Ok(())
}
