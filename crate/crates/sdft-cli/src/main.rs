//! `sdft`: file-level front end for the steerable DFT library. Subcommands
//! wrap library calls one-to-one; text outputs use fixed 17-significant-digit
//! formatting so identical inputs always produce identical bytes.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::path::{Path, PathBuf};

use sdft::io::{self, ArrayPayload, LoadedKey, SdftArray};
use sdft::{
    coefficient_trace, cycle_spectrum_report, descramble, hilbert, keygen, parity_filter_1d,
    parity_filter_2d, scramble, sdft_forward_1d, sdft_forward_2d, sdft_inverse_1d, sdft_inverse_2d,
    time_stages_1d, torus_spectrum_report, KeyPurpose, Parity, Result, ScrambleKey, SdftError,
    Signal1D, Signal2D, Spectrum1D, Spectrum2D, ThetaKey1D, ThetaKey2D, EIGEN_RESIDUAL_TOL,
};

#[derive(Parser)]
#[command(
    name = "sdft",
    version,
    about = "Steerable DFT toolbox: transforms, traces, filters, scrambling, graph checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a steered transform (or its inverse) to an array file.
    Transform(TransformArgs),
    /// Sweep one coefficient pair across a full turn of its steering angle.
    Trace(TraceArgs),
    /// Hilbert transform of a real 1D signal.
    Hilbert(InOutArgs),
    /// Keep only the even or the odd part of a real signal.
    Filter(FilterArgs),
    /// Scramble a real 1D signal into an angle-keyed payload file.
    Scramble(KeyInOutArgs),
    /// Recover the original signal from a payload file and its key.
    Descramble(KeyInOutArgs),
    /// Derive a steering key file from a 64-bit seed.
    Keygen(KeygenArgs),
    /// Graph-spectral verification.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Time the FFT and rotation stages of the 1D transform.
    Bench(BenchArgs),
}

#[derive(Args)]
struct TransformArgs {
    /// Data dimensionality (must match the key file's mode).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    dim: u8,
    /// Apply the inverse transform instead of the forward one.
    #[arg(long)]
    inverse: bool,
    /// Steering key file (JSON).
    #[arg(long)]
    key: PathBuf,
    /// Input array (.csv text, binary otherwise).
    #[arg(long = "in")]
    input: PathBuf,
    /// Output array (.csv text, binary otherwise).
    #[arg(long = "out")]
    output: PathBuf,
}

#[derive(Args)]
struct TraceArgs {
    /// Pair index k in 1..=N/2−1.
    #[arg(long)]
    k: usize,
    /// Number of uniform angle samples over [0, 2π), endpoint excluded.
    #[arg(long)]
    samples: usize,
    /// Input 1D array.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output table (always CSV text).
    #[arg(long = "out")]
    output: PathBuf,
}

#[derive(Args)]
struct InOutArgs {
    /// Input 1D array.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output array.
    #[arg(long = "out")]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum PartArg {
    Even,
    Odd,
}

#[derive(Args)]
struct FilterArgs {
    /// Which parity component to keep.
    #[arg(long, value_enum)]
    part: PartArg,
    /// Comma-separated pair indices to filter; all pairs when omitted (1D only).
    #[arg(long)]
    bands: Option<String>,
    /// Data dimensionality.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    dim: u8,
    /// Input array.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output array.
    #[arg(long = "out")]
    output: PathBuf,
}

#[derive(Args)]
struct KeyInOutArgs {
    /// Steering key file (JSON, 1D mode).
    #[arg(long)]
    key: PathBuf,
    /// Input file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file.
    #[arg(long = "out")]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum PurposeArg {
    General,
    Scramble,
}

#[derive(Args)]
struct KeygenArgs {
    /// Seed as 0x-prefixed hex, up to 16 digits.
    #[arg(long)]
    seed: String,
    /// Transform size the key will steer (even, ≥ 4).
    #[arg(long)]
    n: usize,
    /// Angle range: full circle, or the scramble-safe window.
    #[arg(long, value_enum, default_value_t = PurposeArg::General)]
    purpose: PurposeArg,
    /// Output key file (JSON).
    #[arg(long = "out")]
    output: PathBuf,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Rebuild a graph spectrum, census and eigenbasis residuals; print the
    /// report as JSON; exit 0 only if everything verifies.
    Verify(GraphVerifyArgs),
}

#[derive(Args)]
struct GraphVerifyArgs {
    /// 1 = cycle graph, 2 = torus graph.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    dim: u8,
    /// Cycle length / torus side (even, ≥ 4).
    #[arg(long)]
    n: usize,
    /// Optional steering key; the default DFT basis is checked when omitted.
    #[arg(long)]
    key: Option<PathBuf>,
    /// Largest allowed N (defaults: 64 for dim 1, 16 for dim 2).
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    /// Only the 1D pipeline is timed.
    #[arg(long, default_value_t = 1)]
    dim: u8,
    /// Transform size (power of two).
    #[arg(long)]
    n: usize,
    /// Timing iterations (best-of, after one warmup).
    #[arg(long, default_value_t = 10)]
    iters: usize,
}

/// Print one line to stdout; a closed pipe (e.g. `| head`) ends the process
/// quietly instead of panicking.
fn print_line(text: &str) -> Result<()> {
    use std::io::Write;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(e.into()),
    }
}

fn to_complex(payload: ArrayPayload) -> Vec<Complex64> {
    match payload {
        ArrayPayload::Real(v) => v.into_iter().map(|r| Complex64::new(r, 0.0)).collect(),
        ArrayPayload::Complex(v) => v,
    }
}

/// Load a file as a flat complex vector, insisting on 1D shape.
fn load_vector(path: &Path) -> Result<Vec<Complex64>> {
    let arr = io::read_array(path)?;
    if arr.dims.len() != 1 {
        return Err(SdftError::ModeMismatch(format!(
            "{} holds a {}-dimensional array, expected 1D",
            path.display(),
            arr.dims.len()
        )));
    }
    Ok(to_complex(arr.payload))
}

fn integer_sqrt(len: usize) -> Option<usize> {
    let mut n = (len as f64).sqrt() as usize;
    while n * n < len {
        n += 1;
    }
    (n * n == len).then_some(n)
}

/// Load a file as an n×n complex grid. CSV carries no shape, so its length
/// must be a perfect square; binary files must declare two equal dimensions.
fn load_square(path: &Path) -> Result<(usize, Vec<Complex64>)> {
    let arr = io::read_array(path)?;
    if io::is_csv_path(path) {
        let len = arr.payload.len();
        let n = integer_sqrt(len).ok_or_else(|| {
            SdftError::Format(format!(
                "{} holds {len} samples, which is not a perfect square",
                path.display()
            ))
        })?;
        return Ok((n, to_complex(arr.payload)));
    }
    match arr.dims.as_slice() {
        [r, c] if r == c => Ok((*r as usize, to_complex(arr.payload))),
        [r, c] => Err(SdftError::SizeMismatch(format!(
            "{} holds a {r}×{c} array, expected square",
            path.display()
        ))),
        _ => Err(SdftError::ModeMismatch(format!(
            "{} holds a 1D array, expected 2D",
            path.display()
        ))),
    }
}

fn write_complex_1d(path: &Path, values: Vec<Complex64>) -> Result<()> {
    let arr = SdftArray::new(vec![values.len() as u64], ArrayPayload::Complex(values))?;
    io::write_array(path, &arr)
}

fn write_complex_2d(path: &Path, n: usize, values: Vec<Complex64>) -> Result<()> {
    let arr = SdftArray::new(vec![n as u64, n as u64], ArrayPayload::Complex(values))?;
    io::write_array(path, &arr)
}

fn write_real_1d(path: &Path, values: Vec<f64>) -> Result<()> {
    let arr = SdftArray::new(vec![values.len() as u64], ArrayPayload::Real(values))?;
    io::write_array(path, &arr)
}

fn write_real_2d(path: &Path, n: usize, values: Vec<f64>) -> Result<()> {
    let arr = SdftArray::new(vec![n as u64, n as u64], ArrayPayload::Real(values))?;
    io::write_array(path, &arr)
}

fn load_key_1d(path: &Path) -> Result<(ThetaKey1D, Option<KeyPurpose>)> {
    let file = io::read_key_file(path)?;
    match file.key {
        LoadedKey::OneD(key) => Ok((key, file.purpose)),
        LoadedKey::TwoD(_) => Err(SdftError::ModeMismatch(format!(
            "{} holds a 2D key, expected mode \"1d\"",
            path.display()
        ))),
    }
}

fn load_key_2d(path: &Path) -> Result<ThetaKey2D> {
    match io::read_key_file(path)?.key {
        LoadedKey::TwoD(key) => Ok(key),
        LoadedKey::OneD(_) => Err(SdftError::ModeMismatch(format!(
            "{} holds a 1D key, expected a 2D mode",
            path.display()
        ))),
    }
}

fn cmd_transform(args: TransformArgs) -> Result<()> {
    match args.dim {
        1 => {
            let (key, _) = load_key_1d(&args.key)?;
            let data = load_vector(&args.input)?;
            let out = if args.inverse {
                sdft_inverse_1d(&Spectrum1D::from_complex(data)?, &key)?
                    .samples()
                    .to_vec()
            } else {
                sdft_forward_1d(&Signal1D::from_complex(data)?, &key)?
                    .coefficients()
                    .to_vec()
            };
            write_complex_1d(&args.output, out)
        }
        _ => {
            let key = load_key_2d(&args.key)?;
            let (n, data) = load_square(&args.input)?;
            let out = if args.inverse {
                sdft_inverse_2d(&Spectrum2D::from_complex(n, data)?, &key)?
                    .samples()
                    .to_vec()
            } else {
                sdft_forward_2d(&Signal2D::from_complex(n, data)?, &key)?
                    .coefficients()
                    .to_vec()
            };
            write_complex_2d(&args.output, n, out)
        }
    }
}

fn cmd_trace(args: TraceArgs) -> Result<()> {
    let data = load_vector(&args.input)?;
    let signal = Signal1D::from_complex(data)?;
    let points = coefficient_trace(&signal, args.k, args.samples)?;
    let mut table = String::from("theta,re_k,im_k,re_nk,im_nk\n");
    for p in &points {
        table.push_str(&format!(
            "{},{},{},{},{}\n",
            io::format_f64(p.theta),
            io::format_f64(p.lower.re),
            io::format_f64(p.lower.im),
            io::format_f64(p.upper.re),
            io::format_f64(p.upper.im),
        ));
    }
    std::fs::write(&args.output, table)?;
    Ok(())
}

fn cmd_hilbert(args: InOutArgs) -> Result<()> {
    let data = load_vector(&args.input)?;
    let signal = Signal1D::from_complex(data)?;
    let out = hilbert(&signal)?.real_samples()?;
    write_real_1d(&args.output, out)
}

fn parse_bands(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|f| {
            f.trim()
                .parse::<usize>()
                .map_err(|_| SdftError::InvalidInput(format!("cannot parse band index {f:?}")))
        })
        .collect()
}

fn cmd_filter(args: FilterArgs) -> Result<()> {
    let part = match args.part {
        PartArg::Even => Parity::Even,
        PartArg::Odd => Parity::Odd,
    };
    let bands = args.bands.as_deref().map(parse_bands).transpose()?;
    match args.dim {
        1 => {
            let data = load_vector(&args.input)?;
            let signal = Signal1D::from_complex(data)?;
            let out = parity_filter_1d(&signal, part, bands.as_deref())?.real_samples()?;
            write_real_1d(&args.output, out)
        }
        _ => {
            if bands.is_some() {
                return Err(SdftError::InvalidInput(
                    "--bands is only defined for --dim 1".into(),
                ));
            }
            let (n, data) = load_square(&args.input)?;
            let signal = Signal2D::from_complex(n, data)?;
            let out = parity_filter_2d(&signal, part)?.real_samples()?;
            write_real_2d(&args.output, n, out)
        }
    }
}

fn cmd_scramble(args: KeyInOutArgs) -> Result<()> {
    let (key, _) = load_key_1d(&args.key)?;
    let key = ScrambleKey::new(key)?;
    let data = load_vector(&args.input)?;
    let signal = Signal1D::from_complex(data)?;
    let payload = scramble(&signal, &key)?;
    io::write_payload(&args.output, &payload)
}

fn cmd_descramble(args: KeyInOutArgs) -> Result<()> {
    let (key, _) = load_key_1d(&args.key)?;
    let key = ScrambleKey::new(key)?;
    let payload = io::read_payload(&args.input)?;
    let out = descramble(&payload, &key)?.real_samples()?;
    write_real_1d(&args.output, out)
}

fn cmd_keygen(args: KeygenArgs) -> Result<()> {
    let seed = io::parse_seed(&args.seed)?;
    let purpose = match args.purpose {
        PurposeArg::General => KeyPurpose::General,
        PurposeArg::Scramble => KeyPurpose::Scramble,
    };
    let key = keygen(seed, args.n, purpose)?;
    io::write_key_1d(&args.output, &key, Some(purpose))
}

fn cmd_graph_verify(args: GraphVerifyArgs) -> Result<()> {
    let cap = args.cap.unwrap_or(if args.dim == 1 { 64 } else { 16 });
    if args.n > cap {
        return Err(SdftError::UnsupportedSize(format!(
            "size {} exceeds the verification cap {cap}",
            args.n
        )));
    }
    let report = match args.dim {
        1 => {
            let key = args.key.as_deref().map(load_key_1d).transpose()?;
            cycle_spectrum_report(args.n, key.as_ref().map(|(k, _)| k))?
        }
        _ => {
            let key = args.key.as_deref().map(load_key_2d).transpose()?;
            torus_spectrum_report(args.n, key.as_ref())?
        }
    };
    print_line(&report.to_json())?;
    if report.max_residual > EIGEN_RESIDUAL_TOL {
        return Err(SdftError::Verification(format!(
            "max eigenbasis residual {:e} exceeds {:e}",
            report.max_residual, EIGEN_RESIDUAL_TOL
        )));
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    if args.dim != 1 {
        return Err(SdftError::InvalidInput(
            "stage timing is only defined for --dim 1".into(),
        ));
    }
    let timings = time_stages_1d(args.n, args.iters)?;
    print_line(&serde_json::to_string(&timings).expect("timing serialization cannot fail"))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Transform(args) => cmd_transform(args),
        Command::Trace(args) => cmd_trace(args),
        Command::Hilbert(args) => cmd_hilbert(args),
        Command::Filter(args) => cmd_filter(args),
        Command::Scramble(args) => cmd_scramble(args),
        Command::Descramble(args) => cmd_descramble(args),
        Command::Keygen(args) => cmd_keygen(args),
        Command::Graph(GraphCommand::Verify(args)) => cmd_graph_verify(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
