//! Command-line front end: every subcommand writes line-oriented records
//! (JSONL, or CSV for the bound table) and reports through the exit code —
//! 0 when all checks pass, 1 when a mathematical check fails, 2 on usage or
//! configuration errors.

use clap::{Parser, Subcommand, ValueEnum};
use incidence_lab::chargroup::additive_dft;
use incidence_lab::cyclotomic::CycInt;
use incidence_lab::gf::{FieldSpec, DEFAULT_SIZE_CAP};
use incidence_lab::incidence::{
    incidence_report, parameter_bounds, random_instance, verify_spectrum_points,
    verify_spectrum_polys,
};
use incidence_lab::jsonio;
use incidence_lab::reed_solomon::{certify, list_size_bound, RsInstance, SearchMode};
use incidence_lab::sampling::{cell_rng, uniform_u64};
use num::{BigInt, BigRational};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const LONG_ABOUT: &str = "\
Exact verification laboratory for incidences between points of F x F and \
polynomials of degree below k over a finite field F = GF(Q).

All arithmetic is exact (finite-field elements, cyclotomic integers, big \
rationals); no check involves floating point or tolerances.

Randomness is fully reproducible: every random object is drawn from a \
ChaCha12 stream keyed by splitmix64(seed XOR splitmix64(cell)), where the \
cell is the trial number, with rejection sampling for uniform draws and \
Floyd sampling for distinct draws. Records are bit-identical for a given \
seed across runs, platforms, and thread counts.

The environment variable INCIDENCE_LAB_SIZE_CAP (default 16777216) bounds \
the size of any enumeration a subcommand may attempt; configurations over \
the cap are refused with exit code 2.";

const EXIT_HELP: &str = "\
Exit codes:
  0  every check passed
  1  a mathematical check failed (spectrum mismatch, bound violation, ...)
  2  usage or configuration error";

#[derive(Parser)]
#[command(
    name = "incidence-lab",
    version,
    about = "Exact incidence, spectrum, and list-decoding checks over finite fields",
    long_about = LONG_ABOUT,
    after_help = EXIT_HELP
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exactly verify both Gram spectra (points side and polynomials side)
    VerifySpectrum(VerifySpectrumArgs),
    /// Draw random incidence instances and check the deviation bounds on each
    Sweep(SweepArgs),
    /// Tabulate the closed-form deviation bounds over a parameter grid
    BoundsTable(BoundsTableArgs),
    /// Search Reed-Solomon codeword lists against the average-radius claim
    CertifyRs(CertifyRsArgs),
    /// Cross-check the fast additive transform against the naive sum, with timings
    BenchDft(BenchDftArgs),
}

#[derive(clap::Args)]
struct VerifySpectrumArgs {
    /// Field size Q (a prime power)
    #[arg(long)]
    q: u64,
    /// Degree bound k (polynomials of degree < k), k >= 2
    #[arg(long)]
    k: usize,
    /// Which Gram operator to verify
    #[arg(long, value_enum, default_value_t = Side::Both)]
    side: Side,
    /// Write records here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Points,
    Polys,
    Both,
}

#[derive(clap::Args)]
struct SweepArgs {
    /// Field size Q (a prime power)
    #[arg(long)]
    q: u64,
    /// Degree bound k, k >= 2
    #[arg(long)]
    k: usize,
    /// Number of polynomials per instance
    #[arg(long)]
    ell: u64,
    /// Number of points per instance
    #[arg(long)]
    points: u64,
    /// Instances to draw (cells 0..trials)
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Stream seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write records here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct BoundsTableArgs {
    /// Field size Q (a prime power)
    #[arg(long)]
    q: u64,
    /// Degree bound k, k >= 2
    #[arg(long)]
    k: usize,
    /// Polynomial-set sizes, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    ell: Vec<u64>,
    /// Point-set sizes, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    points: Vec<u64>,
    /// Output format
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Write records here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Jsonl,
}

#[derive(clap::Args)]
struct CertifyRsArgs {
    /// Field size Q (a prime power)
    #[arg(long)]
    q: u64,
    /// Code dimension k (message length), 1 <= k < n
    #[arg(long)]
    k: usize,
    /// Code length n (defaults to the full-length code, n = Q)
    #[arg(long)]
    n: Option<u64>,
    /// Radius slack eps as an exact fraction a/b with 0 < a/b < 1
    #[arg(long, value_parser = parse_ratio)]
    eps: BigRational,
    /// List bound ell to certify at (defaults to ceil(Q / (2 eps n sqrt(k/n))))
    #[arg(long)]
    ell: Option<u64>,
    /// Search strategy over lists of ell + 1 codewords
    #[arg(long, value_enum, default_value_t = Mode::Random)]
    mode: Mode,
    /// Lists to draw in random mode
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Stream seed (random mode)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Random,
    Exhaustive,
}

#[derive(clap::Args)]
struct BenchDftArgs {
    /// Field size Q (a prime power)
    #[arg(long)]
    q: u64,
    /// Transform dimension (1 or 2)
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Histograms to transform
    #[arg(long, default_value_t = 5)]
    trials: u64,
    /// Stream seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write records here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

type AnyError = Box<dyn std::error::Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, AnyError> {
    match cli.cmd {
        Cmd::VerifySpectrum(a) => cmd_verify_spectrum(a),
        Cmd::Sweep(a) => cmd_sweep(a),
        Cmd::BoundsTable(a) => cmd_bounds_table(a),
        Cmd::CertifyRs(a) => cmd_certify_rs(a),
        Cmd::BenchDft(a) => cmd_bench_dft(a),
    }
}

fn size_cap_from_env() -> Result<u64, AnyError> {
    match std::env::var("INCIDENCE_LAB_SIZE_CAP") {
        Ok(s) => s
            .trim()
            .parse::<u64>()
            .map_err(|_| format!("INCIDENCE_LAB_SIZE_CAP must be an integer, got {s:?}").into()),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_SIZE_CAP),
        Err(e) => Err(e.into()),
    }
}

fn factor_prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    let p = if q.is_multiple_of(p) { p } else { q };
    let mut m = 0;
    let mut t = q;
    while t.is_multiple_of(p) {
        t /= p;
        m += 1;
    }
    (t == 1).then_some((p, m))
}

fn field_from_q(q: u64) -> Result<FieldSpec, AnyError> {
    let cap = size_cap_from_env()?;
    let (p, m) =
        factor_prime_power(q).ok_or_else(|| format!("{q} is not a prime power"))?;
    Ok(FieldSpec::with_cap(p, m, cap)?)
}

fn open_out(out: &Option<PathBuf>) -> Result<Box<dyn Write>, AnyError> {
    Ok(match out {
        Some(path) => Box::new(std::io::BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(std::io::BufWriter::new(std::io::stdout())),
    })
}

fn parse_ratio(s: &str) -> Result<BigRational, String> {
    let (a, b) = s
        .split_once('/')
        .ok_or_else(|| format!("expected an exact fraction a/b, got {s:?}"))?;
    let a: u64 = a.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if b == 0 {
        return Err("denominator must be nonzero".into());
    }
    Ok(BigRational::new(BigInt::from(a), BigInt::from(b)))
}

fn cmd_verify_spectrum(a: VerifySpectrumArgs) -> Result<bool, AnyError> {
    let spec = field_from_q(a.q)?;
    let mut w = open_out(&a.out)?;
    let mut all_ok = true;
    if a.side != Side::Polys {
        let rep = verify_spectrum_points(&spec, a.k)?;
        all_ok &= rep.ok();
        writeln!(w, "{}", serde_json::to_string(&jsonio::spectrum_record(&rep))?)?;
    }
    if a.side != Side::Points {
        let rep = verify_spectrum_polys(&spec, a.k)?;
        all_ok &= rep.ok();
        writeln!(w, "{}", serde_json::to_string(&jsonio::spectrum_record(&rep))?)?;
    }
    w.flush()?;
    Ok(all_ok)
}

fn cmd_sweep(a: SweepArgs) -> Result<bool, AnyError> {
    let spec = field_from_q(a.q)?;
    let mut w = open_out(&a.out)?;
    let mut all_ok = true;
    for cell in 0..a.trials {
        let (polys, points) = random_instance(&spec, a.k, a.ell, a.points, a.seed, cell)?;
        let rep = incidence_report(&spec, &polys, &points)?;
        all_ok &= rep.ok_tight
            && rep.ok_loose
            && rep.ok_cs
            && rep.ok_vinh.unwrap_or(true)
            && rep.ok_vinh_improved.unwrap_or(true);
        let record = jsonio::incidence_record(&rep, Some(a.seed), Some(cell));
        writeln!(w, "{}", serde_json::to_string(&record)?)?;
    }
    w.flush()?;
    Ok(all_ok)
}

fn cmd_bounds_table(a: BoundsTableArgs) -> Result<bool, AnyError> {
    let spec = field_from_q(a.q)?;
    let mut w = open_out(&a.out)?;
    if a.format == TableFormat::Csv {
        writeln!(w, "{}", jsonio::bounds_csv_header())?;
    }
    for &ell in &a.ell {
        for &points in &a.points {
            let b = parameter_bounds(&spec, a.k, ell, points)?;
            match a.format {
                TableFormat::Csv => {
                    writeln!(w, "{}", jsonio::bounds_csv_row(a.q, a.k, ell, points, &b))?
                }
                TableFormat::Jsonl => {
                    let record = jsonio::bounds_record(a.q, a.k, ell, points, &b);
                    writeln!(w, "{}", serde_json::to_string(&record)?)?
                }
            }
        }
    }
    w.flush()?;
    Ok(true)
}

fn cmd_certify_rs(a: CertifyRsArgs) -> Result<bool, AnyError> {
    let spec = field_from_q(a.q)?;
    let inst = match a.n {
        Some(n) => {
            if n > spec.q() {
                return Err(format!("n = {n} exceeds the field size {}", spec.q()).into());
            }
            let points: Vec<_> = spec.elements().take(n as usize).collect();
            RsInstance::new(&spec, a.k, points)?
        }
        None => RsInstance::full_length(&spec, a.k)?,
    };
    let ell = match a.ell {
        Some(e) => {
            if e == 0 {
                return Err("ell must be at least 1".into());
            }
            e
        }
        None => list_size_bound(&spec, inst.n(), a.k, &a.eps)?,
    };
    let mode = match a.mode {
        Mode::Random => SearchMode::Random { seed: a.seed, trials: a.trials },
        Mode::Exhaustive => SearchMode::Exhaustive,
    };
    let rep = certify(&spec, &inst, &a.eps, ell, mode)?;
    let mut w = open_out(&a.out)?;
    writeln!(w, "{}", serde_json::to_string(&jsonio::certify_record(&rep))?)?;
    w.flush()?;
    Ok(!rep.violated)
}

fn naive_transform(spec: &FieldSpec, d: usize, hist: &[i64]) -> Vec<CycInt> {
    let n = hist.len();
    (0..n)
        .map(|ui| {
            let u = spec.poly_from_index(d, ui as u64);
            let mut acc = CycInt::zero(spec.p());
            for (xi, &c) in hist.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let x = spec.poly_from_index(d, xi as u64);
                let mut dot = spec.zero();
                for (uc, xc) in u.coeffs().iter().zip(x.coeffs()) {
                    dot = spec.add(&dot, &spec.mul(uc, xc));
                }
                acc.add_scaled_root(spec.trace(&dot), c as i128);
            }
            acc
        })
        .collect()
}

fn cmd_bench_dft(a: BenchDftArgs) -> Result<bool, AnyError> {
    let spec = field_from_q(a.q)?;
    let n = spec.poly_count(a.d)? as usize;
    let mut w = open_out(&a.out)?;
    let mut all_equal = true;
    for trial in 0..a.trials {
        let mut rng = cell_rng(a.seed, trial);
        let hist: Vec<i64> = (0..n).map(|_| uniform_u64(&mut rng, 9) as i64 - 4).collect();
        let t0 = Instant::now();
        let fast = additive_dft(&spec, a.d, &hist)?;
        let fast_ns = t0.elapsed().as_nanos();
        let t1 = Instant::now();
        let naive = naive_transform(&spec, a.d, &hist);
        let naive_ns = t1.elapsed().as_nanos();
        let equal = fast == naive;
        all_equal &= equal;
        let record = jsonio::dft_record(a.q, a.d, trial, fast_ns, naive_ns, equal);
        writeln!(w, "{}", serde_json::to_string(&record)?)?;
    }
    w.flush()?;
    Ok(all_equal)
}
