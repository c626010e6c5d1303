//! `icefad`: point evaluation, error maps, coefficient tables and throughput
//! comparison for the Faddeeva approximations in `icefad-core`.

use std::fs;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use icefad_core::throughput::{self, DEFAULT_SEED};
use icefad_core::{
    Complex64, Engine, ErrorMap, EvalOptions, Evaluator, ExpansionParams, GridSpec,
    IceApproximation, ReferenceGrid, WeidemanCoefficients,
};

const EXIT_THRESHOLD: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_COMPUTE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "icefad",
    version,
    about = "Faddeeva function approximations and error maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate w(z) at "x y" pairs read from stdin or --points.
    Eval(EvalArgs),
    /// Relative-error maps of an engine against the oracle.
    Errmap(ErrmapArgs),
    /// Time the ICE and Weideman engines on random points.
    Bench(BenchArgs),
    /// Print the coefficient table m, C_m, A_m, b_m.
    Coeffs(ExpansionArgs),
}

#[derive(Args, Clone)]
struct ExpansionArgs {
    /// Sampling step.
    #[arg(long, default_value_t = ExpansionParams::DEFAULT_H)]
    h: f64,
    /// Gaussian samples on each side of the origin.
    #[arg(long = "N", default_value_t = ExpansionParams::DEFAULT_N)]
    n: u32,
    /// Depth of the cosine expansion; 2^(M-1) terms.
    #[arg(long = "M", default_value_t = ExpansionParams::DEFAULT_M)]
    m: u32,
    /// Shift constant.
    #[arg(long, default_value_t = ExpansionParams::DEFAULT_SIGMA)]
    sigma: f64,
}

impl ExpansionArgs {
    fn params(&self) -> Result<ExpansionParams, String> {
        let p =
            ExpansionParams::new(self.h, self.n, self.m, self.sigma).map_err(|e| e.to_string())?;
        if let Some(w) = p.shift_warning() {
            eprintln!("warning: {w}");
        }
        Ok(p)
    }
}

#[derive(Args, Clone)]
struct EngineArgs {
    /// ice, weideman or oracle.
    #[arg(long, default_value = "ice")]
    engine: Engine,
    #[command(flatten)]
    expansion: ExpansionArgs,
    /// Terms of the Weideman approximation.
    #[arg(long, default_value_t = WeidemanCoefficients::DEFAULT_TERMS)]
    weideman_terms: usize,
    /// Continue ICE into Im z < 0 by reflection instead of rejecting.
    #[arg(long)]
    reflect: bool,
}

impl EngineArgs {
    fn evaluator(&self) -> Result<Evaluator, String> {
        Ok(match self.engine {
            Engine::Ice => {
                let opts = if self.reflect {
                    EvalOptions::reflecting()
                } else {
                    EvalOptions::default()
                };
                Evaluator::Ice(IceApproximation::new(self.expansion.params()?).with_options(opts))
            }
            Engine::Weideman => Evaluator::Weideman(
                WeidemanCoefficients::build(self.weideman_terms).map_err(|e| e.to_string())?,
            ),
            Engine::Oracle => Evaluator::Oracle,
        })
    }
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    engine: EngineArgs,
    /// Read points from this file instead of stdin.
    #[arg(long)]
    points: Option<PathBuf>,
}

#[derive(Args)]
struct ErrmapArgs {
    #[command(flatten)]
    engine: EngineArgs,
    /// Grid as "x:lin:0:15:200,y:log:1e-4:15:200".
    #[arg(long, default_value_t = GridSpec::headline())]
    grid: GridSpec,
    /// Output prefix; writes <prefix>_re.csv, <prefix>_im.csv and
    /// <prefix>_summary.txt. Defaults to errmap_<engine>.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest acceptable Δ_Re; default 1e-12 for ice, 1e-5 for weideman.
    #[arg(long)]
    threshold_re: Option<f64>,
    /// Largest acceptable Δ_Im; default 1e-12 for ice, 1e-7 for weideman.
    #[arg(long)]
    threshold_im: Option<f64>,
    /// Evaluate on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Number of random points.
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    size: u64,
    /// Passes over the points per engine.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    repetitions: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Time only this engine; both ice and weideman by default.
    #[arg(long)]
    engine: Option<Engine>,
    #[command(flatten)]
    expansion: ExpansionArgs,
    #[arg(long, default_value_t = WeidemanCoefficients::DEFAULT_TERMS)]
    weideman_terms: usize,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn compute(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_COMPUTE,
        message: message.into(),
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    compute(format!("{}: {e}", path.display()))
}

/// Parse "x y" pairs, one per line; blank lines and lines starting with '#'
/// are skipped.
fn parse_points(text: impl BufRead) -> Result<Vec<Complex64>, Failure> {
    let mut points = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.map_err(|e| compute(format!("reading points: {e}")))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || {
            usage(format!(
                "line {}: expected two numbers `x y`, got `{line}`",
                k + 1
            ))
        };
        let mut fields = line.split_whitespace();
        let (Some(x), Some(y), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(bad());
        };
        let x: f64 = x.parse().map_err(|_| bad())?;
        let y: f64 = y.parse().map_err(|_| bad())?;
        points.push(Complex64::new(x, y));
    }
    Ok(points)
}

fn eval(args: EvalArgs) -> Result<(), Failure> {
    let evaluator = args.engine.evaluator().map_err(usage)?;
    let points = match &args.points {
        Some(path) => {
            let file = fs::File::open(path).map_err(|e| io_failure(path, e))?;
            parse_points(io::BufReader::new(file))?
        }
        None => parse_points(io::stdin().lock())?,
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for z in points {
        let row = match evaluator.w(z) {
            Ok(w) => format!("{:.16e} {:.16e} {:.16e} {:.16e}", z.re, z.im, w.re, w.im),
            Err(e) => format!("{:.16e} {:.16e} error: {e}", z.re, z.im),
        };
        writeln!(out, "{row}").map_err(|e| compute(e.to_string()))?;
    }
    out.flush().map_err(|e| compute(e.to_string()))
}

fn default_thresholds(engine: Engine) -> (f64, f64) {
    match engine {
        Engine::Ice => (1e-12, 1e-12),
        Engine::Weideman => (1e-5, 1e-7),
        Engine::Oracle => (1e-13, 1e-13),
    }
}

/// Write through a temporary file so a failed run leaves nothing behind.
fn write_atomic(path: &Path, text: &str) -> Result<(), Failure> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, text).map_err(|e| io_failure(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| io_failure(path, e))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Returns whether the thresholds hold.
fn errmap(args: ErrmapArgs) -> Result<bool, Failure> {
    let evaluator = args.engine.evaluator().map_err(usage)?;
    let engine = evaluator.engine();
    let (default_re, default_im) = default_thresholds(engine);
    let threshold_re = args.threshold_re.unwrap_or(default_re);
    let threshold_im = args.threshold_im.unwrap_or(default_im);
    for t in [threshold_re, threshold_im] {
        if !(t > 0.0 && t.is_finite()) {
            return Err(usage(format!("thresholds must be positive, got {t}")));
        }
    }
    let prefix = args
        .out
        .unwrap_or_else(|| PathBuf::from(format!("errmap_{engine}")));

    let parallel = !args.sequential;
    let reference =
        ReferenceGrid::compute(args.grid, parallel).map_err(|e| compute(e.to_string()))?;
    let map =
        ErrorMap::against(&reference, &evaluator, parallel).map_err(|e| compute(e.to_string()))?;
    let mut summary = map.summary_text(threshold_re, threshold_im);
    summary += &format!("oracle agreement: {:e}\n", reference.worst_agreement());

    write_atomic(&with_suffix(&prefix, "_re.csv"), &map.csv_re())?;
    write_atomic(&with_suffix(&prefix, "_im.csv"), &map.csv_im())?;
    write_atomic(&with_suffix(&prefix, "_summary.txt"), &summary)?;
    print!("{summary}");
    Ok(map.meets(threshold_re, threshold_im))
}

fn bench(args: BenchArgs) -> Result<(), Failure> {
    let ice = || -> Result<(String, Evaluator), Failure> {
        let p = args.expansion.params().map_err(usage)?;
        Ok(("ice".into(), Evaluator::Ice(IceApproximation::new(p))))
    };
    let weideman = || -> Result<(String, Evaluator), Failure> {
        let c =
            WeidemanCoefficients::build(args.weideman_terms).map_err(|e| usage(e.to_string()))?;
        Ok(("weideman".into(), Evaluator::Weideman(c)))
    };
    let engines = match args.engine {
        None => vec![ice()?, weideman()?],
        Some(Engine::Ice) => vec![ice()?],
        Some(Engine::Weideman) => vec![weideman()?],
        Some(Engine::Oracle) => return Err(usage("bench times the ice and weideman engines only")),
    };
    let report = throughput::run(
        &engines,
        args.size as usize,
        args.repetitions as usize,
        args.seed,
    )
    .map_err(|e| compute(e.to_string()))?;
    print!("{report}");
    Ok(())
}

fn coeffs(args: ExpansionArgs) -> Result<(), Failure> {
    let set = icefad_core::CoefficientSet::build(args.params().map_err(usage)?);
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for m in 0..set.len() {
        writeln!(
            out,
            "{} {:.16e} {:.16e} {:.16e}",
            m + 1,
            set.c()[m],
            set.a()[m],
            set.b()[m]
        )
        .map_err(|e| compute(e.to_string()))?;
    }
    out.flush().map_err(|e| compute(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => eval(a).map(|_| true),
        Command::Errmap(a) => errmap(a),
        Command::Bench(a) => bench(a).map(|_| true),
        Command::Coeffs(a) => coeffs(a).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_THRESHOLD),
        Err(f) => {
            eprintln!("icefad: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
