//! `conical` command line: parameter conversion, spectra, wavefunctions,
//! kernels and verification.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or configuration
//! error, 3 a result that cannot be delivered to the requested tolerance.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::geometry::{ConeGeometry, PhysicalConstants};
use crate::oracles::CurvatureTermMode;
use crate::propagator::{full_kernel, full_kernel_spectral, KernelQuery};
use crate::spectrum::{OscillatorModel, QuantumNumbers};
use crate::verify::{run_suites, Suite, VerifyRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TOLERANCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "conical",
    version,
    about = "Quantum mechanics on a cone: spectra, kernels and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert between sigma, deficit angle and string density G*eta.
    Convert(ConvertArgs),
    /// Bound-state energies E = hbar omega (2n + 1 + nu).
    Spectrum(SpectrumArgs),
    /// Sample one eigenfunction on a radial grid.
    Wavefunction(WavefunctionArgs),
    /// Euclidean propagator K(r1, r2, dtheta; beta) with its truncation bound.
    Kernel(KernelArgs),
    /// Run the oracle suites and report per-invariant results.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output format (csv for data tables, json for verify by default).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("parameter").required(true).args(["sigma", "deficit_angle", "g_eta"])))]
struct ConvertArgs {
    #[arg(long, allow_negative_numbers = true)]
    sigma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    deficit_angle: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    g_eta: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

/// Model parameters; unset flags fall back to the config file, then to
/// sigma = 0.5, omega = kappa = mass = hbar = 1.
#[derive(Debug, Args)]
struct ModelArgs {
    /// key=value file with any of: sigma, omega, kappa, mass, hbar, format, output.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    sigma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    kappa: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    mass: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    hbar: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Largest energy listed.
    #[arg(long, default_value_t = 10.0)]
    e_max: f64,
    /// Largest |m| listed.
    #[arg(long, default_value_t = 3)]
    m_max: u32,
    /// Report energies in units of hbar omega.
    #[arg(long)]
    natural: bool,
}

#[derive(Debug, Args)]
struct WavefunctionArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, short)]
    n: u32,
    #[arg(long, short, allow_negative_numbers = true)]
    m: i64,
    #[arg(long, default_value_t = 0.0)]
    r_min: f64,
    /// Defaults to 6 oscillator lengths.
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long, default_value_t = 201)]
    points: usize,
}

#[derive(Debug, Args)]
struct KernelArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    r1: f64,
    #[arg(long)]
    r2: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    dtheta: f64,
    #[arg(long)]
    beta: f64,
    /// Angular channels |m| <= m_max are summed.
    #[arg(long, default_value_t = 40)]
    m_max: u32,
    /// Build each radial kernel from its spectral sum up to n_max instead of the closed form.
    #[arg(long)]
    n_max: Option<u32>,
    /// Fail with exit 3 when the truncation bound exceeds this absolute value.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Suites to run (repeatable); all when omitted.
    #[arg(long, value_parser = parse_suite)]
    suite: Vec<Suite>,
    /// Curvature term of the finite-difference Schrödinger oracle.
    #[arg(long, default_value = "jensen-koppe", value_parser = parse_mode)]
    mode: CurvatureTermMode,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<CurvatureTermMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Overflow { .. } | Error::NoConvergence(_) => EXIT_TOLERANCE,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Convert(a) => convert(a, out),
        Command::Spectrum(a) => spectrum(a, out),
        Command::Wavefunction(a) => wavefunction(a, out),
        Command::Kernel(a) => kernel(a, out, err),
        Command::Verify(a) => verify(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read_config(path: &Path) -> std::result::Result<HashMap<String, String>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Failure::usage(format!(
                "{}:{}: expected key=value, got {raw:?}",
                path.display(),
                lineno + 1
            ))
        })?;
        let key = key.trim().replace('-', "_");
        if ![
            "sigma", "omega", "kappa", "mass", "hbar", "format", "output",
        ]
        .contains(&key.as_str())
        {
            return Err(Failure::usage(format!(
                "{}:{}: unknown key {key:?}",
                path.display(),
                lineno + 1
            )));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

/// Model and output settings after applying flags > config file > defaults.
struct Resolved {
    model: OscillatorModel,
    format: Option<Format>,
    output: Option<PathBuf>,
}

fn resolve(args: &ModelArgs) -> std::result::Result<Resolved, Failure> {
    let file = match &args.config {
        Some(p) => read_config(p)?,
        None => HashMap::new(),
    };
    let number =
        |flag: Option<f64>, key: &str, default: f64| -> std::result::Result<f64, Failure> {
            if let Some(v) = flag {
                return Ok(v);
            }
            match file.get(key) {
                Some(s) => s
                    .parse()
                    .map_err(|_| Failure::usage(format!("config: {key} = {s:?} is not a number"))),
                None => Ok(default),
            }
        };
    let sigma = number(args.sigma, "sigma", 0.5)?;
    let omega = number(args.omega, "omega", 1.0)?;
    let kappa = number(args.kappa, "kappa", 1.0)?;
    let mass = number(args.mass, "mass", 1.0)?;
    let hbar = number(args.hbar, "hbar", 1.0)?;
    let format = match (args.out.format, file.get("format")) {
        (Some(f), _) => Some(f),
        (None, Some(s)) => Some(
            Format::from_str(s, true)
                .map_err(|_| Failure::usage(format!("config: unknown format {s:?}")))?,
        ),
        (None, None) => None,
    };
    let output = args
        .out
        .output
        .clone()
        .or_else(|| file.get("output").map(PathBuf::from));
    let geom = ConeGeometry::from_sigma(sigma)?;
    let model = OscillatorModel::new(geom, PhysicalConstants::new(mass, hbar)?, omega, kappa)?;
    Ok(Resolved {
        model,
        format,
        output,
    })
}

fn emit(
    text: &str,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure {
            code: EXIT_USAGE,
            message: format!("cannot write {}: {e}", p.display()),
        }),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure {
            code: EXIT_USAGE,
            message: format!("cannot write output: {e}"),
        }),
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ConvertRow {
    sigma: f64,
    deficit_angle: f64,
    g_eta: f64,
}

fn convert(a: ConvertArgs, out: &mut dyn Write) -> CmdResult {
    let geom = match (a.sigma, a.deficit_angle, a.g_eta) {
        (Some(s), _, _) => ConeGeometry::from_sigma(s)?,
        (_, Some(g), _) => ConeGeometry::from_deficit_angle(g)?,
        (_, _, Some(g)) => ConeGeometry::from_string_density(g)?,
        _ => unreachable!("clap enforces exactly one parameterization"),
    };
    let row = ConvertRow {
        sigma: geom.sigma(),
        deficit_angle: geom.deficit_angle(),
        g_eta: geom.string_density(),
    };
    let text = match a.out.format.unwrap_or(Format::Csv) {
        Format::Csv => format!(
            "sigma,deficit_angle,g_eta\n{},{},{}\n",
            row.sigma, row.deficit_angle, row.g_eta
        ),
        Format::Json => to_json(&row),
    };
    emit(&text, a.out.output.as_deref(), out)?;
    Ok(EXIT_OK)
}

fn spectrum(a: SpectrumArgs, out: &mut dyn Write) -> CmdResult {
    let cfg = resolve(&a.model)?;
    if !(a.e_max.is_finite() && a.e_max > 0.0) {
        return Err(Failure::usage(format!(
            "--e-max must be > 0, got {}",
            a.e_max
        )));
    }
    let model = cfg.model;
    // with --natural, --e-max is read in units of hbar omega as well
    let unit = if a.natural {
        model.hbar() * model.omega()
    } else {
        1.0
    };
    let mut states = model.enumerate_states(a.e_max * unit, a.m_max);
    if a.natural {
        for s in &mut states {
            s.energy /= unit;
        }
    }
    let text = match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut t = String::from("n,m,nu,energy\n");
            for s in &states {
                let _ = writeln!(t, "{},{},{},{}", s.n, s.m, s.nu, s.energy);
            }
            t
        }
        Format::Json => to_json(&states),
    };
    emit(&text, cfg.output.as_deref(), out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct WavefunctionRow {
    r: f64,
    psi_abs: f64,
    psi_radial: f64,
}

fn wavefunction(a: WavefunctionArgs, out: &mut dyn Write) -> CmdResult {
    let cfg = resolve(&a.model)?;
    let model = cfg.model;
    let r_max = a.r_max.unwrap_or(6.0 * model.length());
    if !(a.r_min.is_finite() && a.r_min >= 0.0 && r_max.is_finite() && r_max > a.r_min) {
        return Err(Failure::usage(format!(
            "need 0 <= r_min < r_max, got [{}, {r_max}]",
            a.r_min
        )));
    }
    if a.points < 2 {
        return Err(Failure::usage(format!(
            "--points must be >= 2, got {}",
            a.points
        )));
    }
    let qn = QuantumNumbers::new(a.n, a.m);
    let step = (r_max - a.r_min) / (a.points - 1) as f64;
    let rows = (0..a.points)
        .map(|i| {
            let r = if i + 1 == a.points {
                r_max
            } else {
                a.r_min + i as f64 * step
            };
            let psi = model.wavefunction(qn, r, 0.0)?;
            Ok(WavefunctionRow {
                r,
                psi_abs: psi.norm(),
                psi_radial: psi.re,
            })
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let text = match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut t = String::from("r,psi_abs,psi_radial\n");
            for row in &rows {
                let _ = writeln!(t, "{},{},{}", row.r, row.psi_abs, row.psi_radial);
            }
            t
        }
        Format::Json => to_json(&rows),
    };
    emit(&text, cfg.output.as_deref(), out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct KernelRecord {
    value: f64,
    tail_bound: f64,
    m_max: u32,
    n_max: Option<u32>,
}

fn kernel(a: KernelArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let cfg = resolve(&a.model)?;
    let model = cfg.model;
    let q = KernelQuery::new(a.r1, a.r2, a.beta, a.m_max, a.n_max.unwrap_or(0))?;
    let kv = match a.n_max {
        Some(_) => full_kernel_spectral(&model, &q, a.dtheta)?,
        None => full_kernel(&model, &q, a.dtheta)?,
    };
    let record = KernelRecord {
        value: kv.value,
        tail_bound: kv.tail_bound,
        m_max: kv.m_max,
        n_max: kv.n_max,
    };
    if let Some(tol) = a.tolerance {
        let bound = kv.tail_bound + kv.spectral_remainder.unwrap_or(0.0);
        // a NaN bound fails too
        if bound.is_nan() || bound > tol {
            let _ = writeln!(
                err,
                "error: truncation bound {bound} exceeds tolerance {tol} (tail_bound {}, m_max {}); raise --m-max{}",
                kv.tail_bound,
                kv.m_max,
                if kv.n_max.is_some() { " or --n-max" } else { "" }
            );
            return Ok(EXIT_TOLERANCE);
        }
    }
    let text = match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => format!(
            "value,tail_bound,m_max,n_max\n{},{},{},{}\n",
            record.value,
            record.tail_bound,
            record.m_max,
            record.n_max.map(|n| n.to_string()).unwrap_or_default()
        ),
        Format::Json => to_json(&record),
    };
    emit(&text, cfg.output.as_deref(), out)?;
    Ok(EXIT_OK)
}

fn verify(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let cfg = resolve(&a.model)?;
    let suites: Vec<Suite> = if a.suite.is_empty() {
        Suite::ALL.to_vec()
    } else {
        a.suite.clone()
    };
    let records = run_suites(&suites, &cfg.model, a.mode)?;
    let text = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&records),
        Format::Csv => {
            let mut t = String::from("suite,case,expected,actual,tolerance,pass\n");
            for r in &records {
                let _ = writeln!(
                    t,
                    "{},{},{},{},{},{}",
                    r.suite, r.case, r.expected, r.actual, r.tolerance, r.pass
                );
            }
            t
        }
    };
    emit(&text, cfg.output.as_deref(), out)?;
    let failing: Vec<&VerifyRecord> = records.iter().filter(|r| !r.pass).collect();
    if failing.is_empty() {
        return Ok(EXIT_OK);
    }
    for r in failing {
        let _ = writeln!(
            err,
            "FAIL {}",
            serde_json::to_string(r).expect("plain data serializes")
        );
    }
    Ok(EXIT_VERIFY_FAILED)
}
