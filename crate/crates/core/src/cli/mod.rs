//! `gchkit` command line: `eval`, `verify` and `spectrum`.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage or domain error,
//! 3 numerical non-convergence.

mod config;
mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ode::{eval_series, frobenius_coeffs, GchParams};
use crate::physics::{
    confinement_energy, ladder_grid, normalization_constant, oscillator_eigenvalue, qdot_energy, ConfinementModel,
    Measure, OscillatorModel, QuantumDotModel,
};
use crate::special::Kind;
use crate::trf::{trf_infinite_eval, trf_polynomial_eval, TerminationLadder, TrfTruncation};
use crate::verify::{run_suite, Suite};

pub use config::{merge as merge_config, parse as parse_config};
pub use output::{Cell, Meta, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "GCHKIT_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser, Serialize)]
#[command(name = "gchkit", version, about = "Evaluate, verify and tabulate grand confluent hypergeometric functions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct GlobalArgs {
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write the table here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    /// Seed for the randomised verification grids.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Flat key = value file; explicit flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Frobenius series against the nested three-term series on an x grid.
    Eval(EvalArgs),
    /// Run a property suite and report per-check errors.
    Verify(VerifyArgs),
    /// Eigenvalue ladders of the radial models over an (i, beta) grid.
    Spectrum(SpectrumArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    First,
    Second,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::First => Kind::First,
            KindArg::Second => Kind::Second,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Infinite,
    Polynomial,
}

#[derive(Debug, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct EvalArgs {
    #[arg(long)]
    pub mu: f64,
    #[arg(long)]
    pub eps: f64,
    #[arg(long)]
    pub nu: f64,
    #[arg(long = "Omega")]
    pub omega_cap: f64,
    #[arg(long = "omega")]
    pub omega_low: f64,
    /// Evaluation points, comma separated or repeated.
    #[arg(long, required = true, value_delimiter = ',', num_args = 1..)]
    pub x: Vec<f64>,
    #[arg(long, value_enum, default_value = "first")]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value = "infinite")]
    pub branch: Branch,
    /// Termination ladder beta_0 <= beta_1 <= ... for the polynomial branch.
    #[arg(long, value_delimiter = ',')]
    pub ladder: Vec<u32>,
    /// Outer cut-off: powers of eps~ kept.
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// Inner cut-off: powers of z kept per level.
    #[arg(long, default_value_t = 200)]
    pub inner: usize,
    /// Frobenius coefficients in the oracle.
    #[arg(long, default_value_t = 160)]
    pub degree: usize,
    /// Relative tail above which a row counts as unconverged (exit 3).
    #[arg(long, default_value_t = 1e-8)]
    pub tail_tol: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(value_parser = parse_suite, default_value = "all")]
    #[serde(serialize_with = "ser_suite")]
    pub suite: Suite,
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn ser_suite<S: serde::Serializer>(s: &Suite, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(s.name())
}

#[derive(Debug, Args, Serialize)]
pub struct SpectrumArgs {
    #[command(subcommand)]
    pub model: ModelCmd,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Ranges {
    #[arg(long, default_value_t = 0)]
    pub imin: u32,
    #[arg(long, default_value_t = 2)]
    pub imax: u32,
    #[arg(long, default_value_t = 0)]
    pub bmin: u32,
    #[arg(long, default_value_t = 2)]
    pub bmax: u32,
    /// Normalised wave-function samples per state on (0, r_max]; 0 for eigenvalues only.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    #[arg(long, default_value_t = 20.0)]
    pub r_max: f64,
    /// Gauss–Legendre nodes for the normalisation integral.
    #[arg(long, default_value_t = 400)]
    pub nodes: usize,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum ModelCmd {
    /// Rotating harmonic oscillator; tabulates lambda_m.
    Oscillator {
        #[arg(long, default_value_t = 0)]
        lm: u32,
        /// Coupling w.
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[command(flatten)]
        ranges: Ranges,
    },
    /// V(r) = -a/r + b r + c r²; alpha_F and beta_F follow from b and c.
    #[command(allow_negative_numbers = true)]
    Confinement {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[command(flatten)]
        ranges: Ranges,
    },
    /// Two electrons in a parabolic dot with a magnetic field.
    #[command(allow_negative_numbers = true)]
    Qdot {
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long = "omega-c", default_value_t = 0.0)]
        omega_c: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0)]
        m: i32,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 1.0)]
        eps_inf: f64,
        #[arg(long, default_value_t = 1.0)]
        charge: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[command(flatten)]
        ranges: Ranges,
    },
}

/// Failure of a command after argument parsing.
#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(std::io::Error),
    /// Verification ran and some gating check failed.
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match config::apply(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "gchkit: {} error: {e}", e.kind());
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "gchkit: cannot start thread pool: {e}");
            return EXIT_USAGE;
        }
    };
    let (name, outcome) = pool.install(|| compute(&cli.command, cli.global.seed));
    match emit(&cli, name, outcome, stdout) {
        Ok(()) => EXIT_OK,
        Err(Failure::Verify) => EXIT_VERIFY_FAILED,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(stderr, "gchkit: {} error: {e}", e.kind());
            if e.is_convergence() {
                EXIT_NONCONVERGENCE
            } else {
                EXIT_USAGE
            }
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "gchkit: i/o error: {e}");
            EXIT_USAGE
        }
    }
}

fn compute(command: &Command, seed: u64) -> (&'static str, Outcome) {
    match command {
        Command::Eval(a) => ("eval", cmd_eval(a)),
        Command::Verify(a) => ("verify", cmd_verify(a, seed)),
        Command::Spectrum(a) => ("spectrum", cmd_spectrum(a)),
    }
}

fn emit(cli: &Cli, name: &'static str, outcome: Outcome, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    // A late failure (unconverged rows, failed checks) still emits the table.
    let (table, late) = outcome?;
    let config = serde_json::to_value(&cli.command).unwrap_or(serde_json::Value::Null);
    let meta = Meta { command: name, seed: cli.global.seed, config };
    match &cli.global.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            output::render(&table, &meta, cli.global.format, &mut w)?;
            w.flush()?;
        }
        None => output::render(&table, &meta, cli.global.format, stdout)?,
    }
    late.map_or(Ok(()), Err)
}

type Outcome = Result<(Table, Option<Failure>)>;

fn cmd_eval(a: &EvalArgs) -> Outcome {
    let p = GchParams::new(a.mu, a.eps, a.nu, a.omega_cap, a.omega_low);
    let kind = Kind::from(a.kind);
    let lambda = p.lambda(kind)?;
    if !(a.tail_tol > 0.0) {
        return Err(Error::Domain(format!("tail_tol must be positive, got {}", a.tail_tol)));
    }
    let trunc = TrfTruncation::new(a.n_max, a.inner)?;
    let oracle = frobenius_coeffs(&p, lambda, a.degree)?;
    let ladder = match a.branch {
        Branch::Infinite => None,
        Branch::Polynomial => {
            if a.ladder.is_empty() {
                return Err(Error::Ladder("the polynomial branch needs --ladder".into()));
            }
            Some(TerminationLadder::new(a.ladder.clone(), kind)?)
        }
    };
    let mut table = Table::new(vec!["x", "series_oracle", "trf_series", "|diff|", "tail_estimate"]);
    let mut worst: Option<(f64, f64)> = None;
    for &x in &a.x {
        let o = eval_series(&oracle, x)?;
        let (value, tail) = match &ladder {
            None => {
                let v = trf_infinite_eval(&p, lambda, x, &trunc)?;
                (v.value, v.tail)
            }
            Some(l) => {
                let v = trf_polynomial_eval(l, p.gamma(), lambda, p.omega_low, x, p.z_of(x), p.eps_tilde_of(x), &trunc)?;
                (v, 0.0)
            }
        };
        let tail = tail.max(o.tail);
        if !(tail <= a.tail_tol * value.abs().max(1.0)) && worst.is_none_or(|(_, t)| tail > t) {
            worst = Some((x, tail));
        }
        table.push(vec![x.into(), o.value.into(), value.into(), (o.value - value).abs().into(), tail.into()]);
    }
    let late = worst.map(|_| {
        Failure::Lib(Error::NonConvergence { what: "eval rows (tail above --tail-tol)", terms: a.n_max.max(a.degree) })
    });
    Ok((table, late))
}

fn cmd_verify(a: &VerifyArgs, seed: u64) -> Outcome {
    let report = run_suite(a.suite, seed);
    let mut table = Table::new(vec!["suite", "name", "max_error", "tolerance", "pass", "gating", "note"]);
    for c in &report.checks {
        table.push(vec![
            c.suite.into(),
            c.name.as_str().into(),
            c.max_error.into(),
            c.tolerance.into(),
            c.pass.into(),
            c.gating.into(),
            c.note.as_str().into(),
        ]);
    }
    Ok((table, (!report.passed()).then_some(Failure::Verify)))
}

/// psi for state (i, beta): the first i + 1 levels, each bounded by beta.
fn state_ladder(i: u32, beta: u32) -> Result<(TerminationLadder, TrfTruncation)> {
    Ok((TerminationLadder::constant(beta, i as usize + 1, Kind::First)?, TrfTruncation::new(i as usize, 1)?))
}

fn cmd_spectrum(a: &SpectrumArgs) -> Outcome {
    let (label, ranges, measure, energy, psi): (
        &'static str,
        &Ranges,
        Measure,
        Box<dyn Fn(u32, u32) -> f64 + Sync>,
        Box<dyn Fn(u32, u32, f64) -> Result<f64> + Sync>,
    ) = match &a.model {
        ModelCmd::Oscillator { lm, omega, ranges } => {
            let m = OscillatorModel::new(*lm, *omega)?;
            (
                "lambda_m",
                ranges,
                Measure::Line,
                Box::new(move |i, b| oscillator_eigenvalue(&m, i, b)),
                Box::new(move |i, b, r| {
                    let (l, t) = state_ladder(i, b)?;
                    m.wavefunction(&l, r, &t)
                }),
            )
        }
        ModelCmd::Confinement { a: pa, b: pb, c: pc, l, mass, hbar, ranges } => {
            let m = ConfinementModel::from_potential(*pa, *pb, *pc, *mass, *hbar)?;
            let l = *l;
            (
                "energy",
                ranges,
                Measure::Line,
                Box::new(move |i, b| confinement_energy(&m, i, b, l)),
                Box::new(move |i, b, r| {
                    let (lad, t) = state_ladder(i, b)?;
                    m.wavefunction(&lad, l, r, &t)
                }),
            )
        }
        ModelCmd::Qdot { omega, omega_c, sigma, m, mass, eps_inf, charge, hbar, ranges } => {
            let q = QuantumDotModel::new(*mass, *omega, *omega_c, *sigma, *m, *eps_inf, *charge, *hbar)?;
            (
                "energy",
                ranges,
                Measure::Polar,
                Box::new(move |i, b| qdot_energy(&q, i, b)),
                Box::new(move |i, b, r| {
                    let (l, t) = state_ladder(i, b)?;
                    q.radial(&l, r, &t)
                }),
            )
        }
    };
    let grid = ladder_grid(ranges.imin..=ranges.imax, ranges.bmin..=ranges.bmax, &energy);
    if ranges.samples == 0 {
        let mut table = Table::new(vec!["i", "beta", label]);
        for e in grid {
            table.push(vec![e.i.into(), e.beta.into(), e.value.into()]);
        }
        return Ok((table, None));
    }
    let mut table = Table::new(vec!["i", "beta", label, "r", "psi"]);
    let h = ranges.r_max / ranges.samples as f64;
    for e in grid {
        let f = |r: f64| psi(e.i, e.beta, r);
        let n = normalization_constant(f, measure, ranges.r_max, ranges.nodes)?;
        for k in 1..=ranges.samples {
            let r = h * k as f64;
            table.push(vec![e.i.into(), e.beta.into(), e.value.into(), r.into(), (n * f(r)?).into()]);
        }
    }
    Ok((table, None))
}
