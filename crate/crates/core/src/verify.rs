//! Property suites behind `gchkit verify`. Each check reports the largest
//! error seen over its grid and the tolerance it is held to; randomised grids
//! draw from ChaCha8 seeded by the caller, so a seed fixes the whole report.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::genfunc::{
    genfunc_chp, genfunc_gch_lhs, genfunc_gch_rhs, genfunc_gch_rhs_contour, geometric_tail, LatticeCaps, WeightSeq,
};
use crate::integral::{chp_contour, infinite_prefactor, integral_rep_eval, verify_kj, verify_qj, RepBranch};
use crate::ode::GchParams;
use crate::physics::{
    asymptotic_diagnostic, boundary_coefficient, confinement_energy, normalization_constant, oscillator_eigenvalue,
    qdot_energy, ConfinementModel, Measure, OscillatorModel, QuantumDotModel,
};
use crate::quadrature::{gauss_jacobi, QuadratureSpec};
use crate::special::{beta, chp_eval, erf, kummer_m, pochhammer, Kind};
use crate::trf::{qw_rw_eval, trf_infinite_eval, StepNumerator, TerminationLadder, TrfTruncation};

/// A named group of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Kernels,
    Kj,
    Qj,
    Integral,
    Genfunc,
    Apps,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Kernels, Suite::Kj, Suite::Qj, Suite::Integral, Suite::Genfunc, Suite::Apps];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Kernels => "kernels",
            Suite::Kj => "kj",
            Suite::Qj => "qj",
            Suite::Integral => "integral",
            Suite::Genfunc => "genfunc",
            Suite::Apps => "apps",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite '{s}'")))
    }
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Diagnostics only; a failing non-gating check does not fail the report.
    pub gating: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    /// True iff every gating check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass || !c.gating)
    }
}

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: Suite) -> Self {
        Self { suite: suite.name(), checks: Vec::new() }
    }

    fn push(&mut self, name: &str, tolerance: f64, gating: bool, r: Result<(f64, String)>) {
        let (max_error, note) = match r {
            Ok(v) => v,
            Err(e) => (f64::INFINITY, e.to_string()),
        };
        // NaN compares false, so it fails.
        let pass = max_error <= tolerance;
        self.checks.push(Check { suite: self.suite, name: name.to_string(), max_error, tolerance, pass, gating, note });
    }

    fn gate(&mut self, name: &str, tolerance: f64, f: impl FnOnce() -> Result<f64>) {
        self.push(name, tolerance, true, f().map(|e| (e, String::new())));
    }

    fn gate_noted(&mut self, name: &str, tolerance: f64, f: impl FnOnce() -> Result<(f64, String)>) {
        self.push(name, tolerance, true, f());
    }
}

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
}

/// Runs one suite, or every suite in order for `Suite::All`.
pub fn run_suite(suite: Suite, seed: u64) -> Report {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::ALL.to_vec() } else { vec![suite] };
    let mut checks = Vec::new();
    for s in suites {
        // Each suite gets its own stream so adding checks to one leaves the others unchanged.
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (s as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut rec = Recorder::new(s);
        match s {
            Suite::Kernels => kernels(&mut rec, &mut rng),
            Suite::Kj => kj(&mut rec, &mut rng),
            Suite::Qj => qj(&mut rec),
            Suite::Integral => integral(&mut rec),
            Suite::Genfunc => genfunc(&mut rec, &mut rng),
            Suite::Apps => apps(&mut rec),
            Suite::All => unreachable!(),
        }
        checks.extend(rec.checks);
    }
    Report { seed, checks }
}

/// Term recurrence for M(a, b, z) with plain summation; returns the sum and Σ|terms|.
fn kummer_by_terms(a: f64, b: f64, z: f64) -> (f64, f64) {
    let (mut term, mut sum, mut abs) = (1.0f64, 0.0, 0.0);
    for n in 0..2000 {
        sum += term;
        abs += term.abs();
        let nf = n as f64;
        term *= (a + nf) / ((b + nf) * (nf + 1.0)) * z;
        if term.abs() < 1e-18 * abs {
            break;
        }
    }
    (sum, abs)
}

fn kernels(rec: &mut Recorder, rng: &mut ChaCha8Rng) {
    let draws: Vec<(f64, u32, u32)> =
        (0..200).map(|_| (rng.gen_range(-5.0..5.0), rng.gen_range(0..=20), rng.gen_range(0..=20))).collect();
    rec.gate("pochhammer_split", 1e-12, || {
        let mut worst = 0.0f64;
        for &(x, m, n) in &draws {
            let whole = pochhammer(x, m + n);
            let split = pochhammer(x, m) * pochhammer(x + f64::from(m), n);
            let scale = whole.abs().max(split.abs());
            if scale > 0.0 {
                worst = worst.max((whole - split).abs() / scale);
            }
        }
        Ok(worst)
    });

    rec.gate("chp_at_origin", 1e-13, || {
        let mut worst = 0.0f64;
        for d in 0..=6 {
            for g in [0.5, 1.0, 1.5, 2.5, 3.7] {
                worst = worst.max(rel(chp_eval(Kind::First, d, g, 0.0)?, pochhammer(g, d)));
            }
        }
        Ok(worst)
    });

    let kd: Vec<(f64, f64, f64)> = (0..200)
        .map(|_| {
            let b = loop {
                let b: f64 = rng.gen_range(-5.0..5.0);
                if b > 0.1 || (b - b.round()).abs() > 0.1 {
                    break b;
                }
            };
            (rng.gen_range(-5.0..5.0), b, rng.gen_range(-10.0..10.0))
        })
        .collect();
    rec.gate_noted("kummer_vs_term_recurrence", 1e-12, || {
        let mut worst = 0.0f64;
        let mut skipped = 0;
        for &(a, b, z) in &kd {
            let (want, abs) = kummer_by_terms(a, b, z);
            // The plain oracle cannot resolve heavily cancelling sums.
            if abs > 1e3 * want.abs() {
                skipped += 1;
                continue;
            }
            worst = worst.max(rel(kummer_m(a, b, z)?, want));
        }
        Ok((worst, format!("{skipped} of {} draws skipped as ill-conditioned for the oracle", kd.len())))
    });

    rec.gate("beta_vs_gauss_jacobi", 1e-12, || {
        let mut worst = 0.0f64;
        for p in [0.1, 0.35, 1.0, 2.5, 7.9] {
            for q in [0.15, 0.5, 1.0, 3.0, 8.0] {
                let rule = gauss_jacobi(48, p - 1.0, q - 1.0)?;
                let quad: f64 = rule.weights.iter().sum();
                worst = worst.max(rel(quad, beta(p, q)?));
            }
        }
        Ok(worst)
    });

    rec.gate("erf_reference_values", 1e-14, || {
        // Maclaurin oracle, 30 terms: erf(1) = (2/sqrt(pi)) Σ (-1)^n / (n! (2n + 1)).
        let mut s = 0.0;
        let mut f = 1.0;
        for n in 0..30 {
            if n > 0 {
                f *= n as f64;
            }
            s += (-1f64).powi(n) / (f * (2 * n + 1) as f64);
        }
        let maclaurin = 2.0 / std::f64::consts::PI.sqrt() * s;
        Ok((erf(1.0) - maclaurin).abs().max((erf(6.0) - 1.0).abs()).max(erf(0.0).abs()))
    });

    rec.gate("chp_contour_forms", 1e-10, || {
        let mut worst = 0.0f64;
        for kind in [Kind::First, Kind::Second] {
            for d in 0..=4 {
                for g in [1.0, 1.5, 2.5] {
                    for z in [-2.0, -0.5, 0.5, 2.0] {
                        let want = chp_eval(kind, d, g, z)?;
                        let got = chp_contour(kind, d, g, z, 0.5, 128)?;
                        worst = worst.max((got - want).abs() / (1.0 + want.abs()));
                    }
                }
            }
        }
        Ok(worst)
    });

    rec.gate_noted("contour_spectral_convergence", 1e-2, || {
        // Error ratio on doubling, inverted so that smaller is better: needs >= 100x.
        let (d, g, z) = (4, 1.5, 2.0);
        let want = chp_eval(Kind::First, d, g, z)?;
        let e8 = (chp_contour(Kind::First, d, g, z, 0.5, 8)? - want).abs();
        let e16 = (chp_contour(Kind::First, d, g, z, 0.5, 16)? - want).abs();
        let inv = if e16 < 1e-13 { 0.0 } else { e16 / e8 };
        Ok((inv, format!("error 8 nodes {e8:.3e}, 16 nodes {e16:.3e}")))
    });
}

fn kj(rec: &mut Recorder, rng: &mut ChaCha8Rng) {
    let spec = QuadratureSpec::default();
    let mut grid = Vec::new();
    for j in 1..=3usize {
        for b in 0..=2u32 {
            let z: f64 = rng.gen_range(-1.0..1.0);
            let i = rng.gen_range(0..=b as usize);
            grid.push((j, b, i, (z * 1e6).round() / 1e6));
        }
    }
    // Three z values per (j, beta_j) cell: the drawn one plus 0 and its negative.
    let mut points = Vec::new();
    for &(j, b, i, z) in &grid {
        for zz in [z, 0.0, -z] {
            points.push((j, b, i, zz));
        }
    }
    rec.gate_noted("kj_grid_27", 1e-8, || {
        let mut worst = 0.0f64;
        for &(j, b, i, z) in &points {
            worst = worst.max(verify_kj(j, 0.0, 1.5, b, i, z, &spec)?.scaled_error());
        }
        let zs: Vec<String> = grid.iter().map(|g| format!("{}", g.3)).collect();
        Ok((worst, format!("{} points, drawn z = [{}]", points.len(), zs.join(", "))))
    });
    rec.gate("kj_single_term", 1e-10, || {
        let r = verify_kj(1, 0.0, 1.5, 0, 0, 0.7, &spec)?;
        Ok((r.lhs - 2.0).abs().max((r.rhs - 2.0).abs()))
    });
}

/// (Omega, j, lambda, i_prev, z) for the Q_j checks with mu = -2, nu = 2.
const QJ_NONPOSITIVE: [(f64, usize, f64, usize, f64); 4] =
    [(8.0, 2, 0.0, 0, 0.4), (8.0, 4, 0.0, 0, 0.4), (8.0, 2, 2.0, 0, 0.4), (12.0, 2, 0.0, 1, -0.3)];
const QJ_POSITIVE: [(f64, usize, f64, usize, f64); 2] = [(-2.0, 1, 0.0, 0, 0.2), (-6.0, 1, 0.0, 0, 0.4)];

fn qj(rec: &mut Recorder) {
    let spec = QuadratureSpec::default();
    let run = |cases: &[(f64, usize, f64, usize, f64)]| -> Result<(f64, String)> {
        let mut worst = 0.0f64;
        let mut notes = Vec::new();
        for &(om, j, lambda, i, z) in cases {
            let p = GchParams::new(-2.0, 0.0, 2.0, om, 0.0);
            let r = verify_qj(j, &p, lambda, i, z, &spec, 80)?;
            let a = p.omega_ratio()? + 0.5 * j as f64 + 0.5 * lambda;
            notes.push(format!("a={a}: lhs {:.6e} rhs {:.6e}", r.lhs, r.rhs));
            worst = worst.max(r.scaled_error());
        }
        Ok((worst, notes.join("; ")))
    };
    rec.gate_noted("qj_nonpositive_exponent", 1e-7, || run(&QJ_NONPOSITIVE));
    rec.gate_noted("qj_positive_exponent", 1e-7, || run(&QJ_POSITIVE));
}

fn integral(rec: &mut Recorder) {
    let spec = QuadratureSpec::default();
    rec.gate("polynomial_orders_0_1", 1e-7, || {
        let mut worst = 0.0f64;
        for (kind, nu) in [(Kind::First, 2.0), (Kind::Second, 0.6)] {
            let p = GchParams::new(-2.0, 0.3, nu, 0.0, 0.8);
            for (b, n, x) in [(vec![1u32, 1], 1usize, 0.5), (vec![2, 3], 1, 0.7), (vec![2], 0, 0.4)] {
                let l = TerminationLadder::new(b, kind)?;
                let got = integral_rep_eval(kind, &RepBranch::Polynomial(l.clone()), &p, x, n, &spec)?;
                let num = StepNumerator::Linear { omega_low: p.omega_low };
                let want = qw_rw_eval(&l, p.gamma(), num, p.z_of(x), p.eps_tilde_of(x), &TrfTruncation::new(n, 1)?)?;
                worst = worst.max((got - want).abs());
            }
        }
        Ok(worst)
    });
    rec.gate("infinite_orders_0_1", 1e-7, || {
        let mut worst = 0.0f64;
        for (kind, p, x) in [
            (Kind::First, GchParams::new(-2.0, 0.3, 1.4, 1.0, 0.6), 0.3),
            (Kind::Second, GchParams::new(-1.5, -0.7, 0.8, 0.9, -0.4), 0.6),
        ] {
            for n in 0..=1 {
                let got = integral_rep_eval(kind, &RepBranch::Infinite, &p, x, n, &spec)?;
                worst = worst.max((got - infinite_series(kind, &p, x, n)?).abs());
            }
        }
        Ok(worst)
    });
    rec.gate("infinite_order_2_smoke", 1e-6, || {
        let p = GchParams::new(-2.0, 0.3, 1.4, 1.0, 0.6);
        let got = integral_rep_eval(Kind::First, &RepBranch::Infinite, &p, 0.3, 2, &spec)?;
        Ok((got - infinite_series(Kind::First, &p, 0.3, 2)?).abs())
    });
}

/// Prefactor times the nested series through eps~^n, the value the infinite
/// representation must reproduce.
pub fn infinite_series(kind: Kind, p: &GchParams, x: f64, n: usize) -> Result<f64> {
    let lambda = p.lambda(kind)?;
    let s = trf_infinite_eval(p, lambda, x, &TrfTruncation::new(n, 80)?)?;
    Ok(infinite_prefactor(kind, p, p.z_of(x))? * s.value / x.powf(lambda))
}

fn genfunc(rec: &mut Recorder, rng: &mut ChaCha8Rng) {
    rec.gate("kernel_identities", 1e-12, || {
        let mut worst = 0.0f64;
        for kind in [Kind::First, Kind::Second] {
            for t in [-0.5, -0.2, 0.3, 0.5] {
                for g in [0.5, 1.0, 1.5, 2.5] {
                    for z in [-2.0, 0.7, 2.0] {
                        let want = genfunc_chp(kind, t, g, z)?;
                        let mut acc = 0.0;
                        let mut fact = 1.0;
                        for d in 0..=80u32 {
                            if d > 0 {
                                fact *= f64::from(d);
                            }
                            acc += t.powi(d as i32) / fact * chp_eval(kind, d, g, z)?;
                        }
                        worst = worst.max((acc - want).abs() / (1.0 + want.abs()));
                    }
                }
            }
        }
        Ok(worst)
    });
    let ss: Vec<f64> = (0..20).map(|_| rng.gen_range(-0.9..0.9)).collect();
    rec.gate("geometric_tail_lemma", 1e-13, || {
        let mut worst = 0.0f64;
        for &s in &ss {
            for from in [0u32, 1, 3] {
                let direct: f64 = (from..2000).map(|k| s.powi(k as i32)).sum();
                worst = worst.max((geometric_tail(s, from)? - direct).abs());
            }
        }
        Ok(worst)
    });
    let p = GchParams::new(-2.0, 1.0, 2.0, 0.0, 0.8);
    let spec = QuadratureSpec::default();
    let caps1 = LatticeCaps { beta_cap: 30, n_cap: 1 };
    rec.gate("closed_form_s0_zero_order_1", 1e-8, || {
        let ws = WeightSeq::new(vec![0.0, 0.25])?;
        let l = genfunc_gch_lhs(Kind::First, &p, &ws, 0.4, caps1)?;
        Ok((l - genfunc_gch_rhs(Kind::First, &p, &ws, 0.4, 1, &spec)?).abs())
    });
    rec.gate_noted("closed_form_s0_nonzero_order_1", 1e-8, || {
        let ws = WeightSeq::new(vec![0.2, 0.25])?;
        let l = genfunc_gch_lhs(Kind::First, &p, &ws, 0.4, caps1)?;
        let r = genfunc_gch_rhs(Kind::First, &p, &ws, 0.4, 1, &spec)?;
        Ok(((l - r).abs(), format!("lattice {l:.9}, closed form {r:.9}")))
    });
    rec.gate("contour_form_order_1", 1e-8, || {
        let mut worst = 0.0f64;
        for (kind, nu, s) in [(Kind::First, 2.0, [0.2, 0.25]), (Kind::Second, 0.6, [-0.3, 0.2])] {
            let p = GchParams::new(-2.0, 1.0, nu, 0.0, 0.8);
            let ws = WeightSeq::new(s.to_vec())?;
            let l = genfunc_gch_lhs(kind, &p, &ws, 0.4, caps1)?;
            worst = worst.max((l - genfunc_gch_rhs_contour(kind, &p, &ws, 0.4, 1, &spec)?).abs());
        }
        Ok(worst)
    });
}

fn apps(rec: &mut Recorder) {
    rec.gate("energy_ladders_affine", 0.0, || {
        let osc = OscillatorModel::new(2, 0.8)?;
        let conf = ConfinementModel::new(1.0, 0.5, 0.25, 2.0, 0.5, 0.75, 0.5)?;
        let dot = QuantumDotModel::new(0.3, 1.7, 0.4, 0.5, 3, 2.0, 1.1, 0.9)?;
        let mut worst = 0.0f64;
        for i in 0..4 {
            for b in 0..8 {
                let d_osc = oscillator_eigenvalue(&osc, i, b + 1) - oscillator_eigenvalue(&osc, i, b) - 2.0;
                let e1 = confinement_energy(&conf, i, b + 1, 1);
                let d_conf = e1 - confinement_energy(&conf, i, b, 1) - 2.0 * conf.hbar.powi(2) * conf.alpha_f / conf.mass;
                let q1 = qdot_energy(&dot, i, b + 1);
                let d_dot = q1 - qdot_energy(&dot, i, b) - 2.0 * dot.hbar * dot.omega_conf;
                // Spacings are exact up to the rounding of the two energies.
                worst = worst
                    .max(d_osc.abs())
                    .max((d_conf.abs() - 4.0 * f64::EPSILON * e1.abs()).max(0.0))
                    .max((d_dot.abs() - 4.0 * f64::EPSILON * q1.abs()).max(0.0));
            }
        }
        Ok(worst)
    });
    rec.gate("boundary_powers", 1e-6, || boundary_errors().map(|v| v.into_iter().fold(0.0, f64::max)));
    rec.gate("normalization_idempotent", 1e-10, || {
        normalization_errors().map(|v| v.into_iter().fold(0.0, f64::max))
    });
    rec.push("asymptotic_diagnostic", 0.2, false, asymptotic_diagnostic().map(|r| {
        (r.relative_gap, format!("series {:.10e}, limiting form {:.10e}", r.series, r.asymptotic))
    }));
}

/// Relative errors of the extrapolated psi/r^power at 0 against the exact
/// limits, one per model.
pub fn boundary_errors() -> Result<Vec<f64>> {
    let t = TrfTruncation::new(2, 8)?;
    let mut out = Vec::new();

    let osc = OscillatorModel::new(1, 0.9)?;
    let ladder = TerminationLadder::new(vec![2, 2, 3], Kind::First)?;
    let got = boundary_coefficient(|r| osc.wavefunction(&ladder, r, &t), osc.boundary_power())?;
    let want = (-1.0 / (4.0 * osc.omega_c)).exp() * pochhammer(osc.gamma(), 2);
    out.push(rel(got, want));

    let conf = ConfinementModel::from_potential(0.6, 0.3, 0.5, 1.0, 1.0)?;
    let got = boundary_coefficient(|r| conf.wavefunction(&ladder, 2, r, &t), conf.boundary_power(2))?;
    out.push(rel(got, pochhammer(conf.gamma(2), 2)));

    let dot = QuantumDotModel::new(1.0, 1.3, 0.2, 1.0, -2, 1.5, 0.9, 1.0)?;
    let got = boundary_coefficient(|r| dot.radial(&ladder, r, &t), dot.boundary_power())?;
    let want = (dot.eff_mass * dot.omega_conf / dot.hbar).powf(0.5 * dot.angular_power()) * pochhammer(dot.gamma(), 2);
    out.push(rel(got, want));
    Ok(out)
}

/// |∫ |N psi|² dmu - 1| after normalising, one per model.
pub fn normalization_errors() -> Result<Vec<f64>> {
    let t = TrfTruncation::new(2, 8)?;
    let ladder = TerminationLadder::new(vec![1, 2, 2], Kind::First)?;
    let mut out = Vec::new();
    let mut idem = |f: &dyn Fn(f64) -> Result<f64>, m: Measure, r_max: f64| -> Result<()> {
        let n = normalization_constant(f, m, r_max, 400)?;
        let again = normalization_constant(|r| Ok(n * f(r)?), m, r_max, 400)?;
        out.push((again - 1.0).abs());
        Ok(())
    };
    let osc = OscillatorModel::new(1, 0.9)?;
    idem(&|r| osc.wavefunction(&ladder, r, &t), Measure::Line, 24.0)?;
    let conf = ConfinementModel::from_potential(0.6, 0.3, 0.5, 1.0, 1.0)?;
    idem(&|r| conf.wavefunction(&ladder, 1, r, &t), Measure::Line, 14.0)?;
    let dot = QuantumDotModel::new(1.0, 1.3, 0.2, 1.0, -2, 1.5, 0.9, 1.0)?;
    idem(&|r| dot.radial(&ladder, r, &t), Measure::Polar, 12.0)?;
    Ok(out)
}
