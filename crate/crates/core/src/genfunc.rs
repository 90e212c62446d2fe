//! Generating functions of the confluent hypergeometric polynomials and of
//! the terminating GCH solutions under a finitely supported weight sequence.
//!
//! The operator Σ_{β_0} s_0^{β_0}/β_0! ∏_{n=1}^{K} Σ_{β_n ≥ β_{n-1}} s_n^{β_n}
//! stops at the support K of the weights, so every "tail product" s_{a,∞}
//! is the finite product s_a ⋯ s_K.
//!
//! Three evaluations are provided. `genfunc_gch_lhs` sums the β-lattice
//! directly. `genfunc_gch_rhs` is the closed form in which every v-contour
//! has been replaced by its residue at the weight pole v = s_{n,∞}.
//! `genfunc_gch_rhs_contour` keeps the contours, with the β_0-sum folded into
//! the kernel A(s_{0,∞}/(v_1⋯v_n); w); that kernel is singular at the origin
//! and at v = s_{0,∞}/…, so the contour also collects residues the closed form
//! drops whenever s_0 ≠ 0 and n ≥ 1.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ode::GchParams;
use crate::quadrature::{circle_points, gauss_jacobi, QuadratureSpec, Rule};
use crate::special::{CompensatedComplexSum, CompensatedSum, Kind};
use crate::trf::{qw_rw_eval, LevelShape, StepNumerator, TerminationLadder, TrfTruncation};

/// Largest β-lattice `genfunc_gch_lhs` will enumerate.
pub const MAX_LATTICE: f64 = 1e7;

/// Highest transfer order of the closed forms.
pub const MAX_GENFUNC_ORDER: usize = 2;

/// Weights s_0..s_K; s_i = 0 beyond K is expressed by stopping the operator at K.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightSeq {
    s: Vec<f64>,
}

impl WeightSeq {
    pub fn new(s: Vec<f64>) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::domain("weight sequence needs at least s_0"));
        }
        if let Some(bad) = s.iter().find(|v| !(v.abs() < 1.0)) {
            return Err(Error::domain(format!("weights need |s_i| < 1, got {bad}")));
        }
        Ok(WeightSeq { s })
    }

    pub fn weights(&self) -> &[f64] {
        &self.s
    }

    /// K, the index of the last weight.
    pub fn support(&self) -> usize {
        self.s.len() - 1
    }

    /// s_{a,b} = s_a ⋯ s_b; 1 when a > b.
    pub fn partial(&self, a: usize, b: usize) -> f64 {
        if a > b {
            return 1.0;
        }
        self.s[a..=b.min(self.support())].iter().product()
    }

    /// s_{a,∞} = s_a ⋯ s_K.
    pub fn tail(&self, a: usize) -> f64 {
        self.partial(a, self.support())
    }

    /// ∏_{k=a}^{K} 1/(1 - s_{k,∞}).
    pub fn tail_factor(&self, a: usize) -> f64 {
        (a..=self.support()).map(|k| 1.0 / (1.0 - self.tail(k))).product()
    }
}

/// Σ_{b ≥ from} s^b = s^from/(1 - s).
pub fn geometric_tail(s: f64, from: u32) -> Result<f64> {
    if !(s.abs() < 1.0) {
        return Err(Error::domain(format!("geometric sum needs |s| < 1, got {s}")));
    }
    Ok(s.powi(from as i32) / (1.0 - s))
}

/// (1 - t)^{-g} exp(-z t/(1 - t)) with g = gamma (first kind) or 2 - gamma
/// (second kind): the generating function Σ_d t^d/d! of F_d or A_d.
pub fn genfunc_chp(kind: Kind, t: f64, gamma: f64, z: f64) -> Result<f64> {
    if !(t.abs() < 1.0) {
        return Err(Error::domain(format!("generating function needs |t| < 1, got {t}")));
    }
    let g = kind.shifted_gamma(gamma);
    Ok((1.0 - t).powf(-g) * (-z * t / (1.0 - t)).exp())
}

fn kernel_c(kind: Kind, s: Complex64, w: Complex64, gamma: f64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let g = kind.shifted_gamma(gamma);
    (one - s).powf(-g) * (-w * s / (one - s)).exp()
}

/// Truncation of the β-lattice: β_n ≤ beta_cap for every summed index, and
/// transfer orders through n_cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeCaps {
    pub beta_cap: u32,
    pub n_cap: usize,
}

/// Number of nondecreasing tuples β_0 ≤ … ≤ β_n ≤ cap.
fn lattice_size(cap: u32, n: usize) -> f64 {
    // C(cap + n + 1, n + 1)
    let c = f64::from(cap);
    (1..=n + 1).map(|k| (c + k as f64) / k as f64).product()
}

fn shape_for(kind: Kind, p: &GchParams, numerator: StepNumerator) -> LevelShape {
    let g = p.gamma();
    let lambda = match kind {
        Kind::First => 0.0,
        Kind::Second => 2.0 * (1.0 - g),
    };
    LevelShape { gamma: g, lambda, numerator }
}

fn check_order(ws: &WeightSeq, n_cap: usize) -> Result<()> {
    if n_cap > MAX_GENFUNC_ORDER {
        return Err(Error::Dimension(n_cap));
    }
    if ws.support() < n_cap {
        return Err(Error::domain(format!("weight support {} is below the transfer order {n_cap}", ws.support())));
    }
    Ok(())
}

/// Direct β-lattice sum of the weighted normalised solutions through eps~^{n_cap}.
///
/// Indices n_cap < n ≤ K do not enter the solution and are summed in closed
/// form, contributing s_{n_cap+1,∞}^{β_{n_cap}} ∏_{k>n_cap} 1/(1 - s_{k,∞}).
pub fn genfunc_gch_lhs(kind: Kind, p: &GchParams, ws: &WeightSeq, x: f64, caps: LatticeCaps) -> Result<f64> {
    let numerator = StepNumerator::Linear { omega_low: p.omega_low };
    genfunc_gch_lhs_with(kind, p, numerator, ws, x, caps)
}

/// As `genfunc_gch_lhs` with an explicit step numerator.
pub fn genfunc_gch_lhs_with(
    kind: Kind,
    p: &GchParams,
    numerator: StepNumerator,
    ws: &WeightSeq,
    x: f64,
    caps: LatticeCaps,
) -> Result<f64> {
    let n = caps.n_cap;
    if ws.support() < n {
        return Err(Error::domain(format!("weight support {} is below the transfer order {n}", ws.support())));
    }
    let size = lattice_size(caps.beta_cap, n);
    if size > MAX_LATTICE {
        return Err(Error::TooLarge { count: size, limit: MAX_LATTICE });
    }
    let (z, et) = (p.z_of(x), p.eps_tilde_of(x));
    let trunc = TrfTruncation::new(n, 1)?;
    let s = ws.weights();
    let closing = ws.tail(n + 1);
    let closing_factor = ws.tail_factor(n + 1);
    let gamma = p.gamma();

    // Each β_0 stripe is independent; stripes are summed in order afterwards.
    let stripes: Vec<Result<f64>> = (0..=caps.beta_cap)
        .into_par_iter()
        .map(|b0| {
            let mut acc = CompensatedSum::new();
            let mut tuple = vec![b0; n + 1];
            let w0 = s[0].powi(b0 as i32) / (1..=b0).map(f64::from).product::<f64>();
            loop {
                let mut w = w0;
                for k in 1..=n {
                    w *= s[k].powi(tuple[k] as i32);
                }
                if w != 0.0 {
                    w *= closing.powi(tuple[n] as i32);
                    let ladder = TerminationLadder::new(tuple.clone(), kind)?;
                    acc.add(w * qw_rw_eval(&ladder, gamma, numerator, z, et, &trunc)?);
                }
                // Next nondecreasing tuple with tuple[0] fixed.
                let mut k = n;
                while k >= 1 && tuple[k] == caps.beta_cap {
                    k -= 1;
                }
                if k == 0 {
                    break;
                }
                tuple[k] += 1;
                for m in k + 1..=n {
                    tuple[m] = tuple[k];
                }
            }
            Ok(acc.value())
        })
        .collect();
    let mut total = CompensatedSum::new();
    for st in stripes {
        total.add(st?);
    }
    Ok(closing_factor * total.value())
}

fn z_power(kind: Kind, gamma: f64, z: f64) -> Result<f64> {
    match kind {
        Kind::First => Ok(1.0),
        Kind::Second => {
            let e = 1.0 - gamma;
            if (e != e.round() && z <= 0.0) || (e < 0.0 && z == 0.0) {
                return Err(Error::domain(format!("z^{e} is undefined at z = {z}")));
            }
            Ok(z.powf(e))
        }
    }
}

/// (kappa, c) of the operator (kappa θ + c) between levels k-1 and k.
fn operator(shape: &LevelShape, k: usize) -> (f64, f64) {
    match shape.numerator {
        StepNumerator::Linear { omega_low } => (1.0, 0.5 * (k as f64 - 1.0) + 0.5 * shape.lambda + 0.5 * omega_low),
        StepNumerator::Unit => (0.0, 1.0),
    }
}

fn level_rules(shape: &LevelShape, k: usize, nodes: usize) -> Result<(Rule, Rule)> {
    let (et, eu) = (shape.p(k) - 2.0, shape.q(k) - 2.0);
    if et <= -1.0 || eu <= -1.0 {
        return Err(Error::domain(format!("level {k} weights t^{et} u^{eu} are not integrable on [0, 1]")));
    }
    Ok((gauss_jacobi(nodes, et, 0.0)?, gauss_jacobi(nodes, eu, 0.0)?))
}

fn tensor(tr: &Rule, ur: &Rule) -> Vec<(f64, f64, f64)> {
    let mut out = Vec::with_capacity(tr.len() * ur.len());
    for (&t, &wt) in tr.nodes.iter().zip(&tr.weights) {
        for (&u, &wu) in ur.nodes.iter().zip(&ur.weights) {
            out.push((t, u, wt * wu));
        }
    }
    out
}

/// Integrand pieces shared by both closed forms at a single level-1 node.
///
/// With Y the kernel argument, ρ = σ/(1 - σ) for the kernel weight σ and
/// E = exp(-W q) the transfer factor (q its exponent per unit W):
/// (κθ + c1) A(σ; Y) = (c1 - κ Y ρ) A and
/// (κθ_W + c2)[E (c1 - κYρ) A] = E A [(c1 - κYρ)(c2 - κWq - κYρ) - κ² Y ρ].
fn level1_factor(kappa: f64, c1: f64, y_rho: Complex64) -> Complex64 {
    c1 - kappa * y_rho
}

fn level2_factor(kappa: f64, c1: f64, c2: f64, wq: Complex64, y_rho: Complex64) -> Complex64 {
    (c1 - kappa * y_rho) * (c2 - kappa * wq - kappa * y_rho) - kappa * kappa * y_rho
}

fn rho(s: Complex64) -> Complex64 {
    s / (Complex64::new(1.0, 0.0) - s)
}

/// Closed form with every contour replaced by its residue at the weight pole.
pub fn genfunc_gch_rhs(
    kind: Kind,
    p: &GchParams,
    ws: &WeightSeq,
    x: f64,
    n_cap: usize,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let numerator = StepNumerator::Linear { omega_low: p.omega_low };
    genfunc_gch_rhs_with(kind, p, numerator, ws, x, n_cap, spec)
}

/// As `genfunc_gch_rhs` with an explicit step numerator.
#[allow(clippy::too_many_arguments)]
pub fn genfunc_gch_rhs_with(
    kind: Kind,
    p: &GchParams,
    numerator: StepNumerator,
    ws: &WeightSeq,
    x: f64,
    n_cap: usize,
    spec: &QuadratureSpec,
) -> Result<f64> {
    check_order(ws, n_cap)?;
    spec.validate()?;
    let shape = shape_for(kind, p, numerator);
    let gamma = p.gamma();
    let (z, et) = (p.z_of(x), p.eps_tilde_of(x));
    let zc = Complex64::new(z, 0.0);
    let s0 = Complex64::new(ws.weights()[0], 0.0);
    let rho0 = rho(s0);
    let mut total = CompensatedSum::new();
    total.add(ws.tail_factor(1) * kernel_c(kind, Complex64::new(ws.tail(0), 0.0), zc, gamma).re);
    if n_cap >= 1 {
        let (k1, c1) = operator(&shape, 1);
        let (tr, ur) = level_rules(&shape, 1, spec.line_nodes)?;
        let s1 = ws.tail(1);
        let r1 = s1 / (1.0 - s1);
        let mut acc = CompensatedSum::new();
        for (t, u, w) in tensor(&tr, &ur) {
            let y = zc * (s1 * t * u);
            let e = (-r1 * z * (1.0 - t) * (1.0 - u)).exp();
            acc.add(w * e * (level1_factor(k1, c1, y * rho0) * kernel_c(kind, s0, y, gamma)).re);
        }
        total.add(et * ws.tail_factor(1) * acc.value());
    }
    if n_cap == 2 {
        let (k1, c1) = operator(&shape, 1);
        let (_, c2) = operator(&shape, 2);
        let (t1, u1) = level_rules(&shape, 1, spec.line_nodes)?;
        let (t2, u2) = level_rules(&shape, 2, spec.line_nodes)?;
        let inner = tensor(&t1, &u1);
        let s1 = ws.weights()[1];
        let s2 = ws.tail(2);
        let (r1, r2) = (s1 / (1.0 - s1), s2 / (1.0 - s2));
        let mut acc = CompensatedSum::new();
        for (t, u, w) in tensor(&t2, &u2) {
            let wv = zc * (s2 * t * u);
            let e2 = (-r2 * z * (1.0 - t) * (1.0 - u)).exp();
            let mut ia = CompensatedComplexSum::new();
            for &(ti, ui, wi) in &inner {
                let q = r1 * (1.0 - ti) * (1.0 - ui);
                let y = wv * (s1 * ti * ui);
                let f = level2_factor(k1, c1, c2, wv * q, y * rho0);
                ia.add((-wv * q).exp() * kernel_c(kind, s0, y, gamma) * f * (wi / (1.0 - s1)));
            }
            acc.add(w * e2 * ia.value().re);
        }
        total.add(et * et * ws.tail_factor(2) * acc.value());
    }
    Ok(z_power(kind, gamma, z)? * total.value())
}

/// Closed form with the contours kept: the β_0-sum becomes A(s_{0,∞}/(v_1⋯v_n); w)
/// and each β_n-sum the factor 1/(v_n - s_{n,∞}/(v_{n+1}⋯)).
///
/// The circle must enclose every weight pole and the kernel singularities
/// of all levels; radii that leave less than 20% margin are rejected.
#[allow(clippy::too_many_arguments)]
pub fn genfunc_gch_rhs_contour(
    kind: Kind,
    p: &GchParams,
    ws: &WeightSeq,
    x: f64,
    n_cap: usize,
    spec: &QuadratureSpec,
) -> Result<f64> {
    check_order(ws, n_cap)?;
    spec.validate()?;
    let numerator = StepNumerator::Linear { omega_low: p.omega_low };
    let shape = shape_for(kind, p, numerator);
    let gamma = p.gamma();
    let (z, et) = (p.z_of(x), p.eps_tilde_of(x));
    let zc = Complex64::new(z, 0.0);
    let r = spec.circle_radius;
    let one = Complex64::new(1.0, 0.0);
    let big = (0..=n_cap.min(1)).map(|a| ws.tail(a).abs()).fold(0.0, f64::max);
    let reach = match n_cap {
        0 => 0.0,
        1 => big,
        _ => (big / r).max(ws.tail(2).abs()),
    };
    if reach > 0.8 * r {
        return Err(Error::domain(format!("contour radius {r} does not clear the weight singularities at {reach}")));
    }
    let vs = circle_points(r, spec.circle_nodes);
    let nv = spec.circle_nodes as f64;
    let s_0 = ws.tail(0);
    let mut total = CompensatedSum::new();
    total.add(ws.tail_factor(1) * kernel_c(kind, Complex64::new(s_0, 0.0), zc, gamma).re);
    if n_cap >= 1 {
        let (k1, c1) = operator(&shape, 1);
        let (tr, ur) = level_rules(&shape, 1, spec.line_nodes)?;
        let s1 = ws.tail(1);
        let mut acc = CompensatedSum::new();
        for (t, u, w) in tensor(&tr, &ur) {
            let mut c = CompensatedComplexSum::new();
            for &v in &vs {
                let sig = s_0 / v;
                let y = zc * v * (t * u);
                let e = (-v / (one - v) * (z * (1.0 - t) * (1.0 - u))).exp();
                let f = level1_factor(k1, c1, y * rho(sig)) * kernel_c(kind, sig, y, gamma);
                c.add(e * f * v / ((one - v) * (v - s1)));
            }
            acc.add(w * (c.value() / nv).re);
        }
        total.add(et * ws.tail_factor(2) * acc.value());
    }
    if n_cap == 2 {
        let (k1, c1) = operator(&shape, 1);
        let (_, c2) = operator(&shape, 2);
        let (t1, u1) = level_rules(&shape, 1, spec.line_nodes)?;
        let (t2, u2) = level_rules(&shape, 2, spec.line_nodes)?;
        let inner = tensor(&t1, &u1);
        let s1 = ws.tail(1);
        let s2 = ws.tail(2);
        let outer: Vec<(f64, f64, f64, Complex64)> =
            tensor(&t2, &u2).into_iter().flat_map(|(t, u, w)| vs.iter().map(move |&v| (t, u, w, v))).collect();
        let parts: Vec<Complex64> = outer
            .par_iter()
            .map(|&(t, u, w, v2)| {
                let wv = zc * v2 * (t * u);
                let e2 = (-v2 / (one - v2) * (z * (1.0 - t) * (1.0 - u))).exp();
                let outer_w = e2 * v2 / ((one - v2) * (v2 - s2)) * (w / nv);
                let mut ia = CompensatedComplexSum::new();
                for &(ti, ui, wi) in &inner {
                    for &v1 in &vs {
                        let sig = s_0 / (v1 * v2);
                        let q = v1 / (one - v1) * ((1.0 - ti) * (1.0 - ui));
                        let y = wv * v1 * (ti * ui);
                        let f = level2_factor(k1, c1, c2, wv * q, y * rho(sig)) * kernel_c(kind, sig, y, gamma);
                        ia.add((-wv * q).exp() * f * v1 / ((one - v1) * (v1 - s1 / v2)) * (wi / nv));
                    }
                }
                outer_w * ia.value()
            })
            .collect();
        let mut acc = CompensatedComplexSum::new();
        for part in parts {
            acc.add(part);
        }
        total.add(et * et * ws.tail_factor(3) * acc.value().re);
    }
    let value = z_power(kind, gamma, z)? * total.value();
    if !value.is_finite() {
        return Err(Error::NonFinite("generating-function contour form"));
    }
    Ok(value)
}
