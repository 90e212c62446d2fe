//! Nested integral representations of the normalised solutions through
//! transfer order 2.
//!
//! With G_0 the level-0 kernel, level k is
//! G_k(W) = ∫∫ t^{e_t} u^{e_u} (1/2πi)∮ exp(-W σ) / (v^{β_k+1}(1-v)) [(κθ + c_k) G_{k-1}](W t u v)
//! where σ = v(1-t)(1-u)/(1-v), θ = W d/dW, and (κ, c_k) is the step numerator
//! joining level k-1 to k. The solution is prefactor × Σ_k eps~^k G_k(z).
//!
//! Terminating branch: every v-contour is a pole of finite order and is
//! evaluated by the trapezoid rule. θ passes through the exponential as
//! θ[E(Wσ) g(Wτ)] = E(Wσ) [-Wσ g(Wτ) + (θg)(Wτ)].
//!
//! Infinite branch: the v-exponent is generally non-integer, so each contour
//! is replaced by its residue value Σ_i h_i (W t u)^i M(a_k + i, 1, W(1-t)(1-u)),
//! and the (t, u) integrals are done by Gauss–Jacobi quadrature; an inner
//! level is carried in coefficient space through its (t, u) moments.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ode::GchParams;
use crate::quadrature::{circle_points, gauss_jacobi, QuadratureSpec, Rule};
use crate::special::{gamma, is_nonpositive_integer, kummer_m, pochhammer, CompensatedComplexSum, CompensatedSum, Kind};
use crate::trf::{LevelShape, StepNumerator, TerminationLadder};

/// Highest transfer order with a quadrature implementation.
pub const MAX_TRANSFER_ORDER: usize = 2;

/// Relative size below which a kernel coefficient ends the expansion.
const COEFF_CUTOFF: f64 = 1e-18;

/// Which family of solutions to represent.
#[derive(Debug, Clone, PartialEq)]
pub enum RepBranch {
    Polynomial(TerminationLadder),
    Infinite,
}

/// Running argument w_{a,b} = z ∏_{l=a}^{b} t_l u_l v_l of a nested level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferState {
    pub w: Complex64,
    pub a: usize,
    pub b: usize,
}

impl TransferState {
    /// w_{b+1,b} = z before any level has been entered.
    pub fn root(z: f64, b: usize) -> Self {
        TransferState { w: Complex64::new(z, 0.0), a: b + 1, b }
    }

    /// Enters level a - 1 at the node (t, u, v). |t|, |u| <= 1 and |v| < 1
    /// keep |w| from growing.
    pub fn descend(&self, t: f64, u: f64, v: Complex64) -> Self {
        debug_assert!(self.a > 0);
        let w = self.w * v * (t * u);
        debug_assert!(w.norm() <= self.w.norm() * (1.0 + 1e-15));
        TransferState { w, a: self.a - 1, b: self.b }
    }
}

/// (kappa, c) with step numerator kappa*i + c joining level k-1 to level k.
fn operator(shape: &LevelShape, k: usize) -> (f64, f64) {
    match shape.numerator {
        StepNumerator::Linear { omega_low } => (1.0, 0.5 * (k as f64 - 1.0) + 0.5 * shape.lambda + 0.5 * omega_low),
        StepNumerator::Unit => (0.0, 1.0),
    }
}

/// Jacobi exponents of level k: t^{p_k - 2}, u^{q_k - 2}.
fn level_rules(shape: &LevelShape, k: usize, nodes: usize) -> Result<(Rule, Rule)> {
    let (et, eu) = (shape.p(k) - 2.0, shape.q(k) - 2.0);
    if et <= -1.0 || eu <= -1.0 {
        return Err(Error::domain(format!(
            "level {k} weights t^{et} u^{eu} are not integrable on [0, 1]; need both exponents > -1"
        )));
    }
    Ok((gauss_jacobi(nodes, et, 0.0)?, gauss_jacobi(nodes, eu, 0.0)?))
}

fn poly(c: &[f64], w: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &ck| acc * w + ck)
}

/// One tensor node of a terminating level, with the contour factor folded
/// into `weight`.
struct Node {
    weight: Complex64,
    tau: Complex64,
    sigma: Complex64,
}

fn level_nodes(shape: &LevelShape, k: usize, beta: u32, spec: &QuadratureSpec) -> Result<Vec<Node>> {
    let (tr, ur) = level_rules(shape, k, spec.line_nodes)?;
    let vs = circle_points(spec.circle_radius, spec.circle_nodes);
    let one = Complex64::new(1.0, 0.0);
    let nv = spec.circle_nodes as f64;
    let mut out = Vec::with_capacity(tr.len() * ur.len() * vs.len());
    for (&t, &wt) in tr.nodes.iter().zip(&tr.weights) {
        for (&u, &wu) in ur.nodes.iter().zip(&ur.weights) {
            for &v in &vs {
                let weight = wt * wu / nv * v / (v.powi(beta as i32 + 1) * (one - v));
                out.push(Node { weight, tau: v * (t * u), sigma: v * ((1.0 - t) * (1.0 - u)) / (one - v) });
            }
        }
    }
    Ok(out)
}

fn finite(c: Complex64, what: &'static str) -> Result<Complex64> {
    if c.re.is_finite() && c.im.is_finite() {
        Ok(c)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Bracket Σ_{k <= n_cap} eps~^k G_k(z) of the terminating branch.
fn polynomial_bracket(
    betas: &[u32],
    shape: &LevelShape,
    z: f64,
    eps_tilde: f64,
    n_cap: usize,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let g0 = {
        let mut c = vec![1.0];
        for j in 0..betas[0] as usize {
            let next = c[j] * shape.ratio(0, -f64::from(betas[0]), j)?;
            c.push(next);
        }
        c
    };
    let mut total = CompensatedSum::new();
    total.add(poly(&g0, Complex64::new(z, 0.0)).re);
    if n_cap == 0 {
        return Ok(total.value());
    }
    let (k1, c1) = operator(shape, 1);
    let h0: Vec<f64> = g0.iter().enumerate().map(|(i, &g)| (k1 * i as f64 + c1) * g).collect();
    let th0: Vec<f64> = h0.iter().enumerate().map(|(i, &h)| i as f64 * h).collect();
    let inner = level_nodes(shape, 1, betas[1], spec)?;

    // [(kappa θ + c) G_1](W); kappa = 0, c = 1 gives G_1 itself.
    let g1_op = |w: Complex64, kappa: f64, c: f64| -> Complex64 {
        let mut acc = CompensatedComplexSum::new();
        for nd in &inner {
            let ws = w * nd.sigma;
            let wt = w * nd.tau;
            let h = poly(&h0, wt);
            let f = if kappa == 0.0 { c * h } else { kappa * (poly(&th0, wt) - ws * h) + c * h };
            acc.add(nd.weight * (-ws).exp() * f);
        }
        acc.value()
    };

    let root = TransferState::root(z, n_cap);
    let g1 = finite(g1_op(root.w, 0.0, 1.0), "first transfer level")?;
    total.add(eps_tilde * g1.re);
    if n_cap == 1 {
        return Ok(total.value());
    }

    let (k2, c2) = operator(shape, 2);
    let (tr, ur) = level_rules(shape, 2, spec.line_nodes)?;
    let vs = circle_points(spec.circle_radius, spec.circle_nodes);
    let one = Complex64::new(1.0, 0.0);
    let nv = spec.circle_nodes as f64;
    let b2 = betas[2] as i32;
    let tu: Vec<(f64, f64, f64)> = tr
        .nodes
        .iter()
        .zip(&tr.weights)
        .flat_map(|(&t, &wt)| ur.nodes.iter().zip(&ur.weights).map(move |(&u, &wu)| (t, u, wt * wu)))
        .collect();
    // One entry per outer (t, u) node, summed in a fixed order afterwards.
    let parts: Vec<Complex64> = tu
        .par_iter()
        .map(|&(t, u, w)| {
            let mut acc = CompensatedComplexSum::new();
            for &v in &vs {
                let st = root.descend(t, u, v);
                let x = z * (1.0 - t) * (1.0 - u) * v / (one - v);
                let kern = (-x).exp() * v / (v.powi(b2 + 1) * (one - v));
                acc.add(kern * g1_op(st.w, k2, c2));
            }
            acc.value() * (w / nv)
        })
        .collect();
    let mut g2 = CompensatedComplexSum::new();
    for p in parts {
        g2.add(p);
    }
    let g2 = finite(g2.value(), "second transfer level")?;
    total.add(eps_tilde * eps_tilde * g2.re);
    Ok(total.value())
}

/// Power-series coefficients of M-type level-0 kernel, cut where they fall
/// below COEFF_CUTOFF relative to the running maximum (|z| weighted).
fn kernel_coeffs(shape: &LevelShape, a0: f64, z: f64, cap: usize) -> Result<Vec<f64>> {
    let mut c = vec![1.0];
    let mut biggest: f64 = 1.0;
    let az = z.abs().max(1e-300);
    for j in 0..cap {
        let next = c[j] * shape.ratio(0, a0, j)?;
        c.push(next);
        let size = next.abs() * az.powi(j as i32 + 1);
        biggest = biggest.max(size);
        if size < COEFF_CUTOFF * biggest && j > 2 {
            return Ok(c);
        }
        if next == 0.0 {
            return Ok(c);
        }
    }
    Err(Error::NonConvergence { what: "integral representation kernel expansion", terms: cap })
}

/// Σ_i h_i (z t u)^i M(a + i, 1, z(1-t)(1-u)) integrated against the level rules.
fn collapsed_level(h: &[f64], a: f64, z: f64, tr: &Rule, ur: &Rule) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    for (&t, &wt) in tr.nodes.iter().zip(&tr.weights) {
        for (&u, &wu) in ur.nodes.iter().zip(&ur.weights) {
            let x = z * (1.0 - t) * (1.0 - u);
            let s = z * t * u;
            let mut inner = CompensatedSum::new();
            let mut sp = 1.0;
            for (i, &hi) in h.iter().enumerate() {
                if hi != 0.0 {
                    inner.add(hi * sp * kummer_m(a + i as f64, 1.0, x)?);
                }
                sp *= s;
            }
            acc.add(wt * wu * inner.value());
        }
    }
    Ok(acc.value())
}

/// Bracket of the infinite branch. `a0` is Omega/(2 mu) + lambda/2.
fn infinite_bracket(
    shape: &LevelShape,
    b0: f64,
    a0: f64,
    z: f64,
    eps_tilde: f64,
    n_cap: usize,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let mut total = CompensatedSum::new();
    total.add(kummer_m(a0, b0, z)?);
    if n_cap == 0 {
        return Ok(total.value());
    }
    // Moments are exact for degree < 2 line_nodes, which bounds the expansion.
    let cap = 2 * spec.line_nodes - 1;
    let g0 = kernel_coeffs(shape, a0, z, cap)?;
    let (k1, c1) = operator(shape, 1);
    let h: Vec<f64> = g0.iter().enumerate().map(|(i, &g)| (k1 * i as f64 + c1) * g).collect();
    let a1 = a0 + 0.5;
    let (t1, u1) = level_rules(shape, 1, spec.line_nodes)?;
    total.add(eps_tilde * collapsed_level(&h, a1, z, &t1, &u1)?);
    if n_cap == 1 {
        return Ok(total.value());
    }

    // G_1 in coefficient space: g1_m = Σ_{i+l=m} h_i (a1+i)_l/(l!)^2 T(i,l) U(i,l)
    // with T, U the (t, u) moments under the level-1 weights.
    let mmax = cap;
    let moments = |r: &Rule| -> Vec<Vec<f64>> {
        (0..=mmax)
            .map(|i| {
                (0..=mmax - i)
                    .map(|l| {
                        r.nodes.iter().zip(&r.weights).map(|(&x, &w)| w * x.powi(i as i32) * (1.0 - x).powi(l as i32)).sum()
                    })
                    .collect()
            })
            .collect()
    };
    let (tm, um) = (moments(&t1), moments(&u1));
    let mut g1 = vec![0.0; mmax + 1];
    for (i, &hi) in h.iter().enumerate().take(mmax + 1) {
        let mut lc = 1.0;
        for l in 0..=mmax - i {
            g1[i + l] += hi * lc * tm[i][l] * um[i][l];
            let lf = l as f64;
            lc *= (a1 + i as f64 + lf) / ((lf + 1.0) * (lf + 1.0));
        }
    }
    let (k2, c2) = operator(shape, 2);
    let h2: Vec<f64> = g1.iter().enumerate().map(|(m, &g)| (k2 * m as f64 + c2) * g).collect();
    let last = h2.last().copied().unwrap_or(0.0) * z.abs().powi(mmax as i32);
    let lead = h2.iter().enumerate().map(|(m, &c)| (c * z.abs().powi(m as i32)).abs()).fold(0.0, f64::max);
    if last.abs() > 1e-15 * lead {
        return Err(Error::NonConvergence { what: "second-level coefficient expansion", terms: mmax });
    }
    let (t2, u2) = level_rules(shape, 2, spec.line_nodes)?;
    total.add(eps_tilde * eps_tilde * collapsed_level(&h2, a0 + 1.0, z, &t2, &u2)?);
    Ok(total.value())
}

fn z_power(gamma_p: f64, z: f64) -> Result<f64> {
    let e = 1.0 - gamma_p;
    if e != e.round() && z <= 0.0 {
        return Err(Error::domain(format!("z^{e} needs z > 0, got z = {z}")));
    }
    if e < 0.0 && z == 0.0 {
        return Err(Error::domain(format!("z^{e} is singular at z = 0")));
    }
    Ok(z.powf(e))
}

/// Prefactor of the infinite-branch representation: Γ(γ - Ω/2μ)/Γ(γ) (first
/// kind) or z^{1-γ} Γ(1 - Ω/2μ)/Γ(2 - γ) (second kind).
pub fn infinite_prefactor(kind: Kind, p: &GchParams, z: f64) -> Result<f64> {
    let r = p.omega_ratio()?;
    let g = p.gamma();
    let (num, den, zp) = match kind {
        Kind::First => (g - r, g, 1.0),
        Kind::Second => (1.0 - r, 2.0 - g, z_power(g, z)?),
    };
    if is_nonpositive_integer(num) || is_nonpositive_integer(den) {
        return Err(Error::domain(format!("prefactor Gamma({num})/Gamma({den}) has a pole")));
    }
    Ok(zp * gamma(num) / gamma(den))
}

/// Evaluates the integral representation with the transfer sum cut at n_cap.
///
/// The terminating branch is normalised like `qw_rw_eval`; its step numerator
/// is taken from `omega_low` of `p` and Omega is ignored. The infinite branch
/// carries `infinite_prefactor`.
pub fn integral_rep_eval(
    kind: Kind,
    branch: &RepBranch,
    p: &GchParams,
    x: f64,
    n_cap: usize,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let numerator = StepNumerator::Linear { omega_low: p.omega_low };
    integral_rep_eval_with(kind, branch, p, numerator, x, n_cap, spec)
}

/// As `integral_rep_eval` with an explicit step numerator.
pub fn integral_rep_eval_with(
    kind: Kind,
    branch: &RepBranch,
    p: &GchParams,
    numerator: StepNumerator,
    x: f64,
    n_cap: usize,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if n_cap > MAX_TRANSFER_ORDER {
        return Err(Error::Dimension(n_cap));
    }
    spec.validate()?;
    let g = p.gamma();
    let lambda = match kind {
        Kind::First => 0.0,
        Kind::Second => 2.0 * (1.0 - g),
    };
    let shape = LevelShape { gamma: g, lambda, numerator };
    let z = p.z_of(x);
    let et = p.eps_tilde_of(x);
    let g_low = kind.shifted_gamma(g);
    let value = match branch {
        RepBranch::Polynomial(ladder) => {
            if ladder.kind() != kind {
                return Err(Error::Ladder(format!("ladder is {}-kind, requested {kind}", ladder.kind())));
            }
            let betas = ladder.betas();
            if betas.len() < n_cap + 1 {
                return Err(Error::Ladder(format!("ladder has {} entries, n_cap = {n_cap}", betas.len())));
            }
            if is_nonpositive_integer(g_low) {
                return Err(Error::domain(format!("{kind}-kind prefactor Gamma({g_low}) has a pole")));
            }
            let pre = match kind {
                Kind::First => 1.0,
                Kind::Second => z_power(g, z)?,
            } * pochhammer(g_low, betas[0]);
            pre * polynomial_bracket(betas, &shape, z, et, n_cap, spec)?
        }
        RepBranch::Infinite => {
            let a0 = p.omega_ratio()? + 0.5 * lambda;
            infinite_prefactor(kind, p, z)? * infinite_bracket(&shape, g_low, a0, z, et, n_cap, spec)?
        }
    };
    if !value.is_finite() {
        return Err(Error::NonFinite("integral representation"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::chp_eval;
    use crate::trf::{qw_rw_eval, trf_infinite_eval, TrfTruncation};

    fn ladder(b: &[u32], kind: Kind) -> TerminationLadder {
        TerminationLadder::new(b.to_vec(), kind).unwrap()
    }

    #[test]
    fn order_zero_is_the_polynomial() {
        let p = GchParams::new(-2.0, 1.0, 2.0, 0.0, 0.8);
        let got = integral_rep_eval(Kind::First, &RepBranch::Polynomial(ladder(&[2], Kind::First)), &p, 0.5, 0, &QuadratureSpec::default())
            .unwrap();
        assert_eq!(got, chp_eval(Kind::First, 2, 1.5, p.z_of(0.5)).unwrap());
    }

    #[test]
    fn polynomial_orders_match_series() {
        let spec = QuadratureSpec::new(64, 0.5, 16).unwrap();
        for (kind, nu) in [(Kind::First, 2.0), (Kind::Second, 0.6)] {
            let p = GchParams::new(-2.0, 1.0, nu, 0.0, 0.8);
            for (b, n) in [(vec![1u32, 1], 1usize), (vec![2, 2], 1), (vec![1, 1, 2], 2)] {
                let l = ladder(&b, kind);
                let got = integral_rep_eval(kind, &RepBranch::Polynomial(l.clone()), &p, 0.5, n, &spec).unwrap();
                let num = StepNumerator::Linear { omega_low: 0.8 };
                let want =
                    qw_rw_eval(&l, p.gamma(), num, p.z_of(0.5), p.eps_tilde_of(0.5), &TrfTruncation::new(n, 1).unwrap())
                        .unwrap();
                assert!((got - want).abs() < 1e-9, "{kind} {b:?}: {got} vs {want}");
            }
        }
    }

    fn infinite_oracle(kind: Kind, p: &GchParams, x: f64, n: usize) -> f64 {
        let lambda = p.lambda(kind).unwrap();
        let s = trf_infinite_eval(p, lambda, x, &TrfTruncation::new(n, 80).unwrap()).unwrap().value;
        let z = p.z_of(x);
        let bracket = s / x.powf(lambda);
        infinite_prefactor(kind, p, z).unwrap() * bracket
    }

    #[test]
    fn infinite_orders_match_series() {
        let spec = QuadratureSpec::default();
        let p = GchParams::new(-2.0, 0.3, 1.4, 1.0, 0.6);
        for n in 0..=2 {
            let got = integral_rep_eval(Kind::First, &RepBranch::Infinite, &p, 0.3, n, &spec).unwrap();
            let want = infinite_oracle(Kind::First, &p, 0.3, n);
            assert!((got - want).abs() < 1e-10, "n={n}: {got} vs {want}");
        }
        let p = GchParams::new(-1.5, -0.7, 0.8, 0.9, -0.4);
        for n in 0..=2 {
            let got = integral_rep_eval(Kind::Second, &RepBranch::Infinite, &p, 0.6, n, &spec).unwrap();
            let want = infinite_oracle(Kind::Second, &p, 0.6, n);
            assert!((got - want).abs() < 1e-10, "n={n}: {got} vs {want}");
        }
    }

    #[test]
    fn transfer_order_three_is_rejected() {
        let p = GchParams::new(-2.0, 0.3, 1.4, 1.0, 0.6);
        let r = integral_rep_eval(Kind::First, &RepBranch::Infinite, &p, 0.3, 3, &QuadratureSpec::default());
        assert_eq!(r, Err(Error::Dimension(3)));
    }

    #[test]
    fn transfer_state_shrinks() {
        let s = TransferState::root(0.8, 2).descend(0.5, 0.5, Complex64::new(0.0, 0.5));
        assert_eq!((s.a, s.b), (2, 2));
        assert!((s.w.norm() - 0.1).abs() < 1e-15);
    }
}
