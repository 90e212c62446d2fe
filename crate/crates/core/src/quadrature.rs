//! Quadrature rules: Gauss–Legendre, Gauss–Jacobi on [0, 1] and the
//! trapezoid rule on a circle centred at the origin.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::CompensatedComplexSum;

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX: usize = 100;

/// Node counts and radius for the (t, u, v) integral stacks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub circle_nodes: usize,
    pub circle_radius: f64,
    pub line_nodes: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { circle_nodes: 128, circle_radius: 0.5, line_nodes: 32 }
    }
}

impl QuadratureSpec {
    pub fn new(circle_nodes: usize, circle_radius: f64, line_nodes: usize) -> Result<Self> {
        let spec = Self { circle_nodes, circle_radius, line_nodes };
        spec.validate()?;
        Ok(spec)
    }

    /// Node counts at least 8; radius strictly inside (0, 1).
    pub fn validate(&self) -> Result<()> {
        if self.circle_nodes < 8 || self.line_nodes < 8 {
            return Err(Error::domain(format!(
                "quadrature needs at least 8 nodes, got circle {} and line {}",
                self.circle_nodes, self.line_nodes
            )));
        }
        if !(self.circle_radius > 0.0 && self.circle_radius < 1.0) {
            return Err(Error::domain(format!(
                "contour radius must lie in (0, 1), got {}",
                self.circle_radius
            )));
        }
        Ok(())
    }
}

/// Nodes and weights of a one-dimensional rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    /// Σ w_k f(x_k).
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// n-point Gauss–Legendre rule on [a, b].
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..NEWTON_MAX {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < NEWTON_TOL {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = mid - half * x;
        nodes[n - 1 - i] = mid + half * x;
        weights[i] = half * w;
        weights[n - 1 - i] = half * w;
    }
    Rule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// n-point Gauss–Jacobi rule for ∫_0^1 t^a (1-t)^b f(t) dt, a, b > -1.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> Result<Rule> {
    if !(a > -1.0 && b > -1.0) {
        return Err(Error::domain(format!("Gauss–Jacobi exponents must exceed -1, got t^{a} (1-t)^{b}")));
    }
    if n == 0 {
        return Err(Error::domain("Gauss–Jacobi needs at least one node"));
    }
    // weight (1-x)^alf (1+x)^bet on [-1, 1] with t = (1 + x)/2
    let (x, w) = jacobi_symmetric(n, b, a)?;
    let scale = (-(a + b + 1.0) * std::f64::consts::LN_2).exp();
    let nodes = x.iter().map(|&xi| 0.5 * (1.0 + xi)).collect();
    let weights = w.iter().map(|&wi| wi * scale).collect();
    Ok(Rule { nodes, weights })
}

// Newton iteration on the Jacobi recurrence with asymptotic starting
// guesses; nodes come out in decreasing order.
// 6.28 below is an empirical root-guess constant, not tau.
#[allow(clippy::approx_constant)]
fn jacobi_symmetric(n: usize, alf: f64, bet: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let nf = n as f64;
    let alfbet = alf + bet;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut z = 0.0_f64;
    for i in 0..n {
        if i == 0 {
            let an = alf / nf;
            let bn = bet / nf;
            let r1 = (1.0 + alf) * (2.78 / (4.0 + nf * nf) + 0.768 * an / nf);
            let r2 = 1.0 + 1.48 * an + 0.96 * bn + 0.452 * an * an + 0.83 * an * bn;
            z = 1.0 - r1 / r2;
        } else if i == 1 {
            let r1 = (4.1 + alf) / ((1.0 + alf) * (1.0 + 0.156 * alf));
            let r2 = 1.0 + 0.06 * (nf - 8.0) * (1.0 + 0.12 * alf) / nf;
            let r3 = 1.0 + 0.012 * bet * (1.0 + 0.25 * alf.abs()) / nf;
            z -= (1.0 - z) * r1 * r2 * r3;
        } else if i == 2 {
            let r1 = (1.67 + 0.28 * alf) / (1.0 + 0.37 * alf);
            let r2 = 1.0 + 0.22 * (nf - 8.0) / nf;
            let r3 = 1.0 + 8.0 * bet / ((6.28 + bet) * nf * nf);
            z -= (x[0] - z) * r1 * r2 * r3;
        } else if i == n - 2 {
            let r1 = (1.0 + 0.235 * bet) / (0.766 + 0.119 * bet);
            let r2 = 1.0 / (1.0 + 0.639 * (nf - 4.0) / (1.0 + 0.71 * (nf - 4.0)));
            let r3 = 1.0 / (1.0 + 20.0 * alf / ((7.5 + alf) * nf * nf));
            z += (z - x[n - 4]) * r1 * r2 * r3;
        } else if i == n - 1 {
            let r1 = (1.0 + 0.37 * bet) / (1.67 + 0.28 * bet);
            let r2 = 1.0 / (1.0 + 0.22 * (nf - 8.0) / nf);
            let r3 = 1.0 / (1.0 + 8.0 * alf / ((6.28 + alf) * nf * nf));
            z += (z - x[n - 3]) * r1 * r2 * r3;
        } else {
            z = 3.0 * x[i - 1] - 3.0 * x[i - 2] + x[i - 3];
        }
        let mut converged = false;
        for _ in 0..NEWTON_MAX {
            let (p1, pp) = jacobi_eval(n, alf, bet, z);
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= NEWTON_TOL {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NonConvergence { what: "Gauss–Jacobi Newton iteration", terms: NEWTON_MAX });
        }
        x[i] = z;
    }
    // Christoffel weights 1 / Σ p̂_k(x)^2 over orthonormal polynomials: a
    // positive sum, stable where the classical P_n'(x) P_{n-1}(x) form is not
    let mu0 = 2f64.powf(alfbet + 1.0) * crate::special::beta(alf + 1.0, bet + 1.0)?;
    let (diag, off) = jacobi_recurrence(n, alf, bet);
    for (xi, wi) in x.iter().zip(w.iter_mut()) {
        let mut prev = 0.0;
        let mut cur = 1.0 / mu0.sqrt();
        let mut sum = cur * cur;
        for k in 0..n - 1 {
            let next = ((xi - diag[k]) * cur - off[k] * prev) / off[k + 1];
            prev = cur;
            cur = next;
            sum += cur * cur;
        }
        *wi = 1.0 / sum;
    }
    let ordered = x.windows(2).all(|p| p[0] > p[1]) && x[0] < 1.0 && x[n - 1] > -1.0;
    if !ordered || w.iter().any(|wi| !(wi.is_finite() && *wi > 0.0)) {
        return Err(Error::NonConvergence { what: "Gauss–Jacobi root isolation", terms: n });
    }
    Ok((x, w))
}

// Diagonal a_k and off-diagonal sqrt(b_k) of the orthonormal Jacobi
// recurrence; off[0] is unused.
fn jacobi_recurrence(n: usize, alf: f64, bet: f64) -> (Vec<f64>, Vec<f64>) {
    let ab = alf + bet;
    let mut diag = Vec::with_capacity(n);
    let mut off = vec![0.0; n + 1];
    for k in 0..n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        diag.push(if k == 0 { (bet - alf) / (ab + 2.0) } else { (bet * bet - alf * alf) / (s * (s + 2.0)) });
    }
    for (k, o) in off.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let b = if k == 1 {
            4.0 * (1.0 + alf) * (1.0 + bet) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
        } else {
            4.0 * kf * (kf + alf) * (kf + bet) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
        };
        *o = b.sqrt();
    }
    (diag, off)
}

// Returns (P_n, P_n') at z.
fn jacobi_eval(n: usize, alf: f64, bet: f64, z: f64) -> (f64, f64) {
    let alfbet = alf + bet;
    let mut temp = 2.0 + alfbet;
    let mut p1 = (alf - bet + temp * z) / 2.0;
    let mut p2 = 1.0;
    for j in 2..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        temp = 2.0 * jf + alfbet;
        let a = 2.0 * jf * (jf + alfbet) * (temp - 2.0);
        let b = (temp - 1.0) * (alf * alf - bet * bet + temp * (temp - 2.0) * z);
        let c = 2.0 * (jf - 1.0 + alf) * (jf - 1.0 + bet) * temp;
        p1 = (b * p2 - c * p3) / a;
    }
    if n == 1 {
        temp = 2.0 + alfbet;
    }
    let nf = n as f64;
    let pp = (nf * (alf - bet - temp * z) * p1 + 2.0 * (nf + alf) * (nf + bet) * p2) / (temp * (1.0 - z * z));
    (p1, pp)
}

/// Trapezoid approximation of (1/2πi) ∮ f(v) dv on |v| = radius:
/// (1/N) Σ f(v_k) v_k over N equispaced angles.
pub fn contour_trapezoid<F>(mut f: F, radius: f64, nodes: usize) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Complex64,
{
    if nodes == 0 {
        return Err(Error::domain("contour rule needs at least one node"));
    }
    let mut acc = CompensatedComplexSum::new();
    for k in 0..nodes {
        let v = Complex64::from_polar(radius, 2.0 * PI * k as f64 / nodes as f64);
        let fv = f(v) * v;
        if !(fv.re.is_finite() && fv.im.is_finite()) {
            return Err(Error::NonFinite("contour integrand"));
        }
        acc.add(fv);
    }
    Ok(acc.value() / nodes as f64)
}

/// Points on the contour, reused by tensor-product stacks.
pub fn circle_points(radius: f64, nodes: usize) -> Vec<Complex64> {
    (0..nodes)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / nodes as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::beta;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let r = gauss_legendre(10, 0.0, 2.0);
        let got = r.integrate(|x| x.powi(19));
        assert!((got - 2f64.powi(20) / 20.0).abs() < 1e-9);
        assert!((r.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let odd = gauss_legendre(7, -1.0, 1.0);
        assert!(odd.nodes[3].abs() < 1e-15);
    }

    #[test]
    fn jacobi_moments() {
        for &(a, b) in &[(-0.5, -0.5), (0.0, 0.0), (0.25, -0.75), (2.5, 0.5), (-0.9, 3.0)] {
            for &n in &[8usize, 16, 33, 64, 128] {
                let r = gauss_jacobi(n, a, b).unwrap();
                for k in 0..6 {
                    let got = r.integrate(|t| t.powi(k));
                    let want = beta(a + 1.0 + k as f64, b + 1.0).unwrap();
                    assert!(((got - want) / want).abs() < 1e-13, "a={a} b={b} n={n} k={k}: {got} vs {want}");
                }
            }
        }
    }

    #[test]
    fn jacobi_rejects_bad_exponent() {
        assert!(gauss_jacobi(8, -1.0, 0.0).is_err());
        assert!(gauss_jacobi(8, 0.0, -1.2).is_err());
    }

    #[test]
    fn contour_examples() {
        let one_over_v = contour_trapezoid(|v| 1.0 / v, 0.5, 64).unwrap();
        assert!((one_over_v - 1.0).norm() < 1e-15);
        let zero = contour_trapezoid(|_| Complex64::new(1.0, 0.0), 0.3, 16).unwrap();
        assert!(zero.norm() < 1e-15);
        assert!(contour_trapezoid(|v| 1.0 / (v - 0.5), 0.5, 4).is_err());
    }
}
