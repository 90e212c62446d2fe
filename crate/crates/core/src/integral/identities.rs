//! One-level building blocks: a weighted Pochhammer sum equals a
//! (t, u, v) triple integral whose v-contour has a pole of order
//! beta + 1 - i_prev at the origin.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ode::GchParams;
use crate::quadrature::{circle_points, gauss_jacobi, QuadratureSpec};
use crate::special::{CompensatedComplexSum, CompensatedSum};

/// Both sides of an identity, for assertion by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityPair {
    pub lhs: f64,
    pub rhs: f64,
}

impl IdentityPair {
    /// |lhs - rhs| / (1 + |lhs|).
    pub fn scaled_error(&self) -> f64 {
        (self.lhs - self.rhs).abs() / (1.0 + self.lhs.abs())
    }
}

/// Level-j bases: p = 1 + j/2 + lambda/2, q = j/2 + gamma + lambda/2.
fn bases(j: usize, lambda: f64, gamma: f64) -> (f64, f64) {
    let h = 0.5 * j as f64 + 0.5 * lambda;
    (1.0 + h, gamma + h)
}

/// (1/((i + p - 1)(i + q - 1))) Σ_{k=i}^{top} [(a)_k (p)_i (q)_i / ((a)_i (p)_k (q)_k)] z^k.
fn weighted_sum(a: f64, p: f64, q: f64, i_prev: usize, top: usize, z: f64) -> Result<f64> {
    let ip = i_prev as f64;
    let den = (ip + p - 1.0) * (ip + q - 1.0);
    if den == 0.0 {
        return Err(Error::domain("identity prefactor denominator vanishes"));
    }
    let mut acc = CompensatedSum::new();
    let mut term = z.powi(i_prev as i32);
    for k in i_prev..=top {
        acc.add(term);
        let kf = k as f64;
        let d = (p + kf) * (q + kf);
        if d == 0.0 {
            return Err(Error::domain(format!("Pochhammer denominator vanishes at index {k}")));
        }
        term *= (a + kf) / d * z;
    }
    Ok(acc.value() / den)
}

/// ∫∫ t^{et} u^{eu} (z t u)^{i_prev} (1/2πi)∮ exp(-v X/(1-v)) v^{i_prev - order} / (1-v) dv
/// with X = z(1-t)(1-u). The powers of t and u are folded into the Jacobi weights.
fn triple_quadrature(et: f64, eu: f64, i_prev: usize, order: i32, z: f64, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    let ip = i_prev as f64;
    let (et, eu) = (et + ip, eu + ip);
    if et <= -1.0 || eu <= -1.0 {
        return Err(Error::domain(format!("Jacobi exponents ({et}, {eu}) must exceed -1")));
    }
    let tr = gauss_jacobi(spec.line_nodes, et, 0.0)?;
    let ur = gauss_jacobi(spec.line_nodes, eu, 0.0)?;
    let vs = circle_points(spec.circle_radius, spec.circle_nodes);
    let one = Complex64::new(1.0, 0.0);
    // Contour factor v^{i_prev - order + 1} / (1 - v), shared by every (t, u).
    let vf: Vec<(Complex64, Complex64)> =
        vs.iter().map(|&v| (v / (one - v), v.powi(i_prev as i32 - order + 1) / (one - v))).collect();
    let nv = spec.circle_nodes as f64;
    let mut acc = CompensatedSum::new();
    for (&t, &wt) in tr.nodes.iter().zip(&tr.weights) {
        for (&u, &wu) in ur.nodes.iter().zip(&ur.weights) {
            let x = z * (1.0 - t) * (1.0 - u);
            let mut c = CompensatedComplexSum::new();
            for &(s, f) in &vf {
                c.add((-x * s).exp() * f);
            }
            let cv = c.value() / nv;
            if !cv.re.is_finite() {
                return Err(Error::NonFinite("identity quadrature"));
            }
            acc.add(wt * wu * cv.re);
        }
    }
    Ok(z.powi(i_prev as i32) * acc.value())
}

/// The terminating identity at level j with upper limit beta_j.
pub fn verify_kj(
    j: usize,
    lambda: f64,
    gamma: f64,
    beta_j: u32,
    i_prev: usize,
    z: f64,
    spec: &QuadratureSpec,
) -> Result<IdentityPair> {
    if j == 0 {
        return Err(Error::domain("level index j must be positive"));
    }
    if i_prev > beta_j as usize {
        return Err(Error::domain(format!("i_prev = {i_prev} exceeds beta_j = {beta_j}")));
    }
    let (p, q) = bases(j, lambda, gamma);
    let lhs = weighted_sum(-f64::from(beta_j), p, q, i_prev, beta_j as usize, z)?;
    let rhs = triple_quadrature(p - 2.0, q - 2.0, i_prev, beta_j as i32 + 1, z, spec)?;
    Ok(IdentityPair { lhs, rhs })
}

/// The infinite-series analogue with a_j = Omega/(2 mu) + j/2 + lambda/2 in
/// place of -beta_j and v^{a_j - 1} in the contour.
///
/// The sum side is cut at `inner_max` terms past i_prev. For a_j <= 0 the
/// integrand has a pole of order 1 - a_j - i_prev at the origin; for positive
/// integer a_j it is analytic inside the circle and the contour vanishes.
pub fn verify_qj(
    j: usize,
    p: &GchParams,
    lambda: f64,
    i_prev: usize,
    z: f64,
    spec: &QuadratureSpec,
    inner_max: usize,
) -> Result<IdentityPair> {
    if j == 0 {
        return Err(Error::domain("level index j must be positive"));
    }
    let a = p.omega_ratio()? + 0.5 * j as f64 + 0.5 * lambda;
    if a != a.round() {
        return Err(Error::BranchPoint(a - 1.0));
    }
    let (pb, qb) = bases(j, lambda, p.gamma());
    let top = if a <= 0.0 {
        let k = (-a) as usize;
        if i_prev > k {
            return Err(Error::domain(format!("(a)_i_prev vanishes: a = {a}, i_prev = {i_prev}")));
        }
        k
    } else {
        i_prev + inner_max
    };
    let lhs = weighted_sum(a, pb, qb, i_prev, top, z)?;
    let rhs = triple_quadrature(pb - 2.0, qb - 2.0, i_prev, 1 - a as i32, z, spec)?;
    Ok(IdentityPair { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn kj_single_term_example() {
        let r = verify_kj(1, 0.0, 1.5, 0, 0, 0.7, &spec()).unwrap();
        assert!((r.lhs - 2.0).abs() < 1e-15);
        assert!((r.rhs - 2.0).abs() < 1e-10, "{}", r.rhs);
    }

    #[test]
    fn kj_two_term_hand_sum() {
        // j = 2, gamma = 1, beta = 1: p = 2, q = 2, prefactor 1/(1 * 1).
        let r = verify_kj(2, 0.0, 1.0, 1, 0, 0.3, &spec()).unwrap();
        let hand = 1.0 + (-1.0) / (2.0 * 2.0) * 0.3;
        assert!((r.lhs - hand).abs() < 1e-15);
        assert!(r.scaled_error() < 1e-8, "{r:?}");
    }

    #[test]
    fn kj_grid_and_zero_argument() {
        for j in 1..=3 {
            for b in 0..=2u32 {
                for i in 0..=b as usize {
                    for z in [-1.0, 0.0, 0.6] {
                        let r = verify_kj(j, 0.0, 1.5, b, i, z, &spec()).unwrap();
                        assert!(r.scaled_error() < 1e-8, "j={j} b={b} i={i} z={z}: {r:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn qj_holds_for_nonpositive_integer_exponent() {
        // Omega/(2 mu) = -2: a = -1, 0, 0 for the three (j, lambda) pairs.
        let p = GchParams::new(-2.0, 0.0, 2.0, 8.0, 0.0);
        for (j, lambda) in [(2usize, 0.0), (4, 0.0), (2, 2.0)] {
            let r = verify_qj(j, &p, lambda, 0, 0.4, &spec(), 60).unwrap();
            assert!(r.scaled_error() < 1e-7, "j={j} lambda={lambda}: {r:?}");
        }
    }

    #[test]
    fn qj_contour_vanishes_for_positive_exponent() {
        // a = 1: the sum side is nonzero while the contour has no pole.
        let p = GchParams::new(-2.0, 0.0, 2.0, -2.0, 0.0);
        let r = verify_qj(1, &p, 0.0, 0, 0.2, &spec(), 60).unwrap();
        assert!(r.lhs.abs() > 0.1);
        assert!(r.rhs.abs() < 1e-12);
    }

    #[test]
    fn qj_rejects_non_integer_exponent() {
        let p = GchParams::new(-2.0, 0.0, 2.0, 1.0, 0.0);
        assert!(matches!(verify_qj(1, &p, 0.0, 0, 0.2, &spec(), 10), Err(Error::BranchPoint(_))));
    }
}
