//! Radial eigenproblems whose regular solutions are GCH polynomials: the
//! rotating harmonic oscillator, a class of confinement potentials and the
//! relative motion of two electrons in a magnetic field and parabolic dot.
//!
//! Units default to hbar = mass = 1. Every model exposes the GCH parameters
//! of its reduced equation, so a wave function can be checked against the
//! radial equation it came from.

mod asymptotic;
mod confinement;
mod oscillator;
mod qdot;

pub use asymptotic::{asymptotic_diagnostic, asymptotic_form, AsymptoticReport, ASYMPTOTIC_TOLERANCE};
pub use confinement::{confinement_energy, ConfinementModel};
pub use oscillator::{oscillator_eigenvalue, OscillatorModel};
pub use qdot::{qdot_energy, QuantumDotModel};

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;
use crate::special::{CompensatedSum, Kind};
use crate::trf::TerminationLadder;

/// |psi(r_max)| / peak above this means the tail was cut.
pub const DECAY_TOL: f64 = 1e-12;

/// Abscissae used for the r -> 0 boundary extrapolation.
pub const RICHARDSON_RADII: [f64; 3] = [1e-3, 5e-4, 2.5e-4];

/// Integration measure for the normalisation integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    /// dr, for one-dimensional radial equations.
    Line,
    /// r dr, for the planar relative motion.
    Polar,
}

/// One (i, beta) entry of an eigenvalue table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LadderEntry {
    pub i: u32,
    pub beta: u32,
    pub value: f64,
}

/// Evaluates `f` on the (i, beta) grid in row-major order. Either range may be empty.
pub fn ladder_grid<F>(is: RangeInclusive<u32>, betas: RangeInclusive<u32>, f: F) -> Vec<LadderEntry>
where
    F: Fn(u32, u32) -> f64 + Sync,
{
    let cells: Vec<(u32, u32)> = is.flat_map(|i| betas.clone().map(move |b| (i, b))).collect();
    cells.par_iter().map(|&(i, beta)| LadderEntry { i, beta, value: f(i, beta) }).collect()
}

/// Wave functions built on the first-kind polynomial only; the second kind is
/// singular at the origin for every model here.
pub(crate) fn require_first_kind(ladder: &TerminationLadder) -> Result<()> {
    if ladder.kind() != Kind::First {
        return Err(Error::domain("radial wave functions use the first-kind polynomial"));
    }
    Ok(())
}

pub(crate) fn require_positive_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain(format!("radius must be positive and finite, got {r}")));
    }
    Ok(())
}

/// N with ∫_0^{r_max} N² |f|² dμ = 1, by an n-point Gauss–Legendre rule.
///
/// Fails with `NotDecayed` when |f(r_max)| exceeds `DECAY_TOL` times the
/// largest sampled |f|.
pub fn normalization_constant<F>(f: F, measure: Measure, r_max: f64, nodes: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(r_max > 0.0 && r_max.is_finite()) {
        return Err(Error::domain(format!("r_max must be positive and finite, got {r_max}")));
    }
    if nodes < 2 {
        return Err(Error::domain(format!("normalisation needs at least 2 nodes, got {nodes}")));
    }
    let rule = gauss_legendre(nodes, 0.0, r_max);
    let mut acc = CompensatedSum::new();
    let mut peak = 0.0f64;
    for (&r, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(r)?;
        if !v.is_finite() {
            return Err(Error::NonFinite("wave function"));
        }
        peak = peak.max(v.abs());
        let dm = match measure {
            Measure::Line => 1.0,
            Measure::Polar => r,
        };
        acc.add(w * v * v * dm);
    }
    let end = f(r_max)?.abs();
    peak = peak.max(end);
    if peak == 0.0 {
        return Err(Error::domain("wave function vanishes on the whole interval"));
    }
    if end > DECAY_TOL * peak {
        return Err(Error::NotDecayed(end / peak));
    }
    Ok(1.0 / acc.value().sqrt())
}

/// Limit of g(r) as r -> 0+ from samples at r, r/2, r/4, assuming
/// g(r) = g(0) + a r + b r² + O(r³).
pub fn richardson_limit(g: [f64; 3]) -> f64 {
    let r1 = 2.0 * g[1] - g[0];
    let r2 = 2.0 * g[2] - g[1];
    (4.0 * r2 - r1) / 3.0
}

/// Extrapolated psi(r) / r^power at the origin from the samples at
/// `RICHARDSON_RADII`.
pub fn boundary_coefficient<F>(psi: F, power: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut g = [0.0; 3];
    for (slot, &r) in g.iter_mut().zip(&RICHARDSON_RADII) {
        *slot = psi(r)? / r.powf(power);
    }
    Ok(richardson_limit(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gaussian_normalisation_on_the_line() {
        let n = normalization_constant(|r| Ok((-r * r / 2.0).exp()), Measure::Line, 12.0, 120).unwrap();
        let want = (2.0 / PI.sqrt()).sqrt();
        assert!((n - want).abs() < 1e-13, "{n} vs {want}");
    }

    #[test]
    fn polar_measure_and_linearity() {
        // ∫ r e^{-r²} dr = 1/2.
        let n = normalization_constant(|r| Ok((-r * r / 2.0).exp()), Measure::Polar, 12.0, 120).unwrap();
        assert!((n - 2f64.sqrt()).abs() < 1e-13);
        let n2 = normalization_constant(|r| Ok(2.0 * (-r * r / 2.0).exp()), Measure::Polar, 12.0, 120).unwrap();
        assert!((n2 - n / 2.0).abs() < 1e-14);
        let again = normalization_constant(|r| Ok(n * (-r * r / 2.0).exp()), Measure::Polar, 12.0, 120).unwrap();
        assert!((again - 1.0).abs() < 1e-12);
    }

    #[test]
    fn undecayed_tail_is_reported() {
        let e = normalization_constant(|r| Ok((-r).exp()), Measure::Line, 5.0, 40).unwrap_err();
        assert!(matches!(e, Error::NotDecayed(x) if x > 1e-3));
    }

    #[test]
    fn richardson_removes_linear_and_quadratic_terms() {
        let g = |r: f64| 3.0 - 2.0 * r + 7.0 * r * r;
        let l = richardson_limit([g(1e-3), g(5e-4), g(2.5e-4)]);
        assert!((l - 3.0).abs() < 1e-14);
    }

    #[test]
    fn grid_order_is_row_major() {
        let t = ladder_grid(0..=1, 0..=2, |i, b| f64::from(10 * i + b));
        let v: Vec<f64> = t.iter().map(|e| e.value).collect();
        assert_eq!(v, vec![0.0, 1.0, 2.0, 10.0, 11.0, 12.0]);
        assert_eq!(ladder_grid(0..=0, 0..=0, |_, _| 1.0).len(), 1);
        #[allow(clippy::reversed_empty_ranges)]
        let empty = ladder_grid(1..=0, 0..=3, |_, _| 1.0);
        assert!(empty.is_empty());
    }
}
