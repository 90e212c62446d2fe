//! Large-order behaviour of the non-terminating series for |eps| << |mu|:
//! y ~ 1 + sqrt(-pi mu x²/2) erf(sqrt(-mu x²/2)) exp(-mu x²/2).

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ode::GchParams;
use crate::special::erf;
use crate::trf::{trf_infinite_eval, TrfTruncation};

/// Relative gap accepted by the diagnostic; the formula has no error bound.
pub const ASYMPTOTIC_TOLERANCE: f64 = 0.2;

/// The limiting form; needs -mu x² >= 0.
pub fn asymptotic_form(mu: f64, x: f64) -> Result<f64> {
    let s = -0.5 * mu * x * x;
    if s < 0.0 {
        return Err(Error::domain(format!("-mu x^2 = {} is negative, the square roots are not real", 2.0 * s)));
    }
    Ok(1.0 + (PI * s).sqrt() * erf(s.sqrt()) * s.exp())
}

/// Series value against the limiting form at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub params: GchParams,
    pub x: f64,
    pub series: f64,
    pub asymptotic: f64,
    pub relative_gap: f64,
    pub tolerance: f64,
    pub within: bool,
}

/// mu = -2, eps = 1e-6, nu = 1e-3, Omega = -4, omega = 0 at x = 1.5.
///
/// Omega/(2 mu) = 1 and nu -> 0 make the eps -> 0 solution M(1, 1/2, x²),
/// which the limiting form reproduces.
pub fn asymptotic_diagnostic() -> Result<AsymptoticReport> {
    let params = GchParams::new(-2.0, 1e-6, 1e-3, -4.0, 0.0);
    let x = 1.5;
    let v = trf_infinite_eval(&params, 0.0, x, &TrfTruncation::new(4, 200)?)?;
    let asymptotic = asymptotic_form(params.mu, x)?;
    let relative_gap = (v.value - asymptotic).abs() / asymptotic.abs();
    Ok(AsymptoticReport {
        params,
        x,
        series: v.value,
        asymptotic,
        relative_gap,
        tolerance: ASYMPTOTIC_TOLERANCE,
        within: relative_gap <= ASYMPTOTIC_TOLERANCE,
    })
}
