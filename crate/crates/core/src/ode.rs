//! The GCH equation x y'' + (mu x^2 + eps x + nu) y' + (Omega x + eps omega) y = 0:
//! parameters, Frobenius coefficients about x = 0, residuals and the map
//! from the canonical biconfluent Heun form.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{CompensatedSum, Kind};

/// Default series truncation degree.
pub const DEFAULT_DEGREE: usize = 40;
/// |1 - nu| below this is reported as nearly degenerate.
pub const NEAR_DEGENERATE: f64 = 1e-8;
/// Recurrence denominators below this are treated as resonant.
pub const RESONANCE_TOL: f64 = 1e-12;

/// The five ODE coefficients (mu, eps, nu, Omega, omega).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GchParams {
    pub mu: f64,
    pub eps: f64,
    pub nu: f64,
    pub omega_cap: f64,
    pub omega_low: f64,
}

impl GchParams {
    pub fn new(mu: f64, eps: f64, nu: f64, omega_cap: f64, omega_low: f64) -> Self {
        Self { mu, eps, nu, omega_cap, omega_low }
    }

    /// gamma = (1 + nu)/2.
    pub fn gamma(&self) -> f64 {
        0.5 * (1.0 + self.nu)
    }

    /// z = -mu x^2 / 2.
    pub fn z_of(&self, x: f64) -> f64 {
        -0.5 * self.mu * x * x
    }

    /// eps~ = -eps x / 2.
    pub fn eps_tilde_of(&self, x: f64) -> f64 {
        -0.5 * self.eps * x
    }

    /// Omega / (2 mu); domain error when mu = 0.
    pub fn omega_ratio(&self) -> Result<f64> {
        if self.mu == 0.0 {
            return Err(Error::domain("mu = 0: Omega/(2 mu) and the z map are undefined"));
        }
        Ok(self.omega_cap / (2.0 * self.mu))
    }

    /// Constant coefficient eps * omega of the y term.
    pub fn coupling(&self) -> f64 {
        self.eps * self.omega_low
    }

    pub fn indicial_roots(&self) -> IndicialRoots {
        indicial_roots(self)
    }

    /// Indicial root of the requested branch; the second kind is refused at nu = 1.
    pub fn lambda(&self, kind: Kind) -> Result<f64> {
        match kind {
            Kind::First => Ok(0.0),
            Kind::Second => {
                if self.nu == 1.0 {
                    Err(Error::DegenerateRoot { nu: self.nu })
                } else {
                    Ok(1.0 - self.nu)
                }
            }
        }
    }
}

/// The two exponents at x = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndicialRoots {
    pub first: f64,
    pub second: f64,
    pub degenerate: bool,
    pub near_degenerate: bool,
}

/// Roots 0 and 1 - nu of lambda (lambda - 1 + nu) = 0.
pub fn indicial_roots(p: &GchParams) -> IndicialRoots {
    let second = 1.0 - p.nu;
    IndicialRoots {
        first: 0.0,
        second,
        degenerate: second == 0.0,
        near_degenerate: second.abs() < NEAR_DEGENERATE,
    }
}

/// Frobenius coefficients c_0..c_N for exponent `lambda`, c_0 = 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesCoeffs {
    pub lambda: f64,
    pub coeffs: Vec<f64>,
    pub params: GchParams,
    /// Constant coefficient of the y term; eps * omega unless overridden.
    pub coupling: f64,
}

/// A truncated series value and its tail estimate 2 |c_N x^{N+lambda}|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: f64,
    pub tail: f64,
}

/// c_m (m+l)(m+l-1+nu) = -eps (m-1+l+omega) c_{m-1} - (mu (m-2+l) + Omega) c_{m-2}.
pub fn frobenius_coeffs(p: &GchParams, lambda: f64, n: usize) -> Result<SeriesCoeffs> {
    frobenius_coeffs_coupled(p, p.coupling(), lambda, n)
}

/// As [`frobenius_coeffs`] with the constant coefficient eps*omega replaced
/// by `coupling`, which lets eps = 0 carry a nonzero constant term.
pub fn frobenius_coeffs_coupled(p: &GchParams, coupling: f64, lambda: f64, n: usize) -> Result<SeriesCoeffs> {
    let mut c = Vec::with_capacity(n + 1);
    c.push(1.0);
    for m in 1..=n {
        let mf = m as f64;
        let den = (mf + lambda) * (mf + lambda - 1.0 + p.nu);
        if den.abs() < RESONANCE_TOL {
            return Err(Error::Resonance { m, lambda });
        }
        let c1 = c[m - 1];
        let c2 = if m >= 2 { c[m - 2] } else { 0.0 };
        let num = -(p.eps * (mf - 1.0 + lambda) + coupling) * c1 - (p.mu * (mf - 2.0 + lambda) + p.omega_cap) * c2;
        c.push(num / den);
    }
    Ok(SeriesCoeffs { lambda, coeffs: c, params: *p, coupling })
}

fn check_power_domain(lambda: f64, x: f64) -> Result<()> {
    if lambda != lambda.round() && x <= 0.0 {
        return Err(Error::domain(format!("x^{lambda} needs x > 0 for a non-integer exponent, got x = {x}")));
    }
    if lambda < 0.0 && x == 0.0 {
        return Err(Error::domain(format!("x^{lambda} is singular at x = 0")));
    }
    Ok(())
}

/// Σ c_n x^{n+lambda} with compensated summation.
pub fn eval_series(sc: &SeriesCoeffs, x: f64) -> Result<SeriesValue> {
    check_power_domain(sc.lambda, x)?;
    let mut acc = CompensatedSum::new();
    let mut xp = 1.0;
    for &c in &sc.coeffs {
        acc.add(c * xp);
        xp *= x;
    }
    let scale = x.powf(sc.lambda);
    let last = sc.coeffs.last().copied().unwrap_or(0.0);
    let n = sc.coeffs.len().saturating_sub(1);
    let tail = 2.0 * (last * x.powi(n as i32) * scale).abs();
    Ok(SeriesValue { value: acc.value() * scale, tail })
}

/// (y, y', y'') of the truncated series, differentiated termwise.
pub fn eval_series_derivatives(sc: &SeriesCoeffs, x: f64) -> Result<(f64, f64, f64)> {
    check_power_domain(sc.lambda, x)?;
    if sc.lambda != 0.0 && x == 0.0 {
        return Err(Error::domain("termwise derivatives at x = 0 need lambda = 0"));
    }
    let mut y = CompensatedSum::new();
    let mut d1 = CompensatedSum::new();
    let mut d2 = CompensatedSum::new();
    for (n, &c) in sc.coeffs.iter().enumerate() {
        let e = n as f64 + sc.lambda;
        if x == 0.0 {
            // lambda = 0 here, so only n <= 2 survive
            match n {
                0 => y.add(c),
                1 => d1.add(c),
                2 => d2.add(2.0 * c),
                _ => {}
            }
            continue;
        }
        let xe = x.powf(e);
        y.add(c * xe);
        d1.add(c * e * xe / x);
        d2.add(c * e * (e - 1.0) * xe / (x * x));
    }
    Ok((y.value(), d1.value(), d2.value()))
}

/// x y'' + (mu x^2 + eps x + nu) y' + (Omega x + eps omega) y.
pub fn ode_residual(p: &GchParams, y: f64, yp: f64, ypp: f64, x: f64) -> f64 {
    ode_residual_coupled(p, p.coupling(), y, yp, ypp, x)
}

/// [`ode_residual`] with an explicit constant coefficient.
pub fn ode_residual_coupled(p: &GchParams, coupling: f64, y: f64, yp: f64, ypp: f64, x: f64) -> f64 {
    x * ypp + (p.mu * x * x + p.eps * x + p.nu) * yp + (p.omega_cap * x + coupling) * y
}

/// Residual of the truncated series at x, using its own coupling.
pub fn series_residual(sc: &SeriesCoeffs, x: f64) -> Result<(f64, f64)> {
    let (y, yp, ypp) = eval_series_derivatives(sc, x)?;
    Ok((ode_residual_coupled(&sc.params, sc.coupling, y, yp, ypp, x), y))
}

/// Canonical biconfluent Heun parameters (alpha, beta, gamma, delta) of
/// x y'' + (1 + alpha - beta x - 2 x^2) y' + ((gamma - alpha - 2) x - (delta + (1 + alpha) beta)/2) y = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BchCanonicalParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma_c: f64,
    pub delta: f64,
}

/// mu = -2, eps = -beta, nu = 1 + alpha, Omega = gamma - alpha - 2,
/// omega = (delta/beta + 1 + alpha)/2.
pub fn bch_to_gch(b: &BchCanonicalParams) -> Result<GchParams> {
    if b.beta == 0.0 {
        return Err(Error::domain("beta = 0: the omega map divides by beta"));
    }
    Ok(GchParams {
        mu: -2.0,
        eps: -b.beta,
        nu: 1.0 + b.alpha,
        omega_cap: b.gamma_c - b.alpha - 2.0,
        omega_low: 0.5 * (b.delta / b.beta + 1.0 + b.alpha),
    })
}

/// Residual of the canonical biconfluent Heun equation.
pub fn bch_residual(b: &BchCanonicalParams, y: f64, yp: f64, ypp: f64, x: f64) -> f64 {
    x * ypp
        + (1.0 + b.alpha - b.beta * x - 2.0 * x * x) * yp
        + ((b.gamma_c - b.alpha - 2.0) * x - 0.5 * (b.delta + (1.0 + b.alpha) * b.beta)) * y
}
