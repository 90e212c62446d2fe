//! Relative motion of two electrons in a perpendicular magnetic field and a
//! parabolic confinement. With rho = gamma~ r and R = rho^{sigma|m|} e^{-rho²/2} F,
//! the radial equation reduces to rho F'' + (a - 2 rho²) F' + (d rho - u) F = 0.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ode::{BchCanonicalParams, GchParams};
use crate::physics::{require_first_kind, require_positive_radius};
use crate::trf::{qw_rw_eval, StepNumerator, TerminationLadder, TrfTruncation};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantumDotModel {
    /// Reduced mass of the pair.
    pub eff_mass: f64,
    pub omega_conf: f64,
    pub omega_cyc: f64,
    pub sigma: f64,
    pub m_quantum: i32,
    pub eps_inf: f64,
    pub charge: f64,
    pub hbar: f64,
}

impl QuantumDotModel {
    pub fn new(
        eff_mass: f64,
        omega_conf: f64,
        omega_cyc: f64,
        sigma: f64,
        m_quantum: i32,
        eps_inf: f64,
        charge: f64,
        hbar: f64,
    ) -> Result<Self> {
        if !(eff_mass > 0.0 && omega_conf > 0.0 && eps_inf > 0.0 && hbar > 0.0) {
            return Err(Error::domain("mass, confinement frequency, eps_inf and hbar must be positive"));
        }
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(Error::domain(format!("sigma must be nonnegative, got {sigma}")));
        }
        Ok(Self { eff_mass, omega_conf, omega_cyc, sigma, m_quantum, eps_inf, charge, hbar })
    }

    /// Unit mass, charge, hbar and eps_inf with the given frequencies and quantum numbers.
    pub fn unit(omega_conf: f64, omega_cyc: f64, sigma: f64, m_quantum: i32) -> Result<Self> {
        Self::new(1.0, omega_conf, omega_cyc, sigma, m_quantum, 1.0, 1.0, 1.0)
    }

    /// sigma |m|.
    pub fn angular_power(&self) -> f64 {
        self.sigma * f64::from(self.m_quantum.unsigned_abs())
    }

    /// gamma~ = sqrt(mass omega / hbar), so rho = gamma~ r.
    pub fn gamma_tilde(&self) -> f64 {
        (self.eff_mass * self.omega_conf / self.hbar).sqrt()
    }

    /// u = 2 mass e² / (eps_inf hbar² gamma~).
    pub fn u(&self) -> f64 {
        2.0 * self.eff_mass * self.charge * self.charge / (self.eps_inf * self.hbar * self.hbar * self.gamma_tilde())
    }

    /// a = 2 sigma|m| + 1.
    pub fn a(&self) -> f64 {
        2.0 * self.angular_power() + 1.0
    }

    /// Dimensionless level (2 E - m hbar omega_c)/(hbar omega).
    pub fn level_parameter(&self, energy: f64) -> f64 {
        (2.0 * energy - f64::from(self.m_quantum) * self.hbar * self.omega_cyc) / (self.hbar * self.omega_conf)
    }

    /// d = level parameter - (2 sigma|m| + 2), the coefficient of rho F left
    /// after the substitution.
    pub fn d(&self, energy: f64) -> f64 {
        self.level_parameter(energy) - self.a() - 1.0
    }

    /// sigma|m| + 1.
    pub fn gamma(&self) -> f64 {
        self.angular_power() + 1.0
    }

    /// d/4 - i/2.
    pub fn beta_index(&self, i: u32, energy: f64) -> f64 {
        0.25 * self.d(energy) - 0.5 * f64::from(i)
    }

    /// mass omega r² / hbar = rho².
    pub fn z(&self, r: f64) -> f64 {
        self.eff_mass * self.omega_conf * r * r / self.hbar
    }

    /// mass e² r / (2 eps_inf hbar²) = u rho / 4; pairs with the unit step numerator.
    pub fn eps_tilde(&self, r: f64) -> f64 {
        self.eff_mass * self.charge * self.charge * r / (2.0 * self.eps_inf * self.hbar * self.hbar)
    }

    /// The reduced equation in rho as a GCH equation with eps = 0:
    /// mu = -2, nu = a, Omega = d. The constant term -u is returned
    /// separately because eps omega has no finite split at eps = 0.
    pub fn gch_params(&self, energy: f64) -> (GchParams, f64) {
        (GchParams::new(-2.0, 0.0, self.a(), self.d(energy), 0.0), -self.u())
    }

    /// The same equation in canonical biconfluent Heun form.
    pub fn bch_params(&self, energy: f64) -> BchCanonicalParams {
        BchCanonicalParams {
            alpha: 2.0 * self.angular_power(),
            beta: 0.0,
            gamma_c: self.level_parameter(energy),
            delta: 2.0 * self.u(),
        }
    }

    /// (mass omega r²/hbar)^{sigma|m|/2} exp(-mass omega r²/(2 hbar)).
    pub fn prefactor(&self, r: f64) -> f64 {
        let z = self.z(r);
        z.powf(0.5 * self.angular_power()) * (-0.5 * z).exp()
    }

    pub fn boundary_power(&self) -> f64 {
        self.angular_power()
    }

    /// Unnormalised radial factor R(r).
    pub fn radial(&self, ladder: &TerminationLadder, r: f64, trunc: &TrfTruncation) -> Result<f64> {
        require_first_kind(ladder)?;
        require_positive_radius(r)?;
        let qw = qw_rw_eval(ladder, self.gamma(), StepNumerator::Unit, self.z(r), self.eps_tilde(r), trunc)?;
        Ok(self.prefactor(r) * qw)
    }

    /// R(r) e^{i m phi}; phi = 0 when absent.
    pub fn wavefunction(
        &self,
        ladder: &TerminationLadder,
        r: f64,
        phi: Option<f64>,
        trunc: &TrfTruncation,
    ) -> Result<Complex64> {
        let radial = self.radial(ladder, r, trunc)?;
        let phase = f64::from(self.m_quantum) * phi.unwrap_or(0.0);
        Ok(Complex64::from_polar(radial, phase))
    }
}

/// E_r = hbar omega (2 beta + i + sigma|m| + 1) + m hbar omega_c / 2, the
/// energy at which d = 4 beta + 2 i terminates the level-i sum at beta.
pub fn qdot_energy(model: &QuantumDotModel, i: u32, beta: u32) -> f64 {
    let h = model.hbar;
    h * model.omega_conf * (2.0 * f64::from(beta) + f64::from(i) + model.angular_power() + 1.0)
        + 0.5 * f64::from(model.m_quantum) * h * model.omega_cyc
}
