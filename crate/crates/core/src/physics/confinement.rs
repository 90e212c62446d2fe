//! Confinement potentials V(r) = -a/r + b r + c r²:
//! psi'' + ((2 mass/hbar²)(E + a/r - b r - c r²) - l(l + 1)/r²) psi = 0.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ode::GchParams;
use crate::physics::{require_first_kind, require_positive_radius};
use crate::trf::{qw_rw_eval, StepNumerator, TerminationLadder, TrfTruncation};

/// Potential coefficients, units and the Gaussian/exponential decay rates.
///
/// `alpha_f` and `beta_f` are independent inputs; [`ConfinementModel::from_potential`]
/// derives them from b and c so that psi solves the radial equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfinementModel {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub mass: f64,
    pub hbar: f64,
    pub alpha_f: f64,
    pub beta_f: f64,
}

impl ConfinementModel {
    pub fn new(a: f64, b: f64, c: f64, mass: f64, hbar: f64, alpha_f: f64, beta_f: f64) -> Result<Self> {
        if !(mass > 0.0 && hbar > 0.0) {
            return Err(Error::domain(format!("mass and hbar must be positive, got {mass}, {hbar}")));
        }
        if !(alpha_f.is_finite() && beta_f.is_finite()) {
            return Err(Error::domain("alpha_F and beta_F must be finite"));
        }
        Ok(Self { a, b, c, mass, hbar, alpha_f, beta_f })
    }

    /// alpha_F² = 2 mass c / hbar² and alpha_F beta_F = mass b / hbar², c > 0.
    pub fn from_potential(a: f64, b: f64, c: f64, mass: f64, hbar: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::domain(format!("confinement needs c > 0, got {c}")));
        }
        let alpha_f = (2.0 * mass * c).sqrt() / hbar;
        let beta_f = mass * b / (hbar * hbar * alpha_f);
        Self::new(a, b, c, mass, hbar, alpha_f, beta_f)
    }

    fn kappa(&self) -> f64 {
        2.0 * self.mass / (self.hbar * self.hbar)
    }

    /// l + 3/2.
    pub fn gamma(&self, l: u32) -> f64 {
        f64::from(l) + 1.5
    }

    /// -(mass a)/(hbar² beta_F) + l + 1; needs beta_F != 0.
    pub fn omega_gch(&self, l: u32) -> Result<f64> {
        if self.beta_f == 0.0 {
            return Err(Error::domain("beta_F = 0: the omega-parameter divides by beta_F"));
        }
        Ok(-self.mass * self.a / (self.hbar * self.hbar * self.beta_f) + f64::from(l) + 1.0)
    }

    /// alpha_F r².
    pub fn z(&self, r: f64) -> f64 {
        self.alpha_f * r * r
    }

    /// beta_F r, which is -eps r/2 for eps = -2 beta_F.
    pub fn eps_tilde(&self, r: f64) -> f64 {
        self.beta_f * r
    }

    /// Reduced equation for y = psi / (r^{l+1} exp(-alpha_F r²/2 - beta_F r)) at energy E:
    /// mu = -2 alpha_F, eps = -2 beta_F, nu = 2l + 2,
    /// Omega = 2 mass E/hbar² + beta_F² - (2l + 3) alpha_F.
    pub fn gch_params(&self, l: u32, energy: f64) -> Result<GchParams> {
        let lf = f64::from(l);
        Ok(GchParams::new(
            -2.0 * self.alpha_f,
            -2.0 * self.beta_f,
            2.0 * lf + 2.0,
            self.kappa() * energy + self.beta_f * self.beta_f - (2.0 * lf + 3.0) * self.alpha_f,
            self.omega_gch(l)?,
        ))
    }

    /// (beta_F² + 2 mass E/hbar²)/(4 alpha_F) - (i + l + 3/2)/2.
    pub fn beta_index(&self, i: u32, l: u32, energy: f64) -> Result<f64> {
        if self.alpha_f == 0.0 {
            return Err(Error::domain("alpha_F = 0: the ladder index divides by alpha_F"));
        }
        Ok((self.beta_f * self.beta_f + self.kappa() * energy) / (4.0 * self.alpha_f)
            - 0.5 * (f64::from(i) + f64::from(l) + 1.5))
    }

    /// r^{l+1} exp(-alpha_F r²/2 - beta_F r).
    pub fn prefactor(&self, l: u32, r: f64) -> f64 {
        r.powi(l as i32 + 1) * (-0.5 * self.alpha_f * r * r - self.beta_f * r).exp()
    }

    pub fn boundary_power(&self, l: u32) -> f64 {
        f64::from(l) + 1.0
    }

    /// Unnormalised psi(r) for angular momentum l.
    pub fn wavefunction(&self, ladder: &TerminationLadder, l: u32, r: f64, trunc: &TrfTruncation) -> Result<f64> {
        require_first_kind(ladder)?;
        require_positive_radius(r)?;
        let numerator = StepNumerator::Linear { omega_low: self.omega_gch(l)? };
        let qw = qw_rw_eval(ladder, self.gamma(l), numerator, self.z(r), self.eps_tilde(r), trunc)?;
        Ok(self.prefactor(l, r) * qw)
    }
}

/// E = (hbar²/(2 mass)) (4 alpha_F (beta + (i + l + 3/2)/2) - beta_F²).
pub fn confinement_energy(model: &ConfinementModel, i: u32, beta: u32, l: u32) -> f64 {
    let s = f64::from(beta) + 0.5 * (f64::from(i) + f64::from(l) + 1.5);
    model.hbar * model.hbar / (2.0 * model.mass) * (4.0 * model.alpha_f * s - model.beta_f * model.beta_f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::{eval_series, frobenius_coeffs};
    use crate::special::Kind;

    fn unit(alpha_f: f64, beta_f: f64) -> ConfinementModel {
        ConfinementModel::new(0.4, 0.0, 0.0, 1.0, 1.0, alpha_f, beta_f).unwrap()
    }

    #[test]
    fn energy_examples() {
        let m = unit(1.3, 0.7);
        let e = confinement_energy(&m, 0, 0, 0);
        assert!((e - (3.0 * 1.3 - 0.49) / 2.0).abs() < 1e-15);
        assert_eq!(confinement_energy(&unit(1.0, 0.0), 1, 1, 0), 4.5);
        let m = ConfinementModel::new(1.0, 0.5, 0.25, 2.0, 0.5, 0.75, 0.5).unwrap();
        for b in 0..8 {
            let (e0, e1) = (confinement_energy(&m, 1, b, 2), confinement_energy(&m, 1, b + 1, 2));
            let want = 2.0 * m.hbar * m.hbar * m.alpha_f / m.mass;
            assert!((e1 - e0 - want).abs() <= 4.0 * f64::EPSILON * e1.abs());
        }
    }

    #[test]
    fn ladder_index_inverts_energy() {
        let m = ConfinementModel::from_potential(0.6, 0.3, 0.5, 1.0, 1.0).unwrap();
        for (i, b, l) in [(0, 0, 0), (1, 2, 1), (2, 1, 3)] {
            let e = confinement_energy(&m, i, b, l);
            assert!((m.beta_index(i, l, e).unwrap() - f64::from(b)).abs() < 1e-12);
            // The same index from the reduced equation.
            let p = m.gch_params(l, e).unwrap();
            assert!((-p.omega_ratio().unwrap() - 0.5 * f64::from(i) - f64::from(b)).abs() < 1e-12);
        }
    }

    #[test]
    fn reduced_equation_reproduces_the_radial_equation() {
        for (a, b, c, mass, hbar, l, e) in [(0.6, 0.3, 0.5, 1.0, 1.0, 0u32, 1.1), (1.2, -0.4, 0.8, 2.0, 0.7, 2, 0.3)] {
            let m = ConfinementModel::from_potential(a, b, c, mass, hbar).unwrap();
            let sc = frobenius_coeffs(&m.gch_params(l, e).unwrap(), 0.0, 90).unwrap();
            let psi = |r: f64| m.prefactor(l, r) * eval_series(&sc, r).unwrap().value;
            let h = 1e-3;
            for r in [0.3, 0.9, 1.5] {
                let d2 = (-psi(r + 2.0 * h) + 16.0 * psi(r + h) - 30.0 * psi(r) + 16.0 * psi(r - h)
                    - psi(r - 2.0 * h))
                    / (12.0 * h * h);
                let lf = f64::from(l);
                let k = 2.0 * mass / (hbar * hbar) * (e + a / r - b * r - c * r * r) - lf * (lf + 1.0) / (r * r);
                let res = d2 + k * psi(r);
                assert!(res.abs() < 1e-7 * (1.0 + psi(r).abs()), "r={r}: {res}");
            }
        }
    }

    #[test]
    fn maps_agree_with_the_reduced_parameters() {
        let m = ConfinementModel::from_potential(0.6, 0.3, 0.5, 1.0, 1.0).unwrap();
        let p = m.gch_params(1, 0.9).unwrap();
        for r in [0.2, 1.0, 2.5] {
            assert!((p.z_of(r) - m.z(r)).abs() < 1e-15);
            assert!((p.eps_tilde_of(r) - m.eps_tilde(r)).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_beta_f_has_no_omega_parameter() {
        let m = unit(1.0, 0.0);
        assert!(m.omega_gch(0).is_err());
        let ladder = TerminationLadder::constant(0, 1, Kind::First).unwrap();
        assert!(m.wavefunction(&ladder, 0, 1.0, &TrfTruncation::new(0, 4).unwrap()).is_err());
    }

    #[test]
    fn from_potential_rejects_nonconfining_c() {
        assert!(ConfinementModel::from_potential(1.0, 1.0, 0.0, 1.0, 1.0).is_err());
        assert!(ConfinementModel::new(1.0, 1.0, 1.0, -1.0, 1.0, 1.0, 1.0).is_err());
    }
}
