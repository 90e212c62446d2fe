//! Rotating harmonic oscillator:
//! psi'' + ((2 lambda_m + 1)/(2 w) - (r - 1)²/(4 w²) - l(l + 1)/r²) psi = 0.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ode::GchParams;
use crate::physics::{require_first_kind, require_positive_radius};
use crate::trf::{qw_rw_eval, StepNumerator, TerminationLadder, TrfTruncation};

/// Rotational quantum number and coupling w (`omega_c`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillatorModel {
    pub l_m: u32,
    pub omega_c: f64,
}

impl OscillatorModel {
    pub fn new(l_m: u32, omega_c: f64) -> Result<Self> {
        if !(omega_c > 0.0 && omega_c.is_finite()) {
            return Err(Error::domain(format!("oscillator coupling must be positive, got {omega_c}")));
        }
        Ok(Self { l_m, omega_c })
    }

    fn l(&self) -> f64 {
        f64::from(self.l_m)
    }

    /// l_m + 3/2.
    pub fn gamma(&self) -> f64 {
        self.l() + 1.5
    }

    /// The GCH omega-parameter, l_m + 1.
    pub fn omega_gch(&self) -> f64 {
        self.l() + 1.0
    }

    /// r² / (2 w).
    pub fn z(&self, r: f64) -> f64 {
        r * r / (2.0 * self.omega_c)
    }

    /// -r / (2 w).
    pub fn eps_tilde(&self, r: f64) -> f64 {
        -r / (2.0 * self.omega_c)
    }

    /// Reduced equation for y = psi / (r^{l+1} exp(-(r-1)²/(4w))):
    /// mu = -1/w, eps = 1/w, nu = 2l + 2, Omega = (lambda_m - l - 1)/w, omega = l + 1.
    pub fn gch_params(&self, lambda_m: f64) -> GchParams {
        let w = self.omega_c;
        GchParams::new(-1.0 / w, 1.0 / w, 2.0 * self.l() + 2.0, (lambda_m - self.l() - 1.0) / w, self.omega_gch())
    }

    /// r^{l+1} exp(-(r - 1)²/(4 w)).
    pub fn prefactor(&self, r: f64) -> f64 {
        r.powi(self.l_m as i32 + 1) * (-(r - 1.0).powi(2) / (4.0 * self.omega_c)).exp()
    }

    /// Power of r in psi near the origin.
    pub fn boundary_power(&self) -> f64 {
        self.l() + 1.0
    }

    /// Unnormalised psi(r) with the first-kind polynomial on `ladder`.
    pub fn wavefunction(&self, ladder: &TerminationLadder, r: f64, trunc: &TrfTruncation) -> Result<f64> {
        require_first_kind(ladder)?;
        require_positive_radius(r)?;
        let numerator = StepNumerator::Linear { omega_low: self.omega_gch() };
        let qw = qw_rw_eval(ladder, self.gamma(), numerator, self.z(r), self.eps_tilde(r), trunc)?;
        Ok(self.prefactor(r) * qw)
    }
}

/// lambda_m = 2 beta + i + l_m + 1.
pub fn oscillator_eigenvalue(model: &OscillatorModel, i: u32, beta: u32) -> f64 {
    2.0 * f64::from(beta) + f64::from(i) + model.l() + 1.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::{eval_series, frobenius_coeffs};
    use crate::special::{pochhammer, Kind};

    fn radial_residual(m: &OscillatorModel, lambda_m: f64, psi: &dyn Fn(f64) -> f64, r: f64) -> f64 {
        let h = 1e-3;
        let d2 = (-psi(r + 2.0 * h) + 16.0 * psi(r + h) - 30.0 * psi(r) + 16.0 * psi(r - h) - psi(r - 2.0 * h))
            / (12.0 * h * h);
        let w = m.omega_c;
        let l = m.l();
        let k = (2.0 * lambda_m + 1.0) / (2.0 * w) - (r - 1.0).powi(2) / (4.0 * w * w) - l * (l + 1.0) / (r * r);
        d2 + k * psi(r)
    }

    #[test]
    fn eigenvalue_examples() {
        let m0 = OscillatorModel::new(0, 1.0).unwrap();
        assert_eq!(oscillator_eigenvalue(&m0, 0, 0), 1.0);
        let m3 = OscillatorModel::new(3, 0.7).unwrap();
        assert_eq!(oscillator_eigenvalue(&m3, 1, 2), 9.0);
        for b in 0..10 {
            assert_eq!(oscillator_eigenvalue(&m3, 2, b + 1) - oscillator_eigenvalue(&m3, 2, b), 2.0);
        }
    }

    #[test]
    fn reduced_equation_reproduces_the_radial_equation() {
        for (l, w, lambda_m) in [(0u32, 1.0, 2.3), (2, 0.6, 5.0), (1, 1.7, -0.4)] {
            let m = OscillatorModel::new(l, w).unwrap();
            let sc = frobenius_coeffs(&m.gch_params(lambda_m), 0.0, 90).unwrap();
            let psi = |r: f64| m.prefactor(r) * eval_series(&sc, r).unwrap().value;
            for r in [0.3, 0.8, 1.4] {
                let res = radial_residual(&m, lambda_m, &psi, r);
                assert!(res.abs() < 1e-7 * (1.0 + psi(r).abs()), "l={l} w={w} r={r}: {res}");
            }
        }
    }

    #[test]
    fn gaussian_width_two_w_does_not_reduce() {
        // With exp(-(r-1)²/(2w)) the same series leaves an O(1) residual.
        let m = OscillatorModel::new(0, 1.0).unwrap();
        let sc = frobenius_coeffs(&m.gch_params(2.3), 0.0, 90).unwrap();
        let psi = |r: f64| r * (-(r - 1.0).powi(2) / 2.0).exp() * eval_series(&sc, r).unwrap().value;
        assert!(radial_residual(&m, 2.3, &psi, 0.8).abs() > 1e-2);
    }

    #[test]
    fn maps_agree_with_the_reduced_parameters() {
        let m = OscillatorModel::new(2, 0.8).unwrap();
        let p = m.gch_params(6.0);
        for r in [0.2, 1.0, 2.5] {
            assert!((p.z_of(r) - m.z(r)).abs() < 1e-15);
            assert!((p.eps_tilde_of(r) - m.eps_tilde(r)).abs() < 1e-15);
        }
        assert_eq!(p.gamma(), m.gamma());
        // beta_0 from the reduced equation is (lambda_m - l - 1)/2.
        assert!((-p.omega_ratio().unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn two_level_value_matches_explicit_double_sum() {
        // i = 0, beta_0 = beta_1 = 1, l = 0, w = 1, r = 1, first two orders.
        let m = OscillatorModel::new(0, 1.0).unwrap();
        let ladder = TerminationLadder::new(vec![1, 1], Kind::First).unwrap();
        let got = m.wavefunction(&ladder, 1.0, &TrfTruncation::new(1, 8).unwrap()).unwrap();

        let (g, om, z, et): (f64, f64, f64, f64) = (1.5, 1.0, 0.5, -0.5);
        let (b0, b1) = (1u32, 1u32);
        let neg = |b: u32, k: u32| pochhammer(-f64::from(b), k);
        let mut zero = 0.0;
        let mut one = 0.0;
        for i0 in 0..=b0 {
            let base = neg(b0, i0) / (pochhammer(1.0, i0) * pochhammer(g, i0));
            zero += base * z.powi(i0 as i32);
            let step = (f64::from(i0) + om / 2.0) / ((f64::from(i0) + 0.5) * (f64::from(i0) - 0.5 + g));
            for i1 in i0..=b1 {
                let r = neg(b1, i1) * pochhammer(1.5, i0) * pochhammer(g + 0.5, i0)
                    / (neg(b1, i0) * pochhammer(1.5, i1) * pochhammer(g + 0.5, i1));
                one += step * base * r * z.powi(i1 as i32);
            }
        }
        let want = m.prefactor(1.0) * pochhammer(g, b0) * (zero + et * one);
        assert!((got - want).abs() < 1e-14, "{got} vs {want}");
    }

    #[test]
    fn ground_state_shape_and_origin() {
        let m = OscillatorModel::new(0, 1.0).unwrap();
        let ladder = TerminationLadder::constant(0, 1, Kind::First).unwrap();
        let t = TrfTruncation::new(0, 8).unwrap();
        for r in [0.1, 1.0, 3.0] {
            let v = m.wavefunction(&ladder, r, &t).unwrap();
            assert!((v - r * (-(r - 1.0).powi(2) / 4.0).exp()).abs() < 1e-15);
        }
        assert!(m.wavefunction(&ladder, 1e-9, &t).unwrap().abs() < 1e-8);
        assert!(m.wavefunction(&ladder, 0.0, &t).is_err());
    }
}
