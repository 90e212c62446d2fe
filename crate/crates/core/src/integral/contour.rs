//! Single-contour forms of the polynomial and Kummer kernels.
//!
//! All contours are circles |v| = r < 1 around the origin, so the essential
//! singularity of exp(-z v/(1 - v)) at v = 1 stays outside.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::contour_trapezoid;
use crate::special::{gamma, Kind};

fn check_radius(radius: f64) -> Result<()> {
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::domain(format!("contour radius {radius} must lie in (0, 1)")));
    }
    Ok(())
}

/// d! (1/2πi) ∮ exp(-z v/(1-v)) / (v^{d+1} (1-v)^g) dv with g = gamma (first
/// kind) or 2 - gamma (second kind). Equals F_d(gamma; z) or A_d(gamma; z).
pub fn chp_contour(kind: Kind, degree: u32, gamma_p: f64, z: f64, radius: f64, nodes: usize) -> Result<f64> {
    check_radius(radius)?;
    let g = kind.shifted_gamma(gamma_p);
    let d = degree as i32;
    let one = Complex64::new(1.0, 0.0);
    let c = contour_trapezoid(
        |v| {
            let w = one - v;
            (-z * v / w).exp() / (v.powi(d + 1) * w.powf(g))
        },
        radius,
        nodes,
    )?;
    let fact: f64 = (1..=degree).map(f64::from).product();
    Ok(fact * c.re)
}

/// Contour representations of M(a, b, z) valid for integer a <= 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KummerContour {
    /// -Γ(1-a)Γ(b)/Γ(b-a) (1/2πi) ∮ e^{zv} (-v)^{a-1} (1-v)^{b-a-1} dv.
    Euler,
    /// Γ(1-a)Γ(b)/Γ(b-a) (1/2πi) ∮ e^{-zv/(1-v)} v^{a-1} (1-v)^{-b} dv.
    Laguerre,
}

/// Evaluates M(a, b, z) through one of the circle contours.
///
/// Non-integer a puts a branch point at the origin and positive integer a
/// leaves no pole inside the circle (and a pole in Γ(1-a)); both are rejected.
pub fn kummer_contour(form: KummerContour, a: f64, b: f64, z: f64, radius: f64, nodes: usize) -> Result<f64> {
    check_radius(radius)?;
    if a != a.round() {
        return Err(Error::BranchPoint(a - 1.0));
    }
    if a > 0.0 {
        return Err(Error::domain(format!("circle contour for M(a, b, z) needs integer a <= 0, got a = {a}")));
    }
    let ba = b - a;
    if ba == ba.round() && ba <= 0.0 || b == b.round() && b <= 0.0 {
        return Err(Error::domain(format!("Gamma(b) / Gamma(b - a) undefined at a = {a}, b = {b}")));
    }
    let pref = gamma(1.0 - a) * gamma(b) / gamma(ba);
    let k = a as i32 - 1;
    let one = Complex64::new(1.0, 0.0);
    let c = match form {
        KummerContour::Euler => {
            -contour_trapezoid(|v| (z * v).exp() * (-v).powi(k) * (one - v).powf(ba - 1.0), radius, nodes)?.re
        }
        KummerContour::Laguerre => {
            contour_trapezoid(|v| (-z * v / (one - v)).exp() * v.powi(k) * (one - v).powf(-b), radius, nodes)?.re
        }
    };
    Ok(pref * c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{chp_eval, kummer_m};

    #[test]
    fn chp_contour_matches_finite_sum() {
        for kind in [Kind::First, Kind::Second] {
            for d in 0..=4 {
                for g in [0.5, 1.0, 1.5, 2.5] {
                    if kind == Kind::Second && g == 2.0 {
                        continue;
                    }
                    for z in [-2.0, -0.7, 0.0, 0.5, 2.0] {
                        let want = chp_eval(kind, d, g, z).unwrap();
                        let got = chp_contour(kind, d, g, z, 0.5, 128).unwrap();
                        assert!((got - want).abs() <= 1e-10 * (1.0 + want.abs()), "{kind} {d} {g} {z}: {got} vs {want}");
                    }
                }
            }
        }
    }

    #[test]
    fn single_pole_example() {
        // beta_0 = 1, gamma = 1, z = 0.5: the raw contour is L_1(0.5) = 0.5.
        let got = chp_contour(Kind::First, 1, 1.0, 0.5, 0.5, 128).unwrap();
        assert!((got - 0.5).abs() < 1e-14);
    }

    #[test]
    fn kummer_contours_match_series() {
        for form in [KummerContour::Euler, KummerContour::Laguerre] {
            for a in [0.0, -1.0, -2.0, -3.0] {
                for b in [0.5, 1.0, 2.5] {
                    for z in [-1.5, 0.3, 1.7] {
                        let want = kummer_m(a, b, z).unwrap();
                        let got = kummer_contour(form, a, b, z, 0.5, 128).unwrap();
                        assert!((got - want).abs() <= 1e-9 * (1.0 + want.abs()), "{form:?} {a} {b} {z}");
                    }
                }
            }
        }
    }

    #[test]
    fn kummer_contour_rejects_branch_points() {
        assert!(matches!(
            kummer_contour(KummerContour::Laguerre, 0.5, 1.0, 0.1, 0.5, 64),
            Err(Error::BranchPoint(_))
        ));
        assert!(kummer_contour(KummerContour::Laguerre, 2.0, 1.0, 0.1, 0.5, 64).is_err());
    }
}
