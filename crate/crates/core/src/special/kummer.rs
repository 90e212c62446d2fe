//! Kummer's confluent hypergeometric function M(a, b, z) = 1F1(a; b; z).

use super::gamma::is_nonpositive_integer;
use super::summation::CompensatedSum;
use crate::error::{Error, Result};

/// Hard cap on the number of series terms.
pub const KUMMER_MAX_TERMS: usize = 10_000;
/// Below this argument the Kummer transformation is always applied.
pub const KUMMER_REFLECT_BELOW: f64 = -20.0;

const REL_STOP: f64 = 1e-16;
const QUIET_RUN: usize = 3;

/// Partial sum of the Kummer series together with the sum of term
/// magnitudes, which bounds the cancellation in the result.
#[derive(Debug, Clone, Copy)]
pub struct SeriesSum {
    pub value: f64,
    pub abs_sum: f64,
    pub terms: usize,
}

impl SeriesSum {
    /// Ratio of term magnitudes to the result; 1 for a sign-stable sum.
    pub fn condition(&self) -> f64 {
        if self.value == 0.0 {
            f64::INFINITY
        } else {
            self.abs_sum / self.value.abs()
        }
    }
}

/// Raw series sum. Stops on an exactly zero term (terminating `a`) or after
/// three consecutive terms below 1e-16 of the partial sum.
pub fn kummer_series(a: f64, b: f64, z: f64) -> Result<SeriesSum> {
    if is_nonpositive_integer(b) {
        return Err(Error::domain(format!("kummer_m needs b not a nonpositive integer, got b = {b}")));
    }
    let mut acc = CompensatedSum::new();
    let mut abs_sum = 0.0;
    let mut term = 1.0_f64;
    let mut quiet = 0;
    acc.add(term);
    abs_sum += 1.0;
    for n in 0..KUMMER_MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) / ((b + nf) * (nf + 1.0)) * z;
        if term == 0.0 {
            return Ok(SeriesSum { value: acc.value(), abs_sum, terms: n + 1 });
        }
        acc.add(term);
        abs_sum += term.abs();
        if !term.is_finite() {
            return Err(Error::NonFinite("kummer_m series"));
        }
        if term.abs() < REL_STOP * acc.value().abs() {
            quiet += 1;
            if quiet == QUIET_RUN {
                return Ok(SeriesSum { value: acc.value(), abs_sum, terms: n + 2 });
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence { what: "kummer_m series", terms: KUMMER_MAX_TERMS })
}

/// M(a, b, z) summed to the stopping rule of [`kummer_series`].
///
/// For z < -20 the transformation M(a,b,z) = e^z M(b-a,b,-z) is used. For
/// -20 <= z < 0 both forms are summed and the one with the smaller
/// cancellation ratio is returned.
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<f64> {
    kummer_m_with_condition(a, b, z).map(|(v, _)| v)
}

/// [`kummer_m`] plus the cancellation ratio of the form that was summed.
pub fn kummer_m_with_condition(a: f64, b: f64, z: f64) -> Result<(f64, f64)> {
    if is_nonpositive_integer(b) {
        return Err(Error::domain(format!("kummer_m needs b not a nonpositive integer, got b = {b}")));
    }
    if z == 0.0 {
        return Ok((1.0, 1.0));
    }
    if z >= 0.0 {
        let s = kummer_series(a, b, z)?;
        return Ok((s.value, s.condition()));
    }
    let reflected = kummer_series(b - a, b, -z)?;
    if z < KUMMER_REFLECT_BELOW {
        return Ok((z.exp() * reflected.value, reflected.condition()));
    }
    let direct = kummer_series(a, b, z)?;
    if direct.condition() <= reflected.condition() {
        Ok((direct.value, direct.condition()))
    } else {
        Ok((z.exp() * reflected.value, reflected.condition()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn examples() {
        assert_eq!(kummer_m(3.2, 1.5, 0.0).unwrap(), 1.0);
        assert!((kummer_m(1.0, 1.0, 1.0).unwrap() - E).abs() < 1e-15);
        assert!((kummer_m(1.0, 2.0, 1.0).unwrap() - (E - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn pole_in_b_is_domain_error() {
        assert!(matches!(kummer_m(1.0, -2.0, 0.5), Err(Error::Domain(_))));
        assert!(matches!(kummer_m(1.0, 0.0, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn terminating_series_is_a_polynomial() {
        // M(-2, b, z) = 1 - 2z/b + z^2/(b(b+1))
        let (b, z) = (1.5, 0.7);
        let want = 1.0 - 2.0 * z / b + z * z / (b * (b + 1.0));
        assert!((kummer_m(-2.0, b, z).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn large_negative_argument_uses_transformation() {
        // M(1, 2, z) = (e^z - 1)/z
        let z: f64 = -40.0;
        let want = (z.exp() - 1.0) / z;
        let got = kummer_m(1.0, 2.0, z).unwrap();
        assert!(((got - want) / want).abs() < 1e-14);
        // M(a, a, z) = e^z
        let got = kummer_m(0.3, 0.3, -15.0).unwrap();
        assert!(((got - (-15.0f64).exp()) / (-15.0f64).exp()).abs() < 1e-13);
    }

    #[test]
    fn reference_values() {
        // M(0.5, 1.5, -x^2) = sqrt(pi)/(2x) erf(x)
        for x in [0.3, 1.0, 2.0, 3.5] {
            let want = std::f64::consts::PI.sqrt() / (2.0 * x) * crate::special::erf(x);
            let got = kummer_m(0.5, 1.5, -x * x).unwrap();
            assert!(((got - want) / want).abs() < 1e-13, "x = {x}");
        }
    }
}
