//! Confluent hypergeometric polynomials of the first and second kind.

use serde::Serialize;

use super::gamma::{is_nonpositive_integer, pochhammer};
use super::summation::CompensatedSum;
use crate::error::{Error, Result};

/// Frobenius branch: first kind (exponent 0) or second kind (exponent 1 - nu).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    First,
    Second,
}

impl Kind {
    /// Lower Pochhammer parameter: gamma for the first kind, 2 - gamma for the second.
    pub fn shifted_gamma(self, gamma: f64) -> f64 {
        match self {
            Kind::First => gamma,
            Kind::Second => 2.0 - gamma,
        }
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::First => "first",
            Kind::Second => "second",
        })
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(Kind::First),
            "second" => Ok(Kind::Second),
            other => Err(Error::domain(format!("unknown kind '{other}', expected first or second"))),
        }
    }
}

/// Power-series coefficients of the polynomial in z, lowest degree first.
///
/// First kind: (g)_d * (-d)_n / ((g)_n n!), second kind the same with g = 2 - gamma.
pub fn chp_coefficients(kind: Kind, degree: u32, gamma: f64) -> Result<Vec<f64>> {
    let g = kind.shifted_gamma(gamma);
    if is_nonpositive_integer(g) {
        return Err(Error::domain(format!(
            "{kind}-kind polynomial needs its lower parameter {g} not a nonpositive integer"
        )));
    }
    let d = f64::from(degree);
    let mut c = Vec::with_capacity(degree as usize + 1);
    let mut term = pochhammer(g, degree);
    c.push(term);
    for n in 0..degree {
        let nf = f64::from(n);
        term *= (-d + nf) / ((g + nf) * (nf + 1.0));
        c.push(term);
    }
    Ok(c)
}

/// Evaluates F_d(gamma; z) (first kind) or A_d(gamma; z) (second kind).
pub fn chp_eval(kind: Kind, degree: u32, gamma: f64, z: f64) -> Result<f64> {
    let c = chp_coefficients(kind, degree, gamma)?;
    let mut acc = CompensatedSum::new();
    let mut zp = 1.0;
    for ck in c {
        acc.add(ck * zp);
        zp *= z;
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(chp_eval(Kind::First, 0, 2.5, 7.0).unwrap(), 1.0);
        assert!((chp_eval(Kind::First, 1, 1.0, 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(chp_eval(Kind::Second, 0, 0.5, 3.0).unwrap(), 1.0);
    }

    #[test]
    fn value_at_zero_is_pochhammer() {
        for d in 0..6 {
            let v = chp_eval(Kind::First, d, 1.7, 0.0).unwrap();
            assert!((v - pochhammer(1.7, d)).abs() < 1e-13 * v.abs());
        }
    }

    #[test]
    fn laguerre_relation() {
        // F_d(g; z) = d! L_d^{(g-1)}(z); L_2^{(a)}(z) = ((a+1)(a+2) - 2(a+2)z + z^2)/2
        let (g, z) = (1.5, 0.8);
        let a = g - 1.0;
        let l2 = ((a + 1.0) * (a + 2.0) - 2.0 * (a + 2.0) * z + z * z) / 2.0;
        assert!((chp_eval(Kind::First, 2, g, z).unwrap() - 2.0 * l2).abs() < 1e-14);
    }

    #[test]
    fn domain() {
        assert!(chp_eval(Kind::First, 2, -1.0, 0.3).is_err());
        assert!(chp_eval(Kind::Second, 2, 3.0, 0.3).is_err());
        assert!(chp_eval(Kind::Second, 2, 2.5, 0.3).is_ok());
    }
}
