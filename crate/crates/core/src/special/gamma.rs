//! Gamma-family kernels: log-Gamma, Gamma, Pochhammer symbol and Beta.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Direct products are used up to this count; larger counts go through
/// log-Gamma differences.
pub const POCHHAMMER_DIRECT_MAX: u32 = 64;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn lanczos_sum(x: f64) -> f64 {
    // x is the shifted argument (Gamma(x + 1) form)
    let mut a = LANCZOS_COEF[0];
    for (k, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (x + k as f64);
    }
    a
}

/// True when `x` is a nonpositive integer, i.e. a pole of Gamma.
#[inline]
pub fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Gamma function. Poles return `f64::INFINITY` with the sign of the
/// approach from the right; callers that care guard with
/// [`is_nonpositive_integer`].
pub fn gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::INFINITY;
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    if x == x.round() && x <= 30.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return f;
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    let xm = x - 1.0;
    let t = xm + LANCZOS_G + 0.5;
    // split the power to stay finite up to the f64 limit of Gamma
    let half = t.powf(0.5 * (xm + 0.5));
    (2.0 * PI).sqrt() * half * (-t).exp() * half * lanczos_sum(xm)
}

/// Natural log of |Gamma(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::INFINITY;
    }
    if x < 0.5 {
        return PI.ln() - (PI * x).sin().abs().ln() - ln_gamma(1.0 - x);
    }
    let xm = x - 1.0;
    let t = xm + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (xm + 0.5) * t.ln() - t + lanczos_sum(xm).ln()
}

/// Sign of Gamma(x); +1 at poles by convention.
pub fn gamma_sign(x: f64) -> f64 {
    if x > 0.0 || is_nonpositive_integer(x) {
        1.0
    } else if (x.floor() as i64).rem_euclid(2) == 1 {
        // Gamma is negative on (-1, 0), (-3, -2), ...
        -1.0
    } else {
        1.0
    }
}

/// Rising factorial (x)_n = x (x+1) ... (x+n-1).
pub fn pochhammer(x: f64, n: u32) -> f64 {
    if n <= POCHHAMMER_DIRECT_MAX {
        let mut p = 1.0;
        for k in 0..n {
            p *= x + f64::from(k);
        }
        return p;
    }
    if is_nonpositive_integer(x) && -x < f64::from(n) {
        return 0.0;
    }
    let xn = x + f64::from(n);
    if is_nonpositive_integer(xn) {
        // n factors end just below a pole: fall back to the product
        let mut p = 1.0;
        for k in 0..n {
            p *= x + f64::from(k);
        }
        return p;
    }
    gamma_sign(xn) * gamma_sign(x) * (ln_gamma(xn) - ln_gamma(x)).exp()
}

/// Beta function B(p, q) for p, q > 0.
pub fn beta(p: f64, q: f64) -> Result<f64> {
    if !(p > 0.0 && q > 0.0) {
        return Err(Error::domain(format!("beta needs p > 0 and q > 0, got p = {p}, q = {q}")));
    }
    if p + q < 150.0 {
        Ok(gamma(p) * (gamma(q) / gamma(p + q)))
    } else {
        Ok((ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q)).exp())
    }
}
