//! Nested three-term-recurrence (3TRF) series.
//!
//! A solution is organised as y = x^lambda Σ_n eps~^n Σ_i V_n[i] z^i with
//! z = -mu x^2/2 and eps~ = -eps x/2. Level n carries the Pochhammer ratio
//! t_n(j) = (a_n + j) / ((p_n + j)(q_n + j)) with p_n = 1 + n/2 + lambda/2 and
//! q_n = n/2 + gamma + lambda/2, and consecutive levels are joined by the step
//! factor P_n(i) = num_n(i) / ((i + 1/2 + n/2 + lambda/2)(i - 1/2 + gamma + n/2 + lambda/2)).
//! The numerator a_n is -beta_n on the terminating branch and
//! Omega/(2 mu) + n/2 + lambda/2 on the infinite branch.
//!
//! Each level is built from the previous one in O(len) by the prefix
//! recurrence U[q] = U[q-1] t_n(q-1) + V_{n-1}[q] P_{n-1}(q), which is the
//! nested sum over i_0 <= i_1 <= ... <= i_n with shared prefix products.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ode::GchParams;
use crate::special::{is_nonpositive_integer, pochhammer, CompensatedSum, Kind};

/// Upper bound on the number of index tuples in a terminating nested sum.
pub const MAX_TUPLES: f64 = 1e8;
/// Relative tail above which an infinite-branch value is flagged unconverged.
pub const TAIL_WARN: f64 = 1e-10;

const POLE_TOL: f64 = 1e-12;

/// Outer and inner cut-offs for the nested sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrfTruncation {
    pub n_max: usize,
    pub inner_max: usize,
}

impl TrfTruncation {
    pub fn new(n_max: usize, inner_max: usize) -> Result<Self> {
        if inner_max < 1 {
            return Err(Error::domain("inner_max must be at least 1"));
        }
        Ok(Self { n_max, inner_max })
    }
}

/// Nondecreasing nonnegative integers beta_0 <= beta_1 <= ... bounding each level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TerminationLadder {
    betas: Vec<u32>,
    kind: Kind,
}

impl TerminationLadder {
    pub fn new(betas: Vec<u32>, kind: Kind) -> Result<Self> {
        if betas.is_empty() {
            return Err(Error::Ladder("empty ladder".into()));
        }
        if let Some(w) = betas.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::Ladder(format!(
                "entries must be nondecreasing, got {} before {} at index {}",
                betas[w],
                betas[w + 1],
                w + 1
            )));
        }
        Ok(Self { betas, kind })
    }

    /// Ladder with every entry equal to `beta`.
    pub fn constant(beta: u32, len: usize, kind: Kind) -> Result<Self> {
        Self::new(vec![beta; len.max(1)], kind)
    }

    pub fn betas(&self) -> &[u32] {
        &self.betas
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.betas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.betas.is_empty()
    }
}

/// Per-level termination values implied by a single Omega, and whether they
/// form a valid ladder.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderReport {
    /// beta_i = -Omega/(2 mu) - (i + lambda)/2.
    pub values: Vec<f64>,
    pub all_nonnegative_integers: bool,
    pub nondecreasing: bool,
    pub consistent: bool,
}

/// Evaluates beta_i = -Omega/(2 mu) - (i + lambda)/2 for i < len and checks
/// the ladder conditions. Consecutive values differ by -1/2, so a consistent
/// assignment exists only for len = 1.
pub fn ladder_from_omega(p: &GchParams, lambda: f64, len: usize) -> Result<LadderReport> {
    let r = p.omega_ratio()?;
    let values: Vec<f64> = (0..len).map(|i| -r - 0.5 * (i as f64 + lambda)).collect();
    let all_nonnegative_integers = values.iter().all(|&b| b >= 0.0 && b == b.round());
    let nondecreasing = values.windows(2).all(|w| w[0] <= w[1]);
    Ok(LadderReport { consistent: all_nonnegative_integers && nondecreasing, values, all_nonnegative_integers, nondecreasing })
}

/// Numerator of the step factor joining level n to n+1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum StepNumerator {
    /// i + n/2 + lambda/2 + omega/2.
    Linear { omega_low: f64 },
    /// Constant 1; the eps -> 0, eps omega fixed limit with the coupling absorbed into eps~.
    Unit,
}

impl StepNumerator {
    fn value(&self, i: f64, n: f64, lambda: f64) -> f64 {
        match *self {
            StepNumerator::Linear { omega_low } => i + 0.5 * n + 0.5 * lambda + 0.5 * omega_low,
            StepNumerator::Unit => 1.0,
        }
    }
}

/// Level data shared by both branches.
#[derive(Debug, Clone, Copy)]
pub struct LevelShape {
    pub gamma: f64,
    pub lambda: f64,
    pub numerator: StepNumerator,
}

impl LevelShape {
    pub fn p(&self, n: usize) -> f64 {
        1.0 + 0.5 * n as f64 + 0.5 * self.lambda
    }

    pub fn q(&self, n: usize) -> f64 {
        0.5 * n as f64 + self.gamma + 0.5 * self.lambda
    }

    /// Pochhammer ratio t_n(j) = (a + j)/((p_n + j)(q_n + j)).
    pub fn ratio(&self, n: usize, a: f64, j: usize) -> Result<f64> {
        let jf = j as f64;
        let den = (self.p(n) + jf) * (self.q(n) + jf);
        if den.abs() < POLE_TOL {
            return Err(Error::domain(format!("Pochhammer denominator vanishes at level {n}, index {j}")));
        }
        Ok((a + jf) / den)
    }

    /// Step factor P_n(i) joining level n to level n + 1.
    pub fn step(&self, n: usize, i: usize) -> Result<f64> {
        let (i, nf) = (i as f64, n as f64);
        let l2 = 0.5 * self.lambda;
        let den = (i + 0.5 + 0.5 * nf + l2) * (i - 0.5 + self.gamma + 0.5 * nf + l2);
        if den.abs() < POLE_TOL {
            return Err(Error::domain(format!("step denominator vanishes at level {n}, index {i}")));
        }
        Ok(self.numerator.value(i, nf, self.lambda) / den)
    }
}

/// Builds V_0..V_{n_max}: V_n[i] is the coefficient of eps~^n z^i.
///
/// `numer(n)` gives a_n and `len(n)` the largest retained index at level n.
pub fn level_tables<A, L>(shape: &LevelShape, n_max: usize, numer: A, len: L) -> Result<Vec<Vec<f64>>>
where
    A: Fn(usize) -> f64,
    L: Fn(usize) -> usize,
{
    let mut levels: Vec<Vec<f64>> = Vec::with_capacity(n_max + 1);
    let top0 = len(0);
    let mut v0 = Vec::with_capacity(top0 + 1);
    v0.push(1.0);
    for j in 0..top0 {
        let next = v0[j] * shape.ratio(0, numer(0), j)?;
        v0.push(next);
    }
    levels.push(v0);
    for n in 1..=n_max {
        let prev = &levels[n - 1];
        let top = len(n);
        let a = numer(n);
        let mut u = Vec::with_capacity(top + 1);
        let mut acc = 0.0;
        for q in 0..=top {
            if q > 0 {
                acc *= shape.ratio(n, a, q - 1)?;
            }
            if let Some(&pv) = prev.get(q) {
                acc += pv * shape.step(n - 1, q)?;
            }
            u.push(acc);
        }
        levels.push(u);
    }
    Ok(levels)
}

/// Number of index tuples i_0 <= ... <= i_n <= beta_n summed over n <= n_max.
pub fn nested_tuple_count(betas: &[u32], n_max: usize) -> f64 {
    let mut counts: Vec<f64> = vec![1.0; betas[0] as usize + 1];
    let mut total: f64 = counts.iter().sum();
    for &b in betas.iter().take(n_max + 1).skip(1) {
        let mut next = Vec::with_capacity(b as usize + 1);
        let mut run = 0.0;
        for q in 0..=b as usize {
            run += counts.get(q).copied().unwrap_or(0.0);
            next.push(run);
        }
        total += next.iter().sum::<f64>();
        counts = next;
    }
    total
}

/// A truncated value with an a posteriori tail estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrfValue {
    pub value: f64,
    pub tail: f64,
}

impl TrfValue {
    /// True when the tail estimate is within 1e-10 of the value.
    pub fn converged(&self) -> bool {
        self.tail <= TAIL_WARN * self.value.abs()
    }
}

fn sum_levels(levels: &[Vec<f64>], z: f64, eps_tilde: f64) -> (f64, Vec<f64>, Vec<f64>) {
    let mut total = CompensatedSum::new();
    let mut level_vals = Vec::with_capacity(levels.len());
    let mut inner_tails = Vec::with_capacity(levels.len());
    let mut ep = 1.0;
    for v in levels {
        let mut s = CompensatedSum::new();
        let mut zp: f64 = 1.0;
        let mut last: f64 = 0.0;
        let mut before: f64 = 0.0;
        for (i, &c) in v.iter().enumerate() {
            let term = if c == 0.0 {
                0.0
            } else if zp.is_finite() {
                c * zp
            } else {
                // z^i overflowed on its own; the product may still be finite.
                let sign = if z < 0.0 && i % 2 == 1 { -c.signum() } else { c.signum() };
                sign * (c.abs().ln() + i as f64 * z.abs().ln()).exp()
            };
            s.add(term);
            before = last;
            last = term;
            zp *= z;
        }
        let tail = if last == 0.0 {
            0.0
        } else if before == 0.0 {
            f64::INFINITY
        } else {
            let rho = (last / before).abs();
            if rho < 1.0 {
                last.abs() * rho / (1.0 - rho)
            } else {
                f64::INFINITY
            }
        };
        let lv = s.value() * ep;
        total.add(lv);
        level_vals.push(lv);
        inner_tails.push(tail * ep.abs());
        ep *= eps_tilde;
    }
    (total.value(), level_vals, inner_tails)
}

fn outer_tail(level_vals: &[f64], eps_tilde: f64) -> f64 {
    if eps_tilde == 0.0 {
        return 0.0;
    }
    let n = level_vals.len();
    let last = level_vals[n - 1];
    if n == 1 {
        return (last * eps_tilde).abs();
    }
    if last == 0.0 {
        return 0.0;
    }
    let before = level_vals[n - 2];
    if before == 0.0 {
        return f64::INFINITY;
    }
    let rho = (last / before).abs();
    if rho < 1.0 {
        last.abs() * rho / (1.0 - rho)
    } else {
        f64::INFINITY
    }
}

fn x_power(lambda: f64, x: f64) -> Result<f64> {
    if lambda == 0.0 {
        return Ok(1.0);
    }
    if lambda != lambda.round() && x <= 0.0 {
        return Err(Error::domain(format!("x^{lambda} needs x > 0, got x = {x}")));
    }
    if lambda < 0.0 && x == 0.0 {
        return Err(Error::domain(format!("x^{lambda} is singular at x = 0")));
    }
    Ok(x.powf(lambda))
}

pub(crate) fn polynomial_levels(ladder: &TerminationLadder, shape: &LevelShape, n_max: usize) -> Result<Vec<Vec<f64>>> {
    let betas = ladder.betas();
    if betas.len() < n_max + 1 {
        return Err(Error::Ladder(format!("ladder has {} entries, n_max = {n_max} needs {}", betas.len(), n_max + 1)));
    }
    let count = nested_tuple_count(betas, n_max);
    if count > MAX_TUPLES {
        return Err(Error::TooLarge { count, limit: MAX_TUPLES });
    }
    level_tables(shape, n_max, |n| -f64::from(betas[n]), |n| betas[n] as usize)
}

/// Terminating branch without the x^lambda factor: Σ_n eps~^n Σ_i V_n[i] z^i.
pub fn trf_polynomial_sum(
    ladder: &TerminationLadder,
    shape: &LevelShape,
    z: f64,
    eps_tilde: f64,
    n_max: usize,
) -> Result<f64> {
    let levels = polynomial_levels(ladder, shape, n_max)?;
    Ok(sum_levels(&levels, z, eps_tilde).0)
}

/// Terminating branch with c_0 = 1: x^lambda Σ_n eps~^n Σ_{i <= beta_n} V_n[i] z^i.
#[allow(clippy::too_many_arguments)]
pub fn trf_polynomial_eval(
    ladder: &TerminationLadder,
    gamma: f64,
    lambda: f64,
    omega_low: f64,
    x: f64,
    z: f64,
    eps_tilde: f64,
    trunc: &TrfTruncation,
) -> Result<f64> {
    let shape = LevelShape { gamma, lambda, numerator: StepNumerator::Linear { omega_low } };
    let xl = x_power(lambda, x)?;
    Ok(xl * trf_polynomial_sum(ladder, &shape, z, eps_tilde, trunc.n_max)?)
}

fn infinite_shape(p: &GchParams, lambda: f64) -> LevelShape {
    LevelShape { gamma: p.gamma(), lambda, numerator: StepNumerator::Linear { omega_low: p.omega_low } }
}

/// Level tables of the infinite branch, every level cut at `inner_max`.
pub fn infinite_levels(p: &GchParams, lambda: f64, trunc: &TrfTruncation) -> Result<Vec<Vec<f64>>> {
    let r = p.omega_ratio()?;
    let shape = infinite_shape(p, lambda);
    level_tables(&shape, trunc.n_max, |n| r + 0.5 * n as f64 + 0.5 * lambda, |_| trunc.inner_max)
}

/// Infinite branch with c_0 = 1 and its tail estimate.
pub fn trf_infinite_eval(p: &GchParams, lambda: f64, x: f64, trunc: &TrfTruncation) -> Result<TrfValue> {
    let xl = x_power(lambda, x)?;
    let levels = infinite_levels(p, lambda, trunc)?;
    let (value, level_vals, inner) = sum_levels(&levels, p.z_of(x), p.eps_tilde_of(x));
    let tail = inner.iter().sum::<f64>() + outer_tail(&level_vals, p.eps_tilde_of(x));
    if !value.is_finite() {
        return Err(Error::NonFinite("3TRF infinite series"));
    }
    Ok(TrfValue { value: xl * value, tail: xl.abs() * tail })
}

/// Which nested series to expand in powers of x.
#[derive(Debug, Clone)]
pub enum TrfEvaluator {
    Polynomial { ladder: TerminationLadder, mu: f64, eps: f64, shape: LevelShape },
    Infinite { params: GchParams, lambda: f64 },
}

/// Coefficients of x^{lambda+m}, 0 <= m <= m_max, from
/// Σ_n (-eps/2)^n (-mu/2)^{(m-n)/2} V_n[(m-n)/2].
pub fn trf_coefficients(evaluator: &TrfEvaluator, trunc: &TrfTruncation, m_max: usize) -> Result<Vec<f64>> {
    let (levels, mu, eps) = match evaluator {
        TrfEvaluator::Polynomial { ladder, mu, eps, shape } => {
            (polynomial_levels(ladder, shape, trunc.n_max)?, *mu, *eps)
        }
        TrfEvaluator::Infinite { params, lambda } => {
            if m_max > 2 * trunc.inner_max + trunc.n_max {
                return Err(Error::domain(format!(
                    "m_max = {m_max} exceeds 2 inner_max + n_max = {}",
                    2 * trunc.inner_max + trunc.n_max
                )));
            }
            (infinite_levels(params, *lambda, trunc)?, params.mu, params.eps)
        }
    };
    let he = -0.5 * eps;
    let hz = -0.5 * mu;
    let mut out = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let mut acc = CompensatedSum::new();
        for (n, v) in levels.iter().enumerate().take(m + 1) {
            if (m - n) % 2 != 0 {
                continue;
            }
            let i = (m - n) / 2;
            if let Some(&c) = v.get(i) {
                acc.add(he.powi(n as i32) * hz.powi(i as i32) * c);
            }
        }
        out.push(acc.value());
    }
    Ok(out)
}

/// The two normalised polynomial solutions.
///
/// First kind: Gamma(gamma + beta_0)/Gamma(gamma) times the terminating sum
/// with lambda = 0. Second kind: z^{1-gamma} Gamma(psi_0 + 2 - gamma)/Gamma(2 - gamma)
/// times the sum with lambda = 2(1 - gamma).
pub fn qw_rw_eval(
    ladder: &TerminationLadder,
    gamma: f64,
    numerator: StepNumerator,
    z: f64,
    eps_tilde: f64,
    trunc: &TrfTruncation,
) -> Result<f64> {
    let kind = ladder.kind();
    let g = kind.shifted_gamma(gamma);
    if is_nonpositive_integer(g) {
        return Err(Error::domain(format!("{kind}-kind prefactor Gamma({g}) has a pole")));
    }
    let beta0 = ladder.betas()[0];
    match kind {
        Kind::First => {
            let shape = LevelShape { gamma, lambda: 0.0, numerator };
            Ok(pochhammer(gamma, beta0) * trf_polynomial_sum(ladder, &shape, z, eps_tilde, trunc.n_max)?)
        }
        Kind::Second => {
            let e = 1.0 - gamma;
            if e != e.round() && z <= 0.0 {
                return Err(Error::domain(format!("z^{e} needs z > 0, got z = {z}")));
            }
            if e < 0.0 && z == 0.0 {
                return Err(Error::domain(format!("z^{e} is singular at z = 0")));
            }
            let shape = LevelShape { gamma, lambda: 2.0 * e, numerator };
            let pre = z.powf(e) * pochhammer(g, beta0);
            Ok(pre * trf_polynomial_sum(ladder, &shape, z, eps_tilde, trunc.n_max)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::{eval_series, frobenius_coeffs};
    use crate::special::kummer_m;

    // Direct nested sum over i_0 <= ... <= i_n <= beta_n with explicit
    // Pochhammer ratios, one path at a time.
    fn brute_force(betas: &[u32], gamma: f64, lambda: f64, omega: f64, z: f64, et: f64, n_max: usize) -> f64 {
        let l2 = lambda / 2.0;
        let mut total = 0.0;
        for n in 0..=n_max {
            let mut path = vec![0usize; n + 1];
            total += walk(betas, gamma, l2, omega, z, n, 0, &mut path) * et.powi(n as i32);
        }
        total
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(b: &[u32], g: f64, l2: f64, w: f64, z: f64, n: usize, k: usize, path: &mut Vec<usize>) -> f64 {
        let lo = if k == 0 { 0 } else { path[k - 1] };
        let mut s = 0.0;
        for i in lo..=b[k] as usize {
            path[k] = i;
            let kf = k as f64;
            let bk = -f64::from(b[k]);
            let w_k = if k == 0 {
                pochhammer(bk, i as u32) / (pochhammer(1.0 + l2, i as u32) * pochhammer(g + l2, i as u32))
            } else {
                let p = 1.0 + kf / 2.0 + l2;
                let q = kf / 2.0 + g + l2;
                let (a, c) = (lo as u32, i as u32);
                pochhammer(bk, c) * pochhammer(p, a) * pochhammer(q, a) / (pochhammer(bk, a) * pochhammer(p, c) * pochhammer(q, c))
            };
            let f = if k == n {
                z.powi(i as i32)
            } else {
                let i = i as f64;
                (i + l2 + w / 2.0 + kf / 2.0) / ((i + 0.5 + l2 + kf / 2.0) * (i - 0.5 + g + kf / 2.0 + l2))
                    * walk(b, g, l2, w, z, n, k + 1, path)
            };
            s += w_k * f;
        }
        s
    }

    #[test]
    fn polynomial_examples() {
        let t0 = TrfTruncation::new(0, 1).unwrap();
        let lad = TerminationLadder::constant(0, 4, Kind::First).unwrap();
        assert_eq!(trf_polynomial_eval(&lad, 1.3, 0.0, 0.4, 0.8, 0.2, 0.0, &t0).unwrap(), 1.0);
        let lad = TerminationLadder::new(vec![1], Kind::First).unwrap();
        let v = trf_polynomial_eval(&lad, 1.5, 0.0, 0.0, 1.0, 0.5, 0.0, &t0).unwrap();
        assert!((v - (1.0 - 0.5 / 1.5)).abs() < 1e-15);
    }

    #[test]
    fn polynomial_matches_path_enumeration() {
        let betas = [1u32, 2, 2, 3, 4];
        let lad = TerminationLadder::new(betas.to_vec(), Kind::First).unwrap();
        for &(g, lambda, w, z, et) in &[(1.5, 0.0, 0.8, 0.7, 0.3), (2.2, 0.6, -1.1, -0.4, 0.9), (0.8, 0.0, 2.0, 1.3, -0.5)] {
            let shape = LevelShape { gamma: g, lambda, numerator: StepNumerator::Linear { omega_low: w } };
            let fast = trf_polynomial_sum(&lad, &shape, z, et, 4).unwrap();
            let slow = brute_force(&betas, g, lambda, w, z, et, 4);
            assert!((fast - slow).abs() < 1e-12 * slow.abs().max(1.0), "{fast} vs {slow}");
        }
    }

    #[test]
    fn qw_rw_examples() {
        let t0 = TrfTruncation::new(0, 1).unwrap();
        let num = StepNumerator::Linear { omega_low: 0.3 };
        let lad = TerminationLadder::new(vec![0], Kind::First).unwrap();
        assert_eq!(qw_rw_eval(&lad, 1.7, num, 0.9, 0.2, &t0).unwrap(), 1.0);
        let lad = TerminationLadder::new(vec![1], Kind::First).unwrap();
        assert!((qw_rw_eval(&lad, 1.5, num, 0.5, 0.0, &t0).unwrap() - 1.0).abs() < 1e-15);
        let lad = TerminationLadder::new(vec![0], Kind::Second).unwrap();
        assert!((qw_rw_eval(&lad, 0.5, num, 4.0, 0.0, &t0).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn ladder_validation() {
        assert!(TerminationLadder::new(vec![2, 1], Kind::First).is_err());
        assert!(TerminationLadder::new(vec![], Kind::First).is_err());
        let p = GchParams::new(-2.0, 0.3, 2.0, 8.0, 1.0);
        let r = ladder_from_omega(&p, 0.0, 5).unwrap();
        assert_eq!(r.values, vec![2.0, 1.5, 1.0, 0.5, 0.0]);
        assert!(!r.consistent && !r.nondecreasing && !r.all_nonnegative_integers);
        assert!(ladder_from_omega(&p, 0.0, 1).unwrap().consistent);
    }

    #[test]
    fn tuple_count() {
        // i_0 <= 2: 3 tuples; (i_0 <= i_1 <= 2): 6 tuples
        assert_eq!(nested_tuple_count(&[2, 2], 1), 9.0);
        let lad = TerminationLadder::constant(400, 6, Kind::First).unwrap();
        let shape = LevelShape { gamma: 1.5, lambda: 0.0, numerator: StepNumerator::Unit };
        assert!(matches!(trf_polynomial_sum(&lad, &shape, 0.1, 0.1, 5), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn infinite_branch_reduces_to_kummer() {
        let p = GchParams::new(-2.0, 0.0, 2.0, 3.0, 7.0);
        let t = TrfTruncation::new(4, 60).unwrap();
        let x = 0.6;
        let v = trf_infinite_eval(&p, 0.0, x, &t).unwrap();
        let m = kummer_m(p.omega_ratio().unwrap(), p.gamma(), p.z_of(x)).unwrap();
        assert!(((v.value - m) / m).abs() < 1e-13);
        assert!(v.converged());
        assert_eq!(trf_infinite_eval(&p, 0.0, 0.0, &t).unwrap().value, 1.0);
    }

    #[test]
    fn infinite_branch_matches_recurrence() {
        let p = GchParams::new(-2.0, 0.4, 1.6, 1.1, 0.7);
        let t = TrfTruncation::new(12, 40).unwrap();
        let v = trf_infinite_eval(&p, 0.0, 0.25, &t).unwrap();
        let sc = frobenius_coeffs(&p, 0.0, 60).unwrap();
        let y = eval_series(&sc, 0.25).unwrap().value;
        assert!(((v.value - y) / y).abs() < 1e-9);
    }

    #[test]
    fn coefficients_match_recurrence_both_roots() {
        let p = GchParams::new(-2.0, 0.4, 1.6, 1.1, 0.7);
        let t = TrfTruncation::new(12, 6).unwrap();
        for lambda in [0.0, 1.0 - p.nu] {
            let ev = TrfEvaluator::Infinite { params: p, lambda };
            let c = trf_coefficients(&ev, &t, 12).unwrap();
            let f = frobenius_coeffs(&p, lambda, 12).unwrap().coeffs;
            for (m, (a, b)) in c.iter().zip(&f).enumerate() {
                assert!((a - b).abs() <= 1e-12 * b.abs().max(1e-300) || (a - b).abs() < 1e-15, "lambda {lambda} m {m}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn even_coefficients_only_without_eps() {
        let p = GchParams::new(1.3, 0.0, 0.4, -0.7, 2.0);
        let t = TrfTruncation::new(6, 6).unwrap();
        let c = trf_coefficients(&TrfEvaluator::Infinite { params: p, lambda: 0.0 }, &t, 12).unwrap();
        assert_eq!(c[0], 1.0);
        assert!(c.iter().skip(1).step_by(2).all(|&v| v == 0.0));
    }

    #[test]
    fn long_inner_sums_survive_power_overflow() {
        // z = 9 and 400 inner terms: 9^400 overflows although every term is tiny.
        let p = GchParams::new(-2.0, 0.0, 2.0, -3.0, 0.0);
        let v = trf_infinite_eval(&p, 0.0, 3.0, &TrfTruncation::new(0, 400).unwrap()).unwrap();
        let want = kummer_m(0.75, 1.5, 9.0).unwrap();
        assert!((v.value - want).abs() < 1e-13 * want, "{} vs {want}", v.value);
    }
}
