//! Report plumbing and pinned tolerances for the acceptance run.

use std::fmt;
use std::time::{Duration, Instant};

/// Seed of every randomised draw in the acceptance run.
pub const SEED: u64 = 0x6763_686b_6974;

pub const TOL_TRF_COEFFS: f64 = 1e-10;
pub const TOL_KUMMER: f64 = 1e-11;
pub const TOL_CONTOUR: f64 = 1e-10;
pub const MIN_SPECTRAL_RATIO: f64 = 100.0;
pub const SPECTRAL_FLOOR: f64 = 1e-13;
pub const TOL_KJ: f64 = 1e-8;
pub const TOL_QJ: f64 = 1e-7;
pub const TOL_REP: f64 = 1e-7;
pub const TOL_REP_SMOKE: f64 = 1e-6;
pub const TOL_GF_KERNEL: f64 = 1e-12;
pub const TOL_GF_CLOSED: f64 = 1e-8;
pub const TOL_BOUNDARY: f64 = 1e-6;
pub const TOL_NORMALIZATION: f64 = 1e-10;
/// Spacing checks allow the rounding of the two energies being differenced.
pub const SPACING_ULPS: f64 = 4.0;
pub const TOL_RESIDUAL: f64 = 1e-9;
pub const TOL_ASYMPTOTIC: f64 = 0.2;

/// Outcome of one numbered criterion.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub id: u8,
    pub title: &'static str,
    /// Numerical part of the criterion.
    pub within_tolerance: bool,
    pub elapsed: Duration,
    pub budget: Duration,
    /// False for exploratory criteria, which never fail the run.
    pub gating: bool,
    pub detail: Vec<String>,
}

impl Verdict {
    pub fn pass(&self) -> bool {
        self.within_tolerance && self.elapsed <= self.budget
    }

    /// True when this verdict fails the run.
    pub fn blocks(&self) -> bool {
        self.gating && !self.pass()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass() { "PASS" } else { "FAIL" };
        let gate = if self.gating { "" } else { " (non-gating)" };
        write!(
            f,
            "{tag} [{}] {}{gate}: {:.3} s of {:.0} s",
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs_f64()
        )?;
        for d in &self.detail {
            write!(f, "\n       {d}")?;
        }
        Ok(())
    }
}

/// Times `body`, which returns (within tolerance, detail lines).
pub fn run_criterion<F>(id: u8, title: &'static str, budget_s: u64, gating: bool, body: F) -> Verdict
where
    F: FnOnce() -> Result<(bool, Vec<String>), String>,
{
    let start = Instant::now();
    let (within_tolerance, detail) = match body() {
        Ok(v) => v,
        Err(e) => (false, vec![format!("error: {e}")]),
    };
    Verdict { id, title, within_tolerance, elapsed: start.elapsed(), budget: Duration::from_secs(budget_s), gating, detail }
}

/// Running maximum of an error together with where it occurred.
#[derive(Debug, Clone, Default)]
pub struct Worst {
    pub value: f64,
    pub at: String,
}

impl Worst {
    pub fn update(&mut self, value: f64, at: impl FnOnce() -> String) {
        // A NaN sticks so that it is reported.
        if self.value.is_nan() {
            return;
        }
        if value.is_nan() || value > self.value {
            self.value = value;
            self.at = at();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_lines() {
        let v = run_criterion(3, "contour kernels", 5, true, || Ok((true, vec!["max 1e-14".into()])));
        let s = v.to_string();
        assert!(s.starts_with("PASS [3] contour kernels: "), "{s}");
        assert!(s.ends_with("\n       max 1e-14"));
        let bad = run_criterion(9, "diagnostic", 5, false, || Err("boom".into()));
        assert!(!bad.pass() && !bad.blocks());
        assert!(bad.to_string().starts_with("FAIL [9] diagnostic (non-gating)"));
    }

    #[test]
    fn over_budget_fails() {
        let mut v = run_criterion(1, "t", 0, true, || Ok((true, vec![])));
        v.elapsed = Duration::from_millis(1);
        assert!(v.blocks());
    }

    #[test]
    fn worst_keeps_nan() {
        let mut w = Worst::default();
        w.update(1.0, || "a".into());
        w.update(f64::NAN, || "b".into());
        w.update(2.0, || "c".into());
        assert!(w.value.is_nan());
        assert_eq!(w.at, "b");
    }
}
