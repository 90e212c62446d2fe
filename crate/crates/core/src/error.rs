use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("resonant recurrence denominator at m = {m} (lambda = {lambda})")]
    Resonance { m: usize, lambda: f64 },

    #[error("degenerate indicial roots: nu = {nu} gives 1 - nu = 0, the second root coincides with the first")]
    DegenerateRoot { nu: f64 },

    #[error("no convergence in {what} after {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },

    #[error("nested sum has {count:e} index tuples, limit is {limit:e}")]
    TooLarge { count: f64, limit: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("transfer order {0} is not supported, the quadrature stack is limited to order 2")]
    Dimension(usize),

    #[error("contour exponent {0} is not an integer, the integrand has a branch point at the origin")]
    BranchPoint(f64),

    #[error("invalid termination ladder: {0}")]
    Ladder(String),

    #[error("wave function has not decayed at r_max: |psi(r_max)| / peak = {0:e}")]
    NotDecayed(f64),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of an iterative or truncated computation, as opposed
    /// to bad input.
    pub fn is_convergence(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }

    /// Short stable name of the variant, for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Resonance { .. } => "resonance",
            Error::DegenerateRoot { .. } => "degenerate-root",
            Error::NonConvergence { .. } => "non-convergence",
            Error::TooLarge { .. } => "too-large",
            Error::NonFinite(_) => "non-finite",
            Error::Dimension(_) => "dimension",
            Error::BranchPoint(_) => "branch-point",
            Error::Ladder(_) => "ladder",
            Error::NotDecayed(_) => "not-decayed",
        }
    }
}
