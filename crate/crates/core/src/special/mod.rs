//! Scalar special functions shared by every other module.

mod erf;
mod gamma;
mod kummer;
mod polynomials;
mod summation;

pub use erf::{erf, erfc};
pub use gamma::{beta, gamma, gamma_sign, is_nonpositive_integer, ln_gamma, pochhammer, POCHHAMMER_DIRECT_MAX};
pub use kummer::{kummer_m, kummer_m_with_condition, kummer_series, SeriesSum, KUMMER_MAX_TERMS, KUMMER_REFLECT_BELOW};
pub use polynomials::{chp_coefficients, chp_eval, Kind};
pub use summation::{compensated_sum, CompensatedComplexSum, CompensatedSum};
