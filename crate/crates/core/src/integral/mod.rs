//! Quadrature evaluation of the contour and Beta-integral representations.

mod contour;
mod identities;
mod representation;

pub use contour::{chp_contour, kummer_contour, KummerContour};
pub use identities::{verify_kj, verify_qj, IdentityPair};
pub use representation::{
    infinite_prefactor, integral_rep_eval, integral_rep_eval_with, RepBranch, TransferState, MAX_TRANSFER_ORDER,
};
