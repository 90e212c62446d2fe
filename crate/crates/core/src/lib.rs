pub mod cli;
pub mod error;
pub mod genfunc;
pub mod integral;
pub mod ode;
pub mod physics;
pub mod quadrature;
pub mod trf;
pub mod verify;
pub mod special;

pub use error::{Error, Result};
