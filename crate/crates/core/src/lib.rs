//! Exact computations for the level-3 two-sided construction over a group
//! planar algebra of order `n`.

pub mod error;
pub mod factor;
pub mod freeprob;
pub mod matrix;
pub mod model;
pub mod nc;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;
