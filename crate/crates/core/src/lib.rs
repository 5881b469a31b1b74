//! Generalized Weyl integrable geometry: affine bundle transforms, the
//! modified Laplace and wave operators they induce, a singularity-free
//! potential model, and the numerical oracles that check all of it.

pub mod appendix;
pub mod banded;
pub mod closed_forms;
pub mod delta;
pub mod error;
pub mod grid;
pub mod operators;
pub mod verifier;
pub mod weyl;

pub use error::{GwigError, Result};
