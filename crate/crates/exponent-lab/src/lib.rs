//! Verification workbench for continued-fraction convergents, per-convergent
//! irrationality exponents, harmonic summation kernels, and the 2-adic sine
//! construction built on top of them.
//!
//! Everything numeric runs on [`mpreal::BigReal`], a dyadic arbitrary-precision
//! real carrying a certified absolute error bound, so each reported inequality
//! or table cell is backed by an interval argument, not a float comparison.

pub mod cfrac;
pub mod diophantine;
pub mod error;
pub mod kernels;
pub mod lemma_verifier;
pub mod mpreal;

pub use error::{Error, Result};
pub use mpreal::{BigReal, ConstantId, PrecisionLimits};
