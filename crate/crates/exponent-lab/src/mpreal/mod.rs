//! Adaptive-precision real arithmetic with certified error bounds, plus
//! generators for the constants under study.

pub mod bigreal;
pub mod constants;
pub mod functions;
pub mod magnitude;
pub mod stabilize;

pub use bigreal::BigReal;
pub use constants::{gen_constant, gen_constant_crosscheck, ConstantId};
pub use magnitude::Magnitude;
pub use stabilize::{digits_to_bits, stabilize, PrecisionLimits};
