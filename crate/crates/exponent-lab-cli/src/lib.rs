//! Library surface of the CLI crate: golden fixtures, emitters, and the
//! command implementations, shared between the binary and the test suites.

pub mod commands;
pub mod emit;
pub mod golden;
