//! Finite-dimensional numerics for sufficiency and recoverability of quantum
//! channels: relative entropy (spectral and integral routes), hypothesis
//! testing curves, Petz-type recovery maps and the diagnostics that tie them
//! together.

pub mod cli;
pub mod divergences;
pub mod error;
pub mod fixtures;
pub mod hypothesis;
pub mod linalg;
pub mod quantum;
pub mod recovery;

pub use error::{Error, Result};
