//! Doppler-resilient CAZAC sequence design and radar-sensing simulation.
//!
//! The crate splits into four layers:
//!
//! - [`sequence`]: Zadoff-Chu, unified-construction CAZAC, and differential
//!   ZC generators, the CAZAC property verifier, and serialization.
//! - [`correlation`]: circular correlation (transform and direct paths),
//!   the exact ZC correlation closed forms, the sidelobe permutation table,
//!   PSLR measurement, and the CAZAC correlation bound.
//! - [`design`]: feasible root-index ranges, best-root selection, direct
//!   requirement verification, and the restricted (phi, a) grid search.
//! - [`radar`]: multi-target echo synthesis, range-Doppler maps, hypothesis
//!   -test detection, truth matching, and ROC sweeps.

pub mod arith;
pub mod correlation;
pub mod design;
pub mod error;
pub mod fft;
pub mod radar;
pub mod sequence;

pub use error::{Error, Result};
