//! Uplink multi-user scheduling for millimeter-wave receivers with
//! low-resolution ADCs.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs plus an explicitly passed RNG:
//!
//! * [`channel`]: geometric ULA channels, the DFT beamspace combiner and
//!   on-grid virtual channels.
//! * [`quantize`]: additive quantization noise model (AQNM) parameters,
//!   Lloyd-Max design and an empirical scalar quantizer.
//! * [`rates`]: zero-forcing combiners, exact AQNM rates, the approximate
//!   SINR metric and the closed-form single-user rates.
//! * [`schedulers`]: channel structure-based scheduling (CSS), greedy,
//!   SUS, beam-selection, random and exhaustive selection.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod channel;
mod error;
pub mod linalg;
pub mod quantize;
pub mod rates;
pub mod schedulers;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
