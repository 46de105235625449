//! Link-level simulation of covert (low-probability-of-detection) MIMO
//! communication with Gaussian-distributed signals.
//!
//! Two transmission schemes are implemented end to end:
//!
//! - **C-MIMO**: the chaos-based scheme that maps information bits onto
//!   Gaussian codewords through a keyed chaotic recursion and the Box-Muller
//!   transform, decoded with an iterative semi-blind detector.
//! - **NGS**: noncoherent Gaussian signaling, which differentially encodes
//!   diagonal unitary codewords and hides them behind shared-seed Gaussian
//!   reference and projection matrices, decoded without channel estimates.
//!
//! Supporting modules provide the quasi-static Rayleigh channel, the
//! detection-error security bound, coding-gain and complexity analyses, and a
//! deterministic parallel Monte Carlo harness with CSV output.

pub mod analysis;
pub mod channel;
pub mod cmimo;
pub mod codebook;
pub mod detectors;
pub mod duc;
pub mod error;
pub mod ngs;
pub mod numerics;
pub mod sim;

pub use error::{Error, Result};
