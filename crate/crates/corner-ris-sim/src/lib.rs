//! Around-the-corner CW radar simulation with a 1-bit coded reflecting
//! surface.
//!
//! A monostatic continuous-wave radar watches an L-shaped corridor. A
//! passive phase-coded panel near the corner redirects the beam into the
//! shadowed arm, where a walking human produces micro-Doppler that the
//! radar can only otherwise reach through weak wall-bounce multipath. The
//! crate models the whole chain:
//!
//! * [`geometry`] — the 2-D corridor, visibility, and specular multipath by
//!   the image method
//! * [`ris`] — panel phase profiles, 1-bit quantization, reradiation
//!   patterns, and beam metrics
//! * [`kinematics`] — walking trajectories and the five-point gait
//!   scatterer model
//! * [`channel`] — slow-time baseband synthesis at the receiver
//! * [`dsp`] — short-time Fourier spectrograms and detection metrics
//! * [`scenario`] — configuration files, canned scenarios, and full runs
//!
//! Start with the runnable examples (`cargo run --example ris_pattern`,
//! `nlos_recovery`, ...) or the `corner-ris-sim` binary.

pub mod channel;
pub mod dsp;
pub mod error;
pub mod geometry;
pub mod kinematics;
pub mod ris;
pub mod scenario;

pub use error::{Result, SimError};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
