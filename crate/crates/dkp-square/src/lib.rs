//! Scattering and bound states of relativistic scalar and vector bosons in
//! nonminimal vector square wells and barriers, in the Duffin-Kemmer-Petiau
//! (DKP) formalism.
//!
//! The first spinor component obeys an effective Schroedinger-type equation
//! with a squared-potential interior shift and derivative-jump (delta)
//! conditions at the borders x = -a, +a. This crate provides:
//!
//! * [`kinematics`]: the potential configuration and the dimensionless
//!   wavenumbers xi, eta;
//! * [`scattering`]: closed-form reflection/transmission amplitudes,
//!   resonances and grid scans;
//! * [`bound`]: the bound spectrum from the poles of the transmission
//!   amplitude via a pole-free real root function, plus parameter sweeps
//!   (the spectrum is E -> -E symmetric: the Schiff-Snyder-Weinberg pairing
//!   of particle and antiparticle levels);
//! * [`oracle`]: independent numerical checks (transfer matrix, direct RK4
//!   integration with exact jump handling, two-sided shooting);
//! * [`spinor`]: reconstruction of the dependent spinor components and the
//!   conserved currents;
//! * [`io`]: the CLI configuration and deterministic CSV/JSON emission;
//! * [`verify`]: the pinned verification suite behind `dkp-square verify`.
//!
//! Everything is a pure function of its inputs; grids and sweeps are safe to
//! evaluate in parallel, and all emitted output is byte-deterministic.

// frozen oracle reference values keep all 17 digits on purpose
#![allow(clippy::excessive_precision)]
// !(x > 0.0) rejects NaN as well as the out-of-range values; x <= 0.0 would not
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bound;
pub mod error;
pub mod io;
pub mod kinematics;
pub mod oracle;
pub mod scattering;
pub mod spinor;
pub mod verify;

pub use error::{Error, Result};
pub use kinematics::{Kinematics, Polarization, PotentialSpec, Regime, Sector};
pub use scattering::ScatteringResult;
