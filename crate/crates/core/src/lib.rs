//! Generalized photon polarization amplitudes and observables.
//!
//! A polarization measurement is characterized by a [`Direction`] (plane
//! angle `theta` plus relative phase `alpha`) and has two outcomes, parallel
//! ([`Branch::Plus`]) and perpendicular ([`Branch::Minus`]). Everything in this
//! crate is built from one primitive, the transition [`amplitude`] between two
//! such outcomes:
//!
//! * [`amplitude`] and [`probability`] give closed forms for any pair of
//!   branch labels; [`chain`] resolves an amplitude through an intermediate
//!   direction.
//! * [`operators`] builds the 2×2 Hermitian matrix of any quantity whose value
//!   depends on the measured branch, expressed in an arbitrary basis
//!   direction, together with its eigenvectors and expectation values.
//! * [`limits`] evaluates the generalized objects at the `x` direction.
//! * [`simulate`] runs exact and Monte Carlo analyzer chains.
//! * [`verify`] checks every identity against independent oracles and
//!   compares the published closed forms in [`published`] with the derived
//!   values.
//!
//! All angles are radians.

pub mod amplitude;
pub mod error;
pub mod limits;
pub mod operators;
pub mod published;
pub mod simulate;
pub mod state;
pub mod verify;

pub use amplitude::{
    amplitude, chain, hermitian_partner, probability, probability_closed, state_vector,
    Amplitude, Branch, BranchLabel, Direction,
};
pub use error::{Error, Result};
pub use operators::Observable2;
pub use state::StateVector2;

/// Tolerance used by every invariant check unless the caller supplies one.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

pub use num_complex::Complex64;
