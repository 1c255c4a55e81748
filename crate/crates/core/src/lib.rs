//! Two-qubit entanglement detection with local uncertainty relations (LURs)
//! and their modified, covariance-modulus form (MLURs).
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! * [`linalg`]: fixed-size complex matrices, Kronecker products, the partial
//!   transpose and a Jacobi eigensolver for Hermitian 2×2 / 4×4 matrices.
//! * [`quantum`]: Bell states, noise mixtures, the local unitaries U1–U3,
//!   Haar-random local unitaries and random separable states.
//! * [`criteria`]: variances, covariances, the L2/L3 relations, their
//!   modified counterparts, the minimised local bound and the PPT oracle.
//! * [`experiment`]: simulated coincidence counts in the three polarization
//!   bases and plug-in estimators with delta-method standard errors.
//! * [`study`]: per-sample Haar detection-rate studies on top of the above.
//! * [`rng`]: seedable, per-task random streams.
//!
//! Basis ordering is |HH⟩, |HV⟩, |VH⟩, |VV⟩ with |H⟩ = (1, 0) and
//! |V⟩ = (0, 1). The 0/90 polarization basis is σz, 45/135 is σx and R/L
//! is σy.

#![no_std]

extern crate alloc;

pub mod criteria;
mod error;
pub mod experiment;
pub mod linalg;
pub mod quantum;
pub mod rng;
pub mod study;

pub use error::{Error, Result};
