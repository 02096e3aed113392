//! Ground-state energetics of small quantum systems entangled with bosonic
//! environments: two-level systems, flux-threaded rings, damped oscillators
//! and an oscillator attached to a harmonic chain.
//!
//! Units: ħ = k_B = 1 throughout. Flux is measured in flux quanta.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chain;
pub mod error;
pub mod numerics;
pub mod oracle;
pub mod oscillator;
pub mod qubit;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
