//! Casimir-force model kernels.
//!
//! Closed-form Casimir surface pressures on dilute and isorefractive dielectric
//! bodies, the static balances they admit against surface tension, the
//! Casimir-modified Rayleigh filling of a spherical cavity, and a model study
//! of thin-shell gravitational collapse with a Casimir pressure term.
//!
//! The crate is `no_std` and only needs `alloc` for sampled trajectories.
//! All quantities are SI except in [`shell`], which works in geometric units
//! (`G = c = 1`, lengths in meters); [`units`] converts between the two.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod balance;
mod error;
pub mod hole;
pub mod numerics;
pub mod pressures;
pub mod shell;
pub mod trajectory;
pub mod units;

pub use error::{Error, Result};
pub use trajectory::{Sample, TerminalEvent, Trajectory};
