//! p-adic cohomology of cyclic covers of the punctured projective line.
//!
//! For a cover `X: Xi^t * Pi = 1` over `F_q`, the crate computes each
//! character eigenspace of `H^1` through its logarithmic F-crystal, the
//! Frobenius action on it, and the resulting zeta function. Brute-force
//! counters and the Deligne-Lusztig formulas for `GL_{d+1}` are included as
//! independent checks.

#![cfg_attr(not(feature = "std"), no_std)]
// Matrix code indexes several arrays in lockstep.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod arith;
pub mod census;
pub mod crystal;
pub mod dl;
pub mod engine;
pub mod error;

pub use error::{Error, Result};
