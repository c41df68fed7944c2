//! Exact analysis of unit-cube systems: tilings, packings, and the
//! orthogonality structure of exponential families on the cube.
//!
//! A *translate set* is a finite or periodic family of points in
//! `ℚ^d`, each standing for a half-open cube `t + [0, 1)^d` — or,
//! under the dual reading, for the exponential `exp(2πi t·x)` on the
//! unit cube.  This crate answers, with exact rational arithmetic
//! wherever a yes/no answer is produced:
//!
//! - does the family tile (or at least pack) space? ([`tiling`])
//! - are the exponentials pairwise orthogonal, and how much of the
//!   norm do they capture at a given frequency? ([`analysis`])
//! - which tilings exist for a given period and denominator?
//!   ([`cover`])
//! - how do sliding maps transport these properties? ([`transforms`])
//!
//! Floating point enters only in completeness partial sums, and those
//! are paired with rigorous tail bounds so that reported deficits are
//! certificates, not estimates.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the
//! command-line front end live in the companion `cubespec` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod cover;
pub mod error;
pub mod point;
pub mod rational;
pub mod set;
pub mod tiling;
pub mod transforms;

pub use error::{Error, Result};
pub use point::Point;
pub use rational::Rational;
pub use set::{SetMode, TranslateSet, Window};
