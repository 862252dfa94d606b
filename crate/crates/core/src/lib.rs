//! Parallel risk curves over a probability/impact lattice.
//!
//! The base curve of risk is the hyperbola `x * y = c` (or any strictly
//! monotone explicit curve `y = f(x)`). A family of curves at constant normal
//! distance from it splits the first quadrant into risk levels, and every
//! (probability, impact) pair of a [`levels::ClassGrid`] is assigned to one of
//! those levels by the signed normal distance of the pair to the base curve.
//!
//! Modules:
//!
//! * [`curves`]: offset points, normal lines, sampling, height evaluation.
//! * [`inverse`]: foot of the normal and signed offset of an arbitrary point.
//! * [`levels`]: family construction and level classification.
//! * [`measures`]: statistical risk measures of a discrete random variable.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod curves;
mod error;
pub mod inverse;
pub mod levels;
pub mod measures;
mod roots;

pub use error::{Axis, Error, Result};
