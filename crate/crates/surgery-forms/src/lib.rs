//! Exact quadratic-form calculator over Laurent polynomial group rings.
//!
//! The library constructs the explicit quadratic forms obtained by
//! multiplying the `E8` form with torus factors, certifies their
//! algebraic properties (symmetrization, unimodularity, nilpotency of
//! symmetry defects), transfers forms to finite covers of the torus,
//! and realizes forms as geometrically controlled modules over tori.
//!
//! All arithmetic is exact: arbitrary-precision integers, Laurent
//! polynomials, and rationals. See the `examples/` directory for one
//! runnable program per capability.

pub mod checks;
pub mod complex;
pub mod controlled;
pub mod error;
pub mod fixtures;
pub mod forms;
pub mod matrix;
pub mod ring;
pub mod transfer;

pub use error::{Error, Result};
