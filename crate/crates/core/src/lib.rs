//! Geometry of surface-area-minimizing polyhedral space tiles.
//!
//! Closed polyhedral surfaces with validation and measurement, convex hulls,
//! Chebyshev inspheres, combinatorial types, optimal prisms, classical lower
//! bounds, builders for the conjectured minimizing tiles and their
//! competitors, and minimization of surface area within a fixed
//! combinatorial type.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
// Negated float comparisons are deliberate: they also reject NaN. Matrix
// code indexes by row and column on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod candidates;
pub mod combinatorics;
pub mod error;
pub mod geometry;
pub mod math;
pub mod mesh;
pub mod optimize;
pub mod prisms;
pub mod tolerance;

pub use error::{Error, Result};
pub use geometry::{Mat3, Point3};
pub use mesh::{Insphere, Measures, Polyhedron};
