//! Numerical tolerances shared across modules.
//!
//! Relative tolerances are multiplied by a length scale (normally the
//! polyhedron diameter) before use.

/// Maximum vertex distance from a face's least-squares plane, relative to the diameter.
pub const PLANARITY_REL: f64 = 1e-9;

/// Slack for "vertex behind face plane" convexity tests, relative to the diameter.
pub const CONVEXITY_REL: f64 = 1e-9;

/// Chebyshev-centre linear program tolerance.
pub const LP_EPS: f64 = 1e-10;

/// Side-edge lines count as concurrent when their pairwise closest points
/// agree to this fraction of the diameter.
pub const CONCURRENCY_REL: f64 = 1e-8;

/// Side-edge lines count as parallel when normalized direction cross
/// products are below this norm.
pub const PARALLEL_CROSS: f64 = 1e-10;

/// An edge shorter than this fraction of the diameter means a face or
/// vertex has collapsed during optimization.
pub const DEGENERATE_EDGE_REL: f64 = 1e-7;
