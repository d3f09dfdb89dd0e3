use alloc::string::String;
use alloc::vec::Vec;

use crate::combinatorics::StructureViolation;
use crate::mesh::ValidationReport;

/// Errors raised by geometric and combinatorial operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid polyhedron: {0}")]
    InvalidPolyhedron(ValidationReport),

    #[error("polyhedron is not convex: vertex {vertex} lies {excess:.3e} outside the plane of face {face}")]
    NonConvex { face: usize, vertex: usize, excess: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("vertex {0} is not strictly convex")]
    NonConvexVertex(usize),

    #[error("vertex index {index} out of range for {len} vertices")]
    VertexOutOfRange { index: usize, len: usize },

    #[error("cut depth {depth} too deep: vertex {blocking} is not separated from the truncated vertex")]
    CutTooDeep { depth: f64, blocking: usize },

    #[error("invalid combinatorial structure: {}", join_violations(.0))]
    InvalidStructure(Vec<StructureViolation>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("classification failed: {0}")]
    ClassificationFailure(String),

    #[error("side-edge lines are neither parallel nor concurrent (spread {spread:.3e})")]
    NeitherParallelNorConcurrent { spread: f64 },

    #[error("value {value} outside supported range {min}..={max}")]
    OutOfRange { value: i64, min: i64, max: i64 },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("`{0}` is unsupported without a combinatorial-type file")]
    UnsupportedName(String),

    #[error("combinatorics broken: {0}")]
    CombinatoricsBroken(String),

    #[error("optimizer did not converge: {0}")]
    NoConvergence(String),
}

fn join_violations(v: &[StructureViolation]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push_str("; ");
        }
        let _ = write!(s, "{x}");
    }
    s
}

pub type Result<T> = core::result::Result<T, Error>;
