//! Lindelöf tangency checks, area minimization within a combinatorial type
//! and the vertex-truncation experiment.

mod descent;
mod embedding;
mod lindelof;
mod symmetry;
mod truncation;

pub use descent::{canonical_placement, minimize_within_type, OptimizeOptions, OptimizeOutcome};
pub use embedding::{Plane, TypeEmbedding};
pub use lindelof::{lindelof_check, FaceTangency, LindelofReport};
pub use symmetry::{PointGroup, Symmetry, SymmetrySpec};
pub use truncation::{truncation_experiment, TruncationExperiment};
