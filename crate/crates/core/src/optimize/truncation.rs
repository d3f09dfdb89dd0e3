use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mesh::{cut_axis, truncate_vertex, Polyhedron};

/// Costs of ever shallower vertex cuts.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationExperiment {
    /// Cost `area^3 / volume^2` of the uncut polyhedron.
    pub base_cost: f64,
    /// Deepest admissible cut: the nearest other vertex along the cut axis.
    pub max_depth: f64,
    /// `(depth, cost)` pairs in decreasing depth.
    pub samples: Vec<(f64, f64)>,
    /// One-sided slope `d cost / d depth` at zero depth, extrapolated from
    /// the two shallowest samples.
    pub derivative_at_zero: f64,
}

/// Cuts vertex `v` at depths `max_depth / (steps 2^k)` for `k = 1..=steps`
/// and records the cost of each result.
pub fn truncation_experiment(p: &Polyhedron, v: usize, steps: usize) -> Result<TruncationExperiment> {
    if steps == 0 {
        return Err(Error::Precondition("at least one step is needed".into()));
    }
    // Validates the polyhedron, the index and local convexity.
    truncate_vertex(p, v, 0.0)?;
    let apex = p.vertices()[v];
    let axis = cut_axis(p, v)?;
    let max_depth = p
        .vertices()
        .iter()
        .enumerate()
        .filter(|&(w, _)| w != v)
        .map(|(_, &x)| axis.dot(x - apex))
        .fold(f64::INFINITY, f64::min);

    let base_cost = p.measures()?.cost;
    let mut samples = Vec::with_capacity(steps);
    let mut depth = max_depth / steps as f64;
    for _ in 0..steps {
        depth *= 0.5;
        let cost = truncate_vertex(p, v, depth)?.measures()?.cost;
        samples.push((depth, cost));
    }
    // cost(t) - cost(0) = a t + b t^2 + ...; eliminate b between the two
    // shallowest samples.
    let derivative_at_zero = match samples.as_slice() {
        [.., (t1, c1), (t2, c2)] => {
            let s1 = (c1 - base_cost) / t1;
            let s2 = (c2 - base_cost) / t2;
            (s2 * t1 - s1 * t2) / (t1 - t2)
        }
        [(t, c)] => (c - base_cost) / t,
        [] => unreachable!(),
    };
    Ok(TruncationExperiment { base_cost, max_depth, samples, derivative_at_zero })
}
