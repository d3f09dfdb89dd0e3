use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::embedding::{realize_planes, Plane, TypeEmbedding};
use super::lindelof::{lindelof_check, LindelofReport};
use super::symmetry::Symmetry;
use crate::combinatorics::CombinatorialType;
use crate::error::{Error, Result};
use crate::geometry::{Mat3, Point3};
use crate::math;
use crate::mesh::insphere::insphere_of_planes;
use crate::mesh::{insphere, Polyhedron};

/// Knobs for [`minimize_within_type`]; the defaults are the documented
/// policy.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeOptions {
    /// Number of restarts; restart 0 starts from the seed itself.
    pub restarts: usize,
    /// Run only this restart.
    pub seed_index: Option<usize>,
    pub max_iterations: usize,
    /// Relative perturbation of the seed for restarts after the first.
    pub perturbation: f64,
    /// Required Lindelöf residual on the unit-volume result.
    pub lindelof_tolerance: f64,
    /// Converged when the relative cost change over `stall_window`
    /// iterations is below `stall_tolerance`.
    pub stall_window: usize,
    pub stall_tolerance: f64,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            restarts: 16,
            seed_index: None,
            max_iterations: 4000,
            perturbation: 0.08,
            lindelof_tolerance: 1e-5,
            stall_window: 100,
            stall_tolerance: 1e-12,
        }
    }
}

/// A converged restart.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeOutcome {
    /// Unit volume, insphere centre at the origin.
    pub polyhedron: Polyhedron,
    pub surface_area: f64,
    pub cost: f64,
    /// Cost of every accepted iterate, starting with the (perturbed) seed.
    /// Includes the concurrency penalty, which vanishes when every vertex
    /// has degree three.
    pub trace: Vec<f64>,
    pub iterations: usize,
    pub restart: usize,
    /// Present when tangency was required for convergence.
    pub lindelof: Option<LindelofReport>,
}

/// Translates the insphere centre to the origin and scales to unit volume.
pub fn canonical_placement(p: &Polyhedron) -> Result<Polyhedron> {
    let c = insphere(p)?.center;
    p.translated(-c).scale_to_unit_volume()
}

/// Minimizes `area^3 / volume^2` over the face planes of `ty`, starting
/// from `seed`. With a symmetry, faces in one orbit share parameters and
/// the result keeps the symmetry. Restarts perturb the seed with a fixed
/// seed list; the lowest cost wins, ties going to the lower index.
pub fn minimize_within_type(
    ty: &CombinatorialType,
    seed: &TypeEmbedding,
    symmetry: Option<&Symmetry>,
    options: &OptimizeOptions,
) -> Result<OptimizeOutcome> {
    if seed.combinatorial_type() != ty {
        return Err(Error::Precondition("seed embedding carries a different type".into()));
    }
    let problem = Problem::new(ty, symmetry)?;
    let base = problem.initial_parameters(seed)?;
    let runs: Vec<usize> = match options.seed_index {
        Some(k) if k >= options.restarts.max(1) => {
            return Err(Error::OutOfRange { value: k as i64, min: 0, max: options.restarts as i64 - 1 })
        }
        Some(k) => vec![k],
        None => (0..options.restarts.max(1)).collect(),
    };
    let mut best: Option<OptimizeOutcome> = None;
    let mut first_error = None;
    for k in runs {
        match problem.run(&base, k, options) {
            Ok(o) => {
                if best.as_ref().is_none_or(|b| o.cost < b.cost) {
                    best = Some(o);
                }
            }
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    best.ok_or_else(|| first_error.unwrap_or_else(|| Error::NoConvergence("no restart ran".into())))
}

/// Penalty weight on relative plane misfit at vertices of degree above three.
const MISFIT_WEIGHT: f64 = 1e8;

struct Rep {
    /// Orthonormal basis of the admissible normals.
    basis: Vec<Point3>,
    start: usize,
}

struct Problem<'a> {
    ty: &'a CombinatorialType,
    reps: Vec<Rep>,
    /// Per face: representative index and the group element carrying the
    /// representative's plane onto it.
    placement: Vec<(usize, Mat3)>,
    /// Projector onto translations fixed by the group.
    fixed_translations: Mat3,
    require_tangency: bool,
    dimension: usize,
}

struct Evaluation {
    objective: f64,
    min_edge_ratio: f64,
}

impl<'a> Problem<'a> {
    fn new(ty: &'a CombinatorialType, symmetry: Option<&Symmetry>) -> Result<Self> {
        let nf = ty.face_count();
        let mut placement = vec![(usize::MAX, Mat3::IDENTITY); nf];
        let mut reps = Vec::new();
        let mut dimension = 0;
        let orbits: Vec<Vec<usize>> = match symmetry {
            Some(s) if s.face_count() != nf => {
                return Err(Error::Precondition(format!("symmetry acts on {} faces, type has {nf}", s.face_count())))
            }
            Some(s) => s.orbits(),
            None => (0..nf).map(|f| vec![f]).collect(),
        };
        for orbit in &orbits {
            let r = orbit[0];
            let stabilizer: Vec<Mat3> = match symmetry {
                None => vec![Mat3::IDENTITY],
                Some(s) => s
                    .group()
                    .elements()
                    .iter()
                    .enumerate()
                    .filter(|&(g, _)| s.face_image(g, r) == r)
                    .map(|(_, m)| *m)
                    .collect(),
            };
            let average = average(&stabilizer);
            let mut basis = Vec::new();
            for e in [Point3::new(1.0, 0.0, 0.0), Point3::new(0.0, 1.0, 0.0), Point3::new(0.0, 0.0, 1.0)] {
                push_orthonormal(&mut basis, average.mul_vec(e));
            }
            // Perpendicularity constraints on any face of the orbit, pulled back to the representative.
            let mut blocked = Vec::new();
            if let Some(s) = symmetry {
                for &(f, axis) in s.perpendicular() {
                    for (g, m) in s.group().elements().iter().enumerate() {
                        if s.face_image(g, r) == f {
                            push_orthonormal(&mut blocked, m.transpose().mul_vec(axis));
                        }
                    }
                }
            }
            let mut allowed: Vec<Point3> = Vec::new();
            let ambient: Vec<Point3> = basis.clone();
            for b in ambient {
                let mut v = b;
                for _ in 0..64 {
                    for a in &blocked {
                        v -= *a * a.dot(v);
                    }
                    v = basis.iter().fold(Point3::ORIGIN, |acc, &q| acc + q * q.dot(v));
                }
                push_orthonormal(&mut allowed, v);
            }
            if allowed.is_empty() {
                return Err(Error::Precondition(format!("constraints leave face {r} no admissible normal")));
            }
            let index = reps.len();
            match symmetry {
                None => placement[r] = (index, Mat3::IDENTITY),
                Some(s) => {
                    for (g, m) in s.group().elements().iter().enumerate() {
                        let f = s.face_image(g, r);
                        if placement[f].0 == usize::MAX {
                            placement[f] = (index, *m);
                        }
                    }
                }
            }
            reps.push(Rep { start: dimension, basis: allowed });
            dimension += reps[index].basis.len() + 1;
        }
        let fixed_translations = match symmetry {
            None => Mat3::IDENTITY,
            Some(s) => average(s.group().elements()),
        };
        let simple = ty.vertex_degrees().iter().all(|&d| d == 3);
        let constrained = symmetry.is_some_and(|s| !s.perpendicular().is_empty());
        Ok(Problem { ty, reps, placement, fixed_translations, require_tangency: simple && !constrained, dimension })
    }

    fn initial_parameters(&self, seed: &TypeEmbedding) -> Result<Vec<f64>> {
        let mut x = vec![0.0; self.dimension];
        for (f, &(r, _)) in self.placement.iter().enumerate() {
            let rep = &self.reps[r];
            if self.placement.iter().position(|&(q, _)| q == r) != Some(f) {
                continue;
            }
            let plane = seed.planes()[f];
            // The representative sits at the identity of the first element mapping it.
            let normal = self.placement[f].1.transpose().mul_vec(plane.normal);
            for (k, q) in rep.basis.iter().enumerate() {
                x[rep.start + k] = q.dot(normal);
            }
            x[rep.start + rep.basis.len()] = plane.offset;
        }
        self.evaluate(&x)
            .ok_or_else(|| Error::Precondition("seed does not satisfy the symmetry constraints".into()))?;
        self.retract(&x).ok_or_else(|| Error::Precondition("seed has no interior".into()))
    }

    fn planes(&self, x: &[f64]) -> Vec<Plane> {
        self.placement
            .iter()
            .map(|&(r, m)| {
                let rep = &self.reps[r];
                let normal =
                    rep.basis.iter().enumerate().fold(Point3::ORIGIN, |acc, (k, &q)| acc + q * x[rep.start + k]);
                Plane::new(m.mul_vec(normal), x[rep.start + rep.basis.len()])
            })
            .collect()
    }

    fn realize(&self, x: &[f64]) -> Option<(Polyhedron, f64)> {
        for rep in &self.reps {
            let n2: f64 = (0..rep.basis.len()).map(|k| x[rep.start + k] * x[rep.start + k]).sum();
            if !(n2 > 1e-12) {
                return None;
            }
        }
        let r = realize_planes(self.ty, &self.planes(x)).ok()?;
        Some((r.polyhedron, r.misfit))
    }

    fn evaluate(&self, x: &[f64]) -> Option<Evaluation> {
        let (p, misfit) = self.realize(x)?;
        let m = p.measures_unchecked();
        if !(m.volume > 0.0 && m.surface_area > 0.0) {
            return None;
        }
        let relative = misfit / m.diameter;
        let objective = math::ln(m.surface_area) - 2.0 / 3.0 * math::ln(m.volume) + MISFIT_WEIGHT * relative * relative;
        let mut shortest = f64::INFINITY;
        for f in p.faces() {
            for k in 0..f.len() {
                shortest = shortest.min((p.vertices()[f[k]] - p.vertices()[f[(k + 1) % f.len()]]).norm());
            }
        }
        objective.is_finite().then_some(Evaluation { objective, min_edge_ratio: shortest / m.diameter })
    }

    /// Gauge move: insphere centre (symmetrized) to the origin, inradius 1,
    /// unit normal coefficients. Leaves the cost unchanged.
    fn retract(&self, x: &[f64]) -> Option<Vec<f64>> {
        let (p, _) = self.realize(x)?;
        let planes = self.planes(x);
        let pairs: Vec<(Point3, f64)> = planes.iter().map(|q| (q.normal, q.offset)).collect();
        let sphere = insphere_of_planes(&pairs, p.vertex_centroid(), p.diameter()).ok()?;
        let shift = self.fixed_translations.mul_vec(sphere.center);
        let radius = planes.iter().map(|q| q.offset - q.normal.dot(shift)).fold(f64::INFINITY, f64::min);
        if !(radius > 0.0) {
            return None;
        }
        let mut y = x.to_vec();
        for (f, &(r, _)) in self.placement.iter().enumerate() {
            if self.placement.iter().position(|&(q, _)| q == r) != Some(f) {
                continue;
            }
            let rep = &self.reps[r];
            let k = rep.basis.len();
            let len = math::sqrt((0..k).map(|i| x[rep.start + i] * x[rep.start + i]).sum());
            for i in 0..k {
                y[rep.start + i] = x[rep.start + i] / len;
            }
            y[rep.start + k] = (planes[f].offset - planes[f].normal.dot(shift)) / radius;
        }
        Some(y)
    }

    fn needs_retraction(&self, x: &[f64]) -> bool {
        let Some((p, _)) = self.realize(x) else { return false };
        let planes = self.planes(x);
        let pairs: Vec<(Point3, f64)> = planes.iter().map(|q| (q.normal, q.offset)).collect();
        let Ok(sphere) = insphere_of_planes(&pairs, p.vertex_centroid(), p.diameter()) else { return false };
        let unbalanced = self.reps.iter().any(|rep| {
            let n2: f64 = (0..rep.basis.len()).map(|k| x[rep.start + k] * x[rep.start + k]).sum();
            !(0.64..1.5625).contains(&n2)
        });
        unbalanced || sphere.center.norm() > 0.05 * sphere.radius || math::abs(sphere.radius - 1.0) > 0.05
    }

    fn gradient(&self, x: &[f64], fx: f64) -> Vec<f64> {
        let mut g = vec![0.0; x.len()];
        let mut probe = x.to_vec();
        for i in 0..x.len() {
            let h = 1e-6 * math::abs(x[i]).max(1.0);
            probe[i] = x[i] + h;
            let up = self.evaluate(&probe).map(|e| e.objective);
            probe[i] = x[i] - h;
            let down = self.evaluate(&probe).map(|e| e.objective);
            probe[i] = x[i];
            g[i] = match (up, down) {
                (Some(u), Some(d)) => (u - d) / (2.0 * h),
                (Some(u), None) => (u - fx) / h,
                (None, Some(d)) => (fx - d) / h,
                (None, None) => 0.0,
            };
        }
        g
    }

    fn start(&self, base: &[f64], index: usize, options: &OptimizeOptions) -> Result<Vec<f64>> {
        if index == 0 {
            return Ok(base.to_vec());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + index as u64);
        let mut amplitude = options.perturbation;
        for _ in 0..12 {
            let y: Vec<f64> = base.iter().map(|&v| v + amplitude * rng.random_range(-1.0..1.0)).collect();
            if self.evaluate(&y).is_some() {
                if let Some(y) = self.retract(&y) {
                    return Ok(y);
                }
            }
            amplitude *= 0.5;
        }
        Err(Error::CombinatoricsBroken(format!("restart {index}: no feasible perturbation of the seed")))
    }

    fn run(&self, base: &[f64], index: usize, options: &OptimizeOptions) -> Result<OptimizeOutcome> {
        let n = self.dimension;
        let mut x = self.start(base, index, options)?;
        let mut current = self.evaluate(&x).ok_or_else(|| Error::Precondition("seed is infeasible".into()))?;
        let mut fx = current.objective;
        let mut trace = vec![math::exp(3.0 * fx)];
        let mut history = vec![fx];
        let mut grad = self.gradient(&x, fx);
        let mut inverse = identity(n);
        let mut fresh = true;
        let mut stalled = false;
        let mut iterations = 0;
        while iterations < options.max_iterations {
            iterations += 1;
            let mut direction: Vec<f64> = matvec(&inverse, &grad).iter().map(|v| -v).collect();
            let mut slope = dot(&grad, &direction);
            if !(slope < 0.0) {
                inverse = identity(n);
                fresh = true;
                direction = grad.iter().map(|v| -v).collect();
                slope = -dot(&grad, &grad);
                if !(slope < 0.0) {
                    stalled = true;
                    break;
                }
            }
            // Armijo backtracking; infeasible trial points count as failures.
            let mut step = 1.0;
            let mut accepted = None;
            for _ in 0..60 {
                let trial: Vec<f64> = x.iter().zip(&direction).map(|(a, d)| a + step * d).collect();
                if let Some(e) = self.evaluate(&trial) {
                    if e.objective <= fx + 1e-4 * step * slope && e.objective < fx {
                        accepted = Some((trial, e));
                        break;
                    }
                }
                step *= 0.5;
            }
            let Some((next, e)) = accepted else {
                if fresh {
                    stalled = true;
                    break;
                }
                inverse = identity(n);
                fresh = true;
                continue;
            };
            let next_grad = self.gradient(&next, e.objective);
            let s: Vec<f64> = next.iter().zip(&x).map(|(a, b)| a - b).collect();
            let y: Vec<f64> = next_grad.iter().zip(&grad).map(|(a, b)| a - b).collect();
            let sy = dot(&s, &y);
            if sy > 1e-12 * math::sqrt(dot(&s, &s) * dot(&y, &y)) {
                if fresh {
                    let scale = sy / dot(&y, &y);
                    inverse.iter_mut().for_each(|v| *v *= scale);
                }
                bfgs_update(&mut inverse, &s, &y, sy);
                fresh = false;
            }
            x = next;
            fx = e.objective;
            current = e;
            grad = next_grad;
            trace.push(math::exp(3.0 * fx));
            history.push(fx);
            let w = options.stall_window;
            if history.len() > w && 3.0 * (history[history.len() - 1 - w] - fx) < options.stall_tolerance {
                stalled = true;
                break;
            }
            if iterations % 25 == 0 && self.needs_retraction(&x) {
                if let Some(y) = self.retract(&x) {
                    x = y;
                    grad = self.gradient(&x, fx);
                    inverse = identity(n);
                    fresh = true;
                }
            }
        }
        if current.min_edge_ratio < 1e-4 {
            return Err(Error::CombinatoricsBroken(format!(
                "restart {index}: an edge shrank to {:.2e} of the diameter at unit-volume area {:.6}",
                current.min_edge_ratio,
                math::exp(fx)
            )));
        }
        if !stalled {
            return Err(Error::NoConvergence(format!("restart {index}: {iterations} iterations without settling")));
        }
        let planes = self.planes(&x);
        let embedding = TypeEmbedding::new(self.ty.clone(), planes)
            .map_err(|e| Error::NoConvergence(format!("restart {index}: {e}")))?;
        let polyhedron = canonical_placement(&embedding.realize()?)?;
        let m = polyhedron.measures()?;
        let lindelof = if self.require_tangency {
            let report = lindelof_check(&polyhedron)?;
            if report.max_residual() >= options.lindelof_tolerance {
                return Err(Error::NoConvergence(format!(
                    "restart {index}: Lindelöf residual {:.2e} after {iterations} iterations",
                    report.max_residual()
                )));
            }
            Some(report)
        } else {
            None
        };
        Ok(OptimizeOutcome {
            surface_area: m.surface_area,
            cost: m.cost,
            polyhedron,
            trace,
            iterations,
            restart: index,
            lindelof,
        })
    }
}

fn average(elements: &[Mat3]) -> Mat3 {
    let mut sum = [[0.0; 3]; 3];
    for m in elements {
        for i in 0..3 {
            for j in 0..3 {
                sum[i][j] += m.0[i][j];
            }
        }
    }
    Mat3(sum).scaled(1.0 / elements.len() as f64)
}

fn push_orthonormal(basis: &mut Vec<Point3>, v: Point3) {
    let mut v = v;
    for _ in 0..2 {
        for b in basis.iter() {
            v -= *b * b.dot(v);
        }
    }
    if v.norm() > 1e-9 {
        basis.push(v.normalized());
    }
}

fn identity(n: usize) -> Vec<f64> {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    m
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn matvec(m: &[f64], v: &[f64]) -> Vec<f64> {
    let n = v.len();
    (0..n).map(|i| dot(&m[i * n..(i + 1) * n], v)).collect()
}

/// Inverse-Hessian update `H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T`.
fn bfgs_update(h: &mut [f64], s: &[f64], y: &[f64], sy: f64) {
    let n = s.len();
    let rho = 1.0 / sy;
    let hy = matvec(h, y);
    let yhy = dot(y, &hy);
    for i in 0..n {
        for j in 0..n {
            h[i * n + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
        }
    }
}
