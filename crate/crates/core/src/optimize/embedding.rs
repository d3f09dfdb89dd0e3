use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::CombinatorialType;
use crate::error::{Error, Result};
use crate::geometry::{Mat3, Point3};
use crate::mesh::Polyhedron;
use crate::{math, tolerance};

/// The half-space `normal . x <= offset` with a unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane {
    pub normal: Point3,
    pub offset: f64,
}

impl Plane {
    /// Normalizes `normal`, scaling `offset` to match.
    pub fn new(normal: Point3, offset: f64) -> Plane {
        let len = normal.norm();
        Plane { normal: normal / len, offset: offset / len }
    }
}

/// A combinatorial type realized by one plane per face; vertices are the
/// intersections of the planes of their incident faces.
#[derive(Debug, Clone, PartialEq)]
pub struct TypeEmbedding {
    ty: CombinatorialType,
    planes: Vec<Plane>,
}

/// Result of intersecting the face planes of a type.
pub(crate) struct Realized {
    pub polyhedron: Polyhedron,
    /// Sum of squared plane misfits at vertices of degree above three,
    /// relative to the polyhedron's size.
    pub misfit: f64,
}

impl TypeEmbedding {
    pub fn new(ty: CombinatorialType, planes: Vec<Plane>) -> Result<Self> {
        if planes.len() != ty.face_count() {
            return Err(Error::Precondition(format!("{} planes given for {} faces", planes.len(), ty.face_count())));
        }
        let e = TypeEmbedding { ty, planes };
        e.realize()?;
        Ok(e)
    }

    /// Face planes of a convex polyhedron.
    pub fn from_polyhedron(p: &Polyhedron) -> Result<Self> {
        p.ensure_convex()?;
        let planes = (0..p.face_count())
            .map(|f| {
                let (n, d) = p.face_plane(f);
                Plane { normal: n, offset: d }
            })
            .collect();
        TypeEmbedding::new(CombinatorialType::of(p), planes)
    }

    pub fn combinatorial_type(&self) -> &CombinatorialType {
        &self.ty
    }

    pub fn planes(&self) -> &[Plane] {
        &self.planes
    }

    /// The polyhedron cut out by the planes, checked to carry the type.
    pub fn realize(&self) -> Result<Polyhedron> {
        let r = realize_planes(&self.ty, &self.planes)?;
        let scale = r.polyhedron.diameter();
        if r.misfit > tolerance::CONCURRENCY_REL * scale {
            return Err(Error::CombinatoricsBroken(format!(
                "planes at a vertex of degree above three miss each other by {:.3e}",
                r.misfit
            )));
        }
        Ok(r.polyhedron)
    }

    /// Seed embedding for a type with every vertex of degree three.
    ///
    /// The vertex graph is drawn in the plane by a Tutte barycentric
    /// embedding with the largest face outside, lifted to the unit sphere
    /// by inverse stereographic projection (scaled so the lifted points are
    /// balanced about the equator), and each face plane is taken tangent to
    /// the unit sphere along the averaged face normal. A few rounds of edge
    /// tangency and face flattening follow when the first lift is not good
    /// enough. `seed = 0` returns this embedding; other seeds perturb the
    /// normals randomly and keep the first perturbation that still carries
    /// the type.
    pub fn tangential_seed(ty: &CombinatorialType, seed: u64) -> Result<Self> {
        if ty.vertex_degrees().iter().any(|&d| d != 3) {
            return Err(Error::Precondition(
                "automatic seeding needs every vertex to have degree three; supply a seed polyhedron".into(),
            ));
        }
        let mut points = tutte_sphere(ty)?;
        let mut base = None;
        for round in 0..8 {
            for flip in [1.0, -1.0] {
                let planes = face_normals(ty, &points)
                    .into_iter()
                    .map(|n| Plane { normal: Point3::new(flip * n.x, n.y, n.z), offset: 1.0 })
                    .collect();
                if let Ok(e) = TypeEmbedding::new(ty.clone(), planes) {
                    base = Some(e);
                    break;
                }
            }
            if base.is_some() {
                break;
            }
            canonicalize(ty, &mut points, 25 << round);
        }
        let base = base.ok_or_else(|| Error::Degenerate("no seed embedding found; supply a seed polyhedron".into()))?;
        if seed == 0 {
            return Ok(base);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut amplitude = 0.3;
        for _ in 0..40 {
            let planes = base
                .planes
                .iter()
                .map(|p| {
                    let jitter = random_unit(&mut rng) * (amplitude * rng.random_range(0.0..1.0));
                    Plane { normal: (p.normal + jitter).normalized(), offset: 1.0 }
                })
                .collect();
            if let Ok(e) = TypeEmbedding::new(ty.clone(), planes) {
                return Ok(e);
            }
            amplitude *= 0.85;
        }
        Ok(base)
    }
}

/// Tutte drawing with the largest face outside, lifted onto the unit sphere.
fn tutte_sphere(ty: &CombinatorialType) -> Result<Vec<Point3>> {
    let nv = ty.vertex_count();
    let mut neighbours = vec![Vec::new(); nv];
    for f in ty.faces() {
        for k in 0..f.len() {
            let (a, b) = (f[k], f[(k + 1) % f.len()]);
            if !neighbours[a].contains(&b) {
                neighbours[a].push(b);
                neighbours[b].push(a);
            }
        }
    }
    let outer = (0..ty.face_count()).max_by_key(|&f| (ty.faces()[f].len(), usize::MAX - f)).unwrap_or(0);
    let ring = &ty.faces()[outer];
    let mut plane = vec![[0.0f64; 2]; nv];
    let mut fixed = vec![false; nv];
    for (i, &v) in ring.iter().enumerate() {
        // Clockwise, so the outer face is seen from below after lifting.
        let a = -2.0 * core::f64::consts::PI * i as f64 / ring.len() as f64;
        plane[v] = [math::cos(a), math::sin(a)];
        fixed[v] = true;
    }
    let free: Vec<usize> = (0..nv).filter(|&v| !fixed[v]).collect();
    let mut slot = vec![usize::MAX; nv];
    for (i, &v) in free.iter().enumerate() {
        slot[v] = i;
    }
    let m = free.len();
    let mut system = vec![vec![0.0; m + 2]; m];
    for (i, &v) in free.iter().enumerate() {
        system[i][i] = neighbours[v].len() as f64;
        for &w in &neighbours[v] {
            if fixed[w] {
                system[i][m] += plane[w][0];
                system[i][m + 1] += plane[w][1];
            } else {
                system[i][slot[w]] -= 1.0;
            }
        }
    }
    let solution = gauss_solve(system, 2).ok_or_else(|| Error::Degenerate("vertex graph is not 3-connected".into()))?;
    for (i, &v) in free.iter().enumerate() {
        plane[v] = [solution[i][0], solution[i][1]];
    }
    let lift = |scale: f64| -> Vec<Point3> {
        plane
            .iter()
            .map(|&[x, y]| {
                let (x, y) = (x * scale, y * scale);
                let r2 = x * x + y * y;
                Point3::new(2.0 * x / (1.0 + r2), 2.0 * y / (1.0 + r2), (r2 - 1.0) / (1.0 + r2))
            })
            .collect()
    };
    let (mut lo, mut hi) = (1e-3f64, 1e3f64);
    for _ in 0..100 {
        let mid = math::sqrt(lo * hi);
        let mean_height: f64 = lift(mid).iter().map(|p| p.z).sum();
        if mean_height < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lift(math::sqrt(lo * hi)))
}

fn face_normals(ty: &CombinatorialType, points: &[Point3]) -> Vec<Point3> {
    ty.faces().iter().map(|f| crate::mesh::polygon_vector_area(points, f).normalized()).collect()
}

/// Nudges edges towards tangency with the unit sphere and faces towards
/// flatness.
fn canonicalize(ty: &CombinatorialType, points: &mut [Point3], rounds: usize) {
    let mut edges = Vec::new();
    for f in ty.faces() {
        for k in 0..f.len() {
            let (a, b) = (f[k], f[(k + 1) % f.len()]);
            if a < b {
                edges.push((a, b));
            }
        }
    }
    for _ in 0..rounds {
        let mut push = vec![Point3::ORIGIN; points.len()];
        for &(a, b) in &edges {
            let d = points[b] - points[a];
            let t = -points[a].dot(d) / d.norm_squared();
            let c = points[a] + d * t;
            let nudge = c * (1.0 - c.norm());
            push[a] += nudge;
            push[b] += nudge;
        }
        for (p, q) in points.iter_mut().zip(&push) {
            *p += *q * 0.2;
        }
        let centre = points.iter().fold(Point3::ORIGIN, |acc, &p| acc + p) / points.len() as f64;
        points.iter_mut().for_each(|p| *p -= centre);
        let mut push = vec![Point3::ORIGIN; points.len()];
        for f in ty.faces() {
            let n = crate::mesh::polygon_vector_area(points, f).normalized();
            let c = f.iter().fold(Point3::ORIGIN, |acc, &v| acc + points[v]) / f.len() as f64;
            for &v in f {
                push[v] += n * n.dot(c - points[v]);
            }
        }
        for (p, q) in points.iter_mut().zip(&push) {
            *p += *q * 0.2;
        }
    }
}

/// Gaussian elimination with partial pivoting on an augmented system with
/// `rhs` right-hand-side columns.
fn gauss_solve(mut a: Vec<Vec<f64>>, rhs: usize) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| math::abs(a[i][col]).total_cmp(&math::abs(a[j][col])))?;
        if math::abs(a[pivot][col]) < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        for row in 0..n {
            if row != col {
                let factor = a[row][col] / a[col][col];
                if factor != 0.0 {
                    for k in col..n + rhs {
                        a[row][k] -= factor * a[col][k];
                    }
                }
            }
        }
    }
    Some((0..n).map(|i| (0..rhs).map(|k| a[i][n + k] / a[i][i]).collect()).collect())
}

pub(crate) fn random_unit<R: Rng>(rng: &mut R) -> Point3 {
    loop {
        let p = Point3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let n = p.norm();
        if n > 0.1 && n <= 1.0 {
            return p / n;
        }
    }
}

/// Intersects the face planes at every vertex and checks that the result
/// has the type's combinatorics: every vertex strictly inside the planes of
/// its non-incident faces, every face polygon strictly convex with the
/// plane's orientation, and no edge shorter than the degeneration threshold.
pub(crate) fn realize_planes(ty: &CombinatorialType, planes: &[Plane]) -> Result<Realized> {
    let incident = ty.vertex_faces();
    let mut vertices = Vec::with_capacity(ty.vertex_count());
    let mut misfit = 0.0;
    for (v, fs) in incident.iter().enumerate() {
        let x = if fs.len() == 3 {
            let m = Mat3::from_rows(planes[fs[0]].normal, planes[fs[1]].normal, planes[fs[2]].normal);
            let d = Point3::new(planes[fs[0]].offset, planes[fs[1]].offset, planes[fs[2]].offset);
            m.solve(d).ok_or_else(|| Error::CombinatoricsBroken(format!("planes at vertex {v} are dependent")))?
        } else {
            let mut m = [[0.0; 3]; 3];
            let mut rhs = Point3::ORIGIN;
            for &f in fs {
                let n = planes[f].normal.to_array();
                for i in 0..3 {
                    for j in 0..3 {
                        m[i][j] += n[i] * n[j];
                    }
                }
                rhs += planes[f].normal * planes[f].offset;
            }
            let x = Mat3(m)
                .solve(rhs)
                .ok_or_else(|| Error::CombinatoricsBroken(format!("planes at vertex {v} are dependent")))?;
            for &f in fs {
                let r = planes[f].normal.dot(x) - planes[f].offset;
                misfit += r * r;
            }
            x
        };
        if !x.is_finite() {
            return Err(Error::CombinatoricsBroken(format!("vertex {v} is at infinity")));
        }
        vertices.push(x);
    }
    let p = Polyhedron::new(vertices, ty.faces().to_vec());
    let diameter = p.diameter();
    if !(diameter > 0.0) {
        return Err(Error::CombinatoricsBroken("all vertices coincide".into()));
    }
    let tol = tolerance::CONVEXITY_REL * diameter;
    for (v, fs) in incident.iter().enumerate() {
        let x = p.vertices()[v];
        for (f, plane) in planes.iter().enumerate() {
            if !fs.contains(&f) && plane.normal.dot(x) - plane.offset > -tol {
                return Err(Error::CombinatoricsBroken(format!("vertex {v} reaches the plane of face {f}")));
            }
        }
    }
    let min_edge = tolerance::DEGENERATE_EDGE_REL * diameter;
    for (fi, f) in ty.faces().iter().enumerate() {
        let k = f.len();
        let n = planes[fi].normal;
        for i in 0..k {
            let (a, b, c) = (p.vertices()[f[i]], p.vertices()[f[(i + 1) % k]], p.vertices()[f[(i + 2) % k]]);
            if (b - a).norm() < min_edge {
                return Err(Error::CombinatoricsBroken(format!(
                    "edge ({}, {}) of face {fi} has collapsed",
                    f[i],
                    f[(i + 1) % k]
                )));
            }
            if (b - a).cross(c - b).dot(n) <= 0.0 {
                return Err(Error::CombinatoricsBroken(format!(
                    "face {fi} is not convex at vertex {}",
                    f[(i + 1) % k]
                )));
            }
        }
    }
    Ok(Realized { misfit: math::sqrt(misfit), polyhedron: p })
}
