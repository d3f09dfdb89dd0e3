//! Closed polyhedral surfaces: validation, measurement, convex hulls,
//! inspheres, dihedral angles and vertex truncation.

mod hull;
pub(crate) mod insphere;
pub mod lp;
mod measure;
mod truncate;

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::geometry::{symmetric_eigen, Mat3, Point3};
use crate::tolerance;

pub use hull::convex_hull;
pub use insphere::{insphere, Insphere};
pub use measure::{dihedral_angles, Measures};
pub use truncate::{cut_axis, truncate_vertex};

/// Undirected edge key with `0 <= a < b`.
pub type Edge = (usize, usize);

#[inline]
pub(crate) fn edge_key(a: usize, b: usize) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A polyhedral surface given by vertex coordinates and outward-oriented
/// face cycles.
///
/// Construction does not validate; operations that need the invariants
/// call [`Polyhedron::validate`] and fail with [`Error::InvalidPolyhedron`].
#[derive(Debug, Clone, PartialEq)]
pub struct Polyhedron {
    vertices: Vec<Point3>,
    faces: Vec<Vec<usize>>,
}

/// One violated invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NonFiniteVertex { vertex: usize },
    FaceTooSmall { face: usize, len: usize },
    IndexOutOfRange { face: usize, index: usize },
    RepeatedVertex { face: usize, vertex: usize },
    EdgeMultiplicity { edge: Edge, count: usize },
    NonOrientable { face: usize },
    OrientationMismatch { face: usize },
    EulerCharacteristic { vertices: usize, edges: usize, faces: usize },
    NonPlanar { face: usize, deviation: f64, tolerance: f64 },
    NonPositiveVolume { volume: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFiniteVertex { vertex } => write!(f, "vertex {vertex} has a non-finite coordinate"),
            Violation::FaceTooSmall { face, len } => write!(f, "face {face} has {len} distinct vertices (need >= 3)"),
            Violation::IndexOutOfRange { face, index } => write!(f, "face {face} references missing vertex {index}"),
            Violation::RepeatedVertex { face, vertex } => write!(f, "face {face} repeats vertex {vertex}"),
            Violation::EdgeMultiplicity { edge, count } => {
                write!(f, "edge ({}, {}) lies in {count} faces (need 2)", edge.0, edge.1)
            }
            Violation::NonOrientable { face } => write!(f, "face {face} cannot be oriented consistently"),
            Violation::OrientationMismatch { face } => {
                write!(f, "face {face} is oriented against its neighbours")
            }
            Violation::EulerCharacteristic { vertices, edges, faces } => write!(
                f,
                "Euler characteristic V - E + F = {vertices} - {edges} + {faces} = {} (need 2)",
                *vertices as i64 - *edges as i64 + *faces as i64
            ),
            Violation::NonPlanar { face, deviation, tolerance } => {
                write!(f, "face {face} deviates {deviation:.3e} from its plane (tolerance {tolerance:.3e})")
            }
            Violation::NonPositiveVolume { volume } => write!(f, "signed volume {volume} is not positive"),
        }
    }
}

/// The list of violated invariants; empty for a valid polyhedron.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl Polyhedron {
    pub fn new(vertices: Vec<Point3>, faces: Vec<Vec<usize>>) -> Self {
        Polyhedron { vertices, faces }
    }

    /// Builds and validates in one step.
    pub fn try_new(vertices: Vec<Point3>, faces: Vec<Vec<usize>>) -> Result<Self> {
        let p = Polyhedron::new(vertices, faces);
        p.ensure_valid()?;
        Ok(p)
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn into_parts(self) -> (Vec<Point3>, Vec<Vec<usize>>) {
        (self.vertices, self.faces)
    }

    /// All undirected edges in sorted order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut set = BTreeMap::new();
        for f in &self.faces {
            for (a, b) in cycle_pairs(f) {
                set.insert(edge_key(a, b), ());
            }
        }
        set.into_keys().collect()
    }

    /// Number of faces meeting at each vertex.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for f in &self.faces {
            for &v in f {
                if v < deg.len() {
                    deg[v] += 1;
                }
            }
        }
        deg
    }

    /// Maximum pairwise vertex distance.
    pub fn diameter(&self) -> f64 {
        let mut d2: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d2 = d2.max((*a - *b).norm_squared());
            }
        }
        crate::math::sqrt(d2)
    }

    pub fn vertex_centroid(&self) -> Point3 {
        let n = self.vertices.len().max(1) as f64;
        self.vertices.iter().fold(Point3::ORIGIN, |acc, &p| acc + p) / n
    }

    /// Half the sum of fan-triangle cross products; its norm is the face
    /// area and its direction the outward normal.
    pub fn face_vector_area(&self, face: usize) -> Point3 {
        polygon_vector_area(&self.vertices, &self.faces[face])
    }

    pub fn face_area(&self, face: usize) -> f64 {
        self.face_vector_area(face).norm()
    }

    pub fn face_normal(&self, face: usize) -> Point3 {
        self.face_vector_area(face).normalized()
    }

    /// Outward unit normal and offset `d` with the plane `n . x = d`.
    pub fn face_plane(&self, face: usize) -> (Point3, f64) {
        let n = self.face_normal(face);
        let f = &self.faces[face];
        let c = f.iter().fold(Point3::ORIGIN, |acc, &i| acc + self.vertices[i]) / f.len() as f64;
        (n, n.dot(c))
    }

    /// Area centroid of a face polygon.
    pub fn face_centroid(&self, face: usize) -> Point3 {
        polygon_area_centroid(&self.vertices, &self.faces[face])
    }

    /// Checks every invariant and lists the ones that fail.
    pub fn validate(&self) -> ValidationReport {
        let mut out = Vec::new();
        let nv = self.vertices.len();

        for (i, p) in self.vertices.iter().enumerate() {
            if !p.is_finite() {
                out.push(Violation::NonFiniteVertex { vertex: i });
            }
        }

        let mut faces_ok = true;
        for (fi, f) in self.faces.iter().enumerate() {
            if let Some(&bad) = f.iter().find(|&&v| v >= nv) {
                out.push(Violation::IndexOutOfRange { face: fi, index: bad });
                faces_ok = false;
                continue;
            }
            let mut seen = f.clone();
            seen.sort_unstable();
            if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
                out.push(Violation::RepeatedVertex { face: fi, vertex: w[0] });
                faces_ok = false;
            }
            seen.dedup();
            if seen.len() < 3 {
                out.push(Violation::FaceTooSmall { face: fi, len: seen.len() });
                faces_ok = false;
            }
        }
        if !faces_ok {
            return ValidationReport { violations: out };
        }

        let topo = check_surface_topology(nv, &self.faces);
        let topology_ok = topo.is_empty();
        out.extend(topo);

        if self.vertices.iter().all(|p| p.is_finite()) {
            let tol = tolerance::PLANARITY_REL * self.diameter();
            for fi in 0..self.faces.len() {
                let dev = self.planarity_deviation(fi);
                if dev > tol {
                    out.push(Violation::NonPlanar { face: fi, deviation: dev, tolerance: tol });
                }
            }
            if topology_ok {
                let vol = signed_volume(&self.vertices, &self.faces);
                if !(vol > 0.0) {
                    out.push(Violation::NonPositiveVolume { volume: vol });
                }
            }
        }
        ValidationReport { violations: out }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let r = self.validate();
        if r.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidPolyhedron(r))
        }
    }

    /// Maximum distance of a face's vertices from its least-squares plane.
    pub fn planarity_deviation(&self, face: usize) -> f64 {
        let f = &self.faces[face];
        let pts: Vec<Point3> = f.iter().map(|&i| self.vertices[i]).collect();
        let c = pts.iter().fold(Point3::ORIGIN, |a, &p| a + p) / pts.len() as f64;
        let mut cov = [[0.0; 3]; 3];
        for p in &pts {
            let d = (*p - c).to_array();
            for i in 0..3 {
                for j in 0..3 {
                    cov[i][j] += d[i] * d[j];
                }
            }
        }
        let (_, vecs) = symmetric_eigen(&Mat3(cov));
        let n = vecs[0];
        pts.iter().map(|p| crate::math::abs((*p - c).dot(n))).fold(0.0, f64::max)
    }

    /// Fails with [`Error::NonConvex`] unless every vertex lies on the inner
    /// side of every face plane (within tolerance).
    pub fn ensure_convex(&self) -> Result<()> {
        let tol = tolerance::CONVEXITY_REL * self.diameter();
        for fi in 0..self.faces.len() {
            let (n, d) = self.face_plane(fi);
            for (vi, p) in self.vertices.iter().enumerate() {
                let excess = n.dot(*p) - d;
                if excess > tol {
                    return Err(Error::NonConvex { face: fi, vertex: vi, excess });
                }
            }
        }
        Ok(())
    }

    pub fn is_convex(&self) -> bool {
        self.ensure_convex().is_ok()
    }

    /// Uniform scaling about the origin.
    pub fn scaled(&self, factor: f64) -> Polyhedron {
        Polyhedron { vertices: self.vertices.iter().map(|&p| p * factor).collect(), faces: self.faces.clone() }
    }

    pub fn translated(&self, offset: Point3) -> Polyhedron {
        Polyhedron { vertices: self.vertices.iter().map(|&p| p + offset).collect(), faces: self.faces.clone() }
    }

    /// Applies a linear map to every vertex; face cycles are reversed when
    /// the map flips orientation so normals stay outward.
    pub fn transformed(&self, m: &Mat3) -> Polyhedron {
        let flip = m.determinant() < 0.0;
        Polyhedron {
            vertices: self.vertices.iter().map(|&p| m.mul_vec(p)).collect(),
            faces: self
                .faces
                .iter()
                .map(|f| {
                    let mut g = f.clone();
                    if flip {
                        g.reverse();
                    }
                    g
                })
                .collect(),
        }
    }

    /// Merges vertices closer than `tol` and drops vertices no face uses.
    pub fn compacted(&self, tol: f64) -> Polyhedron {
        let mut remap = vec![usize::MAX; self.vertices.len()];
        let mut kept: Vec<Point3> = Vec::new();
        let used: Vec<bool> = {
            let mut u = vec![false; self.vertices.len()];
            for f in &self.faces {
                for &v in f {
                    u[v] = true;
                }
            }
            u
        };
        for (i, p) in self.vertices.iter().enumerate() {
            if !used[i] {
                continue;
            }
            if let Some(j) = kept.iter().position(|q| q.distance(*p) <= tol) {
                remap[i] = j;
            } else {
                remap[i] = kept.len();
                kept.push(*p);
            }
        }
        let faces = self
            .faces
            .iter()
            .map(|f| {
                let mut g: Vec<usize> = f.iter().map(|&v| remap[v]).collect();
                g.dedup();
                if g.len() > 1 && g.first() == g.last() {
                    g.pop();
                }
                g
            })
            .collect();
        Polyhedron { vertices: kept, faces }
    }
}

pub(crate) fn cycle_pairs(f: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..f.len()).map(move |i| (f[i], f[(i + 1) % f.len()]))
}

pub(crate) fn polygon_vector_area(vertices: &[Point3], f: &[usize]) -> Point3 {
    let p0 = vertices[f[0]];
    let mut s = Point3::ORIGIN;
    for i in 1..f.len().saturating_sub(1) {
        s += (vertices[f[i]] - p0).cross(vertices[f[i + 1]] - p0);
    }
    s * 0.5
}

pub(crate) fn polygon_area_centroid(vertices: &[Point3], f: &[usize]) -> Point3 {
    let n = polygon_vector_area(vertices, f).normalized();
    let p0 = vertices[f[0]];
    let mut acc = Point3::ORIGIN;
    let mut total = 0.0;
    for i in 1..f.len() - 1 {
        let (a, b) = (vertices[f[i]], vertices[f[i + 1]]);
        let w = (a - p0).cross(b - p0).dot(n) * 0.5;
        acc += (p0 + a + b) * (w / 3.0);
        total += w;
    }
    if total == 0.0 {
        f.iter().fold(Point3::ORIGIN, |s, &i| s + vertices[i]) / f.len() as f64
    } else {
        acc / total
    }
}

/// Signed volume by the divergence theorem over fan triangles.
pub(crate) fn signed_volume(vertices: &[Point3], faces: &[Vec<usize>]) -> f64 {
    let mut v = 0.0;
    for f in faces {
        let p0 = vertices[f[0]];
        for i in 1..f.len().saturating_sub(1) {
            v += p0.dot(vertices[f[i]].cross(vertices[f[i + 1]]));
        }
    }
    v / 6.0
}

pub(crate) fn surface_area(vertices: &[Point3], faces: &[Vec<usize>]) -> f64 {
    faces.iter().map(|f| polygon_vector_area(vertices, f).norm()).sum()
}

/// Manifold, orientation and Euler checks shared with combinatorial types.
pub(crate) fn check_surface_topology(nv: usize, faces: &[Vec<usize>]) -> Vec<Violation> {
    let mut out = Vec::new();
    // undirected edge -> list of (face, forward?) where forward means a < b traversal
    let mut uses: BTreeMap<Edge, Vec<(usize, bool)>> = BTreeMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for (a, b) in cycle_pairs(f) {
            uses.entry(edge_key(a, b)).or_default().push((fi, a < b));
        }
    }
    let mut manifold = true;
    for (e, u) in &uses {
        if u.len() != 2 {
            out.push(Violation::EdgeMultiplicity { edge: *e, count: u.len() });
            manifold = false;
        }
    }

    if manifold {
        // Propagate orientation parity across shared edges.
        let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); faces.len()];
        for u in uses.values() {
            let ((f, df), (g, dg)) = (u[0], u[1]);
            // same traversal direction -> the two faces need opposite parity
            let flip = df == dg;
            adj[f].push((g, flip));
            adj[g].push((f, flip));
        }
        let mut parity: Vec<Option<bool>> = vec![None; faces.len()];
        let mut nonorientable = None;
        for start in 0..faces.len() {
            if parity[start].is_some() {
                continue;
            }
            let mut comp = vec![start];
            parity[start] = Some(false);
            let mut q = VecDeque::from([start]);
            while let Some(f) = q.pop_front() {
                let pf = parity[f].unwrap_or(false);
                for &(g, flip) in &adj[f] {
                    let want = pf ^ flip;
                    match parity[g] {
                        None => {
                            parity[g] = Some(want);
                            comp.push(g);
                            q.push_back(g);
                        }
                        Some(pg) if pg != want => {
                            nonorientable.get_or_insert(g);
                        }
                        _ => {}
                    }
                }
            }
            if nonorientable.is_none() {
                let flipped: Vec<usize> = comp.iter().copied().filter(|&f| parity[f] == Some(true)).collect();
                // the minority parity class is the misoriented one
                let minority: Vec<usize> = if 2 * flipped.len() <= comp.len() {
                    flipped
                } else {
                    comp.iter().copied().filter(|&f| parity[f] == Some(false)).collect()
                };
                let mut minority = minority;
                minority.sort_unstable();
                out.extend(minority.into_iter().map(|face| Violation::OrientationMismatch { face }));
            }
        }
        if let Some(face) = nonorientable {
            out.push(Violation::NonOrientable { face });
        }
    }

    let e = uses.len();
    if nv as i64 - e as i64 + faces.len() as i64 != 2 {
        out.push(Violation::EulerCharacteristic { vertices: nv, edges: e, faces: faces.len() });
    }
    out
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn cube(side: f64) -> Polyhedron {
        let s = side;
        let v = vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(s, 0.0, 0.0),
            Point3::new(s, s, 0.0),
            Point3::new(0.0, s, 0.0),
            Point3::new(0.0, 0.0, s),
            Point3::new(s, 0.0, s),
            Point3::new(s, s, s),
            Point3::new(0.0, s, s),
        ];
        let f = vec![
            vec![0, 3, 2, 1],
            vec![4, 5, 6, 7],
            vec![0, 1, 5, 4],
            vec![1, 2, 6, 5],
            vec![2, 3, 7, 6],
            vec![3, 0, 4, 7],
        ];
        Polyhedron::new(v, f)
    }

    pub fn regular_tetrahedron(edge: f64) -> Polyhedron {
        let k = edge / (2.0 * crate::math::sqrt(2.0));
        let v = vec![
            Point3::new(1.0, 1.0, 1.0) * k,
            Point3::new(1.0, -1.0, -1.0) * k,
            Point3::new(-1.0, 1.0, -1.0) * k,
            Point3::new(-1.0, -1.0, 1.0) * k,
        ];
        let f = vec![vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]];
        Polyhedron::new(v, f)
    }

    /// Unit cube whose top face is replaced by four triangles meeting at an
    /// inward apex.
    pub fn dented_cube() -> Polyhedron {
        let (mut v, mut f) = cube(1.0).into_parts();
        v.push(Point3::new(0.5, 0.5, 0.5));
        f.remove(1);
        f.extend([vec![4, 5, 8], vec![5, 6, 8], vec![6, 7, 8], vec![7, 4, 8]]);
        Polyhedron::new(v, f)
    }

    pub fn boxed(a: f64, b: f64, c: f64) -> Polyhedron {
        let m = Mat3([[a, 0.0, 0.0], [0.0, b, 0.0], [0.0, 0.0, c]]);
        cube(1.0).transformed(&m)
    }
}
