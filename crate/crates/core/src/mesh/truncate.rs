use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{cycle_pairs, Polyhedron};
use crate::error::{Error, Result};
use crate::geometry::Point3;
use crate::tolerance;

/// Cut vertex `v` off with the plane perpendicular to [`cut_axis`], at
/// distance `depth` from `v`.
///
/// The vertex is replaced by the polygon where the plane meets its incident
/// edges; vertex `v` is removed, later indices shift down by one, and the
/// new vertices are appended in the cyclic order of the new face.
pub fn truncate_vertex(p: &Polyhedron, v: usize, depth: f64) -> Result<Polyhedron> {
    p.ensure_valid()?;
    let n = p.vertex_count();
    if v >= n {
        return Err(Error::VertexOutOfRange { index: v, len: n });
    }
    if !(depth >= 0.0) || !depth.is_finite() {
        return Err(Error::Precondition(alloc::format!("cut depth must be finite and non-negative, got {depth}")));
    }
    let apex = p.vertices[v];
    let tol = tolerance::CONVEXITY_REL * p.diameter();

    // Around v: for each incident face, its predecessor and successor of v.
    let mut corners: Vec<(usize, usize, usize)> = Vec::new();
    for (fi, f) in p.faces.iter().enumerate() {
        if let Some(k) = f.iter().position(|&x| x == v) {
            corners.push((fi, f[(k + f.len() - 1) % f.len()], f[(k + 1) % f.len()]));
        }
    }
    if !strictly_convex_at(p, v, &corners, tol) {
        return Err(Error::NonConvexVertex(v));
    }
    if depth == 0.0 {
        return Ok(p.clone());
    }

    let axis = axis_at(p, v, &corners);
    for (w, &x) in p.vertices.iter().enumerate() {
        if w != v && axis.dot(x - apex) <= depth {
            return Err(Error::CutTooDeep { depth, blocking: w });
        }
    }

    let renumber = |x: usize| if x > v { x - 1 } else { x };
    let mut vertices: Vec<Point3> = p.vertices.iter().enumerate().filter(|&(i, _)| i != v).map(|(_, &x)| x).collect();
    let mut cut_point: BTreeMap<usize, usize> = BTreeMap::new();
    let mut cut = |w: usize, vertices: &mut Vec<Point3>| -> usize {
        *cut_point.entry(w).or_insert_with(|| {
            let e = p.vertices[w] - apex;
            vertices.push(apex + e * (depth / axis.dot(e)));
            vertices.len() - 1
        })
    };

    let mut faces: Vec<Vec<usize>> = Vec::with_capacity(p.faces.len() + 1);
    let mut link: BTreeMap<usize, usize> = BTreeMap::new();
    for (fi, f) in p.faces.iter().enumerate() {
        let mut out = Vec::with_capacity(f.len() + 1);
        for (a, b) in cycle_pairs(f) {
            if a == v {
                continue;
            }
            out.push(renumber(a));
            if b == v {
                let (_, _, succ) = *corners.iter().find(|c| c.0 == fi).unwrap();
                let qa = cut(a, &mut vertices);
                let qb = cut(succ, &mut vertices);
                out.push(qa);
                out.push(qb);
                link.insert(qb, qa);
            }
        }
        faces.push(out);
    }
    // The cap traverses each shared edge q_a -> q_b backwards.
    let start = *link.keys().next().unwrap();
    let mut cap = alloc::vec![start];
    let mut cur = link[&start];
    while cur != start {
        cap.push(cur);
        cur = link[&cur];
    }
    faces.push(cap);
    Polyhedron::try_new(vertices, faces)
}

/// Direction into the solid along which vertex `v` is cut: the normalized
/// sum of unit vectors along its incident edges, or, when some incident
/// edge is perpendicular to that sum (every vertex of the truncated
/// octahedron), the inward sum of the incident face normals, which every
/// incident edge of a strictly convex vertex leans along.
pub fn cut_axis(p: &Polyhedron, v: usize) -> Result<Point3> {
    p.ensure_valid()?;
    if v >= p.vertex_count() {
        return Err(Error::VertexOutOfRange { index: v, len: p.vertex_count() });
    }
    let mut corners: Vec<(usize, usize, usize)> = Vec::new();
    for (fi, f) in p.faces.iter().enumerate() {
        if let Some(k) = f.iter().position(|&x| x == v) {
            corners.push((fi, f[(k + f.len() - 1) % f.len()], f[(k + 1) % f.len()]));
        }
    }
    if !strictly_convex_at(p, v, &corners, tolerance::CONVEXITY_REL * p.diameter()) {
        return Err(Error::NonConvexVertex(v));
    }
    Ok(axis_at(p, v, &corners))
}

/// Smallest cosine between the edge-sum axis and an incident edge for the
/// edge-sum axis to be used.
const EDGE_SUM_MIN_COS: f64 = 1e-6;

fn axis_at(p: &Polyhedron, v: usize, corners: &[(usize, usize, usize)]) -> Point3 {
    let apex = p.vertices[v];
    let edges: Vec<Point3> = corners.iter().map(|&(_, _, b)| (p.vertices[b] - apex).normalized()).collect();
    let axis = edges.iter().fold(Point3::ORIGIN, |s, &e| s + e).normalized();
    if edges.iter().all(|e| axis.dot(*e) > EDGE_SUM_MIN_COS) {
        return axis;
    }
    corners.iter().fold(Point3::ORIGIN, |s, &(f, _, _)| s - p.face_normal(f)).normalized()
}

fn strictly_convex_at(p: &Polyhedron, v: usize, corners: &[(usize, usize, usize)], tol: f64) -> bool {
    let apex = p.vertices[v];
    let mut ring: Vec<usize> = Vec::new();
    for &(f, _, _) in corners {
        ring.extend(p.faces[f].iter().copied().filter(|&x| x != v));
    }
    corners.iter().all(|&(f, a, b)| {
        let n = p.face_normal(f);
        let turn = (apex - p.vertices[a]).cross(p.vertices[b] - apex).dot(n);
        turn > tol * tol && ring.iter().filter(|w| !p.faces[f].contains(w)).all(|&w| n.dot(p.vertices[w] - apex) < -tol)
    })
}
