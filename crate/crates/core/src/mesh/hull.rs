//! Quickhull in three dimensions followed by merging of coplanar triangles
//! into maximal planar faces.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::Polyhedron;
use crate::error::{Error, Result};
use crate::geometry::Point3;
use crate::tolerance;

struct Tri {
    v: [usize; 3],
    normal: Point3,
    offset: f64,
    outside: Vec<usize>,
    alive: bool,
}

impl Tri {
    fn new(points: &[Point3], v: [usize; 3]) -> Tri {
        let (a, b, c) = (points[v[0]], points[v[1]], points[v[2]]);
        let normal = (b - a).cross(c - a).normalized();
        Tri { v, normal, offset: normal.dot(a), outside: Vec::new(), alive: true }
    }

    fn distance(&self, p: Point3) -> f64 {
        self.normal.dot(p) - self.offset
    }

    fn directed_edges(&self) -> [(usize, usize); 3] {
        [(self.v[0], self.v[1]), (self.v[1], self.v[2]), (self.v[2], self.v[0])]
    }
}

/// Convex hull of a point set. Coplanar adjacent triangles are merged so a
/// cube's eight corners give six quadrilaterals. Interior points and points
/// in the relative interior of hull edges do not appear in the output,
/// which keeps the input order of the surviving points.
pub fn convex_hull(points: &[Point3]) -> Result<Polyhedron> {
    if points.len() < 4 {
        return Err(Error::Degenerate("convex hull needs at least 4 points".into()));
    }
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(Error::Degenerate(alloc::format!("point {i} is not finite")));
    }
    let scale = points.iter().fold(0.0f64, |m, p| m.max(p.max_abs())).max(f64::MIN_POSITIVE);
    let eps = 1e-12 * scale * 8.0;

    let seed = initial_simplex(points, eps)?;
    let mut tris: Vec<Tri> = Vec::new();
    let mut owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for k in 0..4 {
        let mut f = [seed[k], seed[(k + 1) % 4], seed[(k + 2) % 4]];
        let opposite = points[seed[(k + 3) % 4]];
        if Tri::new(points, f).distance(opposite) > 0.0 {
            f.swap(1, 2);
        }
        add_tri(&mut tris, &mut owner, Tri::new(points, f));
    }
    let initial: Vec<usize> = (0..points.len()).filter(|i| !seed.contains(i)).collect();
    assign(points, &mut tris, &(0..4).collect::<Vec<_>>(), initial, eps);

    while let Some(start) = tris.iter().position(|t| t.alive && !t.outside.is_empty()) {
        let eye = *tris[start]
            .outside
            .iter()
            .max_by(|&&i, &&j| tris[start].distance(points[i]).total_cmp(&tris[start].distance(points[j])))
            .expect("outside set is non-empty");
        let p = points[eye];

        // Flood the visible region from the starting face.
        let mut visible = vec![start];
        let mut seen = BTreeMap::new();
        seen.insert(start, true);
        let mut k = 0;
        while k < visible.len() {
            let f = visible[k];
            k += 1;
            for (a, b) in tris[f].directed_edges() {
                let g = owner[&(b, a)];
                if seen.contains_key(&g) {
                    continue;
                }
                let vis = tris[g].distance(p) > eps;
                seen.insert(g, vis);
                if vis {
                    visible.push(g);
                }
            }
        }
        let mut horizon = Vec::new();
        for &f in &visible {
            for (a, b) in tris[f].directed_edges() {
                let g = owner[&(b, a)];
                if !seen[&g] {
                    horizon.push((a, b));
                }
            }
        }
        let mut orphans = Vec::new();
        for &f in &visible {
            tris[f].alive = false;
            for (a, b) in tris[f].directed_edges() {
                if owner.get(&(a, b)) == Some(&f) {
                    owner.remove(&(a, b));
                }
            }
            orphans.append(&mut tris[f].outside);
        }
        let mut fresh = Vec::with_capacity(horizon.len());
        for (a, b) in horizon {
            fresh.push(add_tri(&mut tris, &mut owner, Tri::new(points, [a, b, eye])));
        }
        orphans.retain(|&i| i != eye);
        assign(points, &mut tris, &fresh, orphans, eps);
    }

    let live: Vec<&Tri> = tris.iter().filter(|t| t.alive).collect();
    merge_coplanar(points, &live, scale)
}

fn add_tri(tris: &mut Vec<Tri>, owner: &mut BTreeMap<(usize, usize), usize>, t: Tri) -> usize {
    let id = tris.len();
    for e in t.directed_edges() {
        owner.insert(e, id);
    }
    tris.push(t);
    id
}

fn assign(points: &[Point3], tris: &mut [Tri], candidates: &[usize], pts: Vec<usize>, eps: f64) {
    for i in pts {
        let mut best: Option<(usize, f64)> = None;
        for &f in candidates {
            let d = tris[f].distance(points[i]);
            if d > eps && best.is_none_or(|(_, bd)| d > bd) {
                best = Some((f, d));
            }
        }
        if let Some((f, _)) = best {
            tris[f].outside.push(i);
        }
    }
}

fn initial_simplex(points: &[Point3], eps: f64) -> Result<[usize; 4]> {
    let cmp = |a: &f64, b: &f64| a.total_cmp(b);
    let (mut i0, mut i1) = (0, 0);
    let mut widest = -1.0;
    for axis in 0..3 {
        let lo = (0..points.len()).min_by(|&a, &b| cmp(&points[a][axis], &points[b][axis])).unwrap();
        let hi = (0..points.len()).max_by(|&a, &b| cmp(&points[a][axis], &points[b][axis])).unwrap();
        let w = points[hi][axis] - points[lo][axis];
        if w > widest {
            widest = w;
            i0 = lo;
            i1 = hi;
        }
    }
    if widest <= eps {
        return Err(Error::Degenerate("all points coincide".into()));
    }
    let u = (points[i1] - points[i0]).normalized();
    let off_line = |i: usize| {
        let w = points[i] - points[i0];
        (w - u * w.dot(u)).norm()
    };
    let i2 = (0..points.len()).max_by(|&a, &b| cmp(&off_line(a), &off_line(b))).unwrap();
    if off_line(i2) <= eps {
        return Err(Error::Degenerate("points are collinear".into()));
    }
    let n = (points[i1] - points[i0]).cross(points[i2] - points[i0]).normalized();
    let off_plane = |i: usize| (points[i] - points[i0]).dot(n).abs();
    let i3 = (0..points.len()).max_by(|&a, &b| cmp(&off_plane(a), &off_plane(b))).unwrap();
    if off_plane(i3) <= eps {
        return Err(Error::Degenerate("points are coplanar".into()));
    }
    Ok([i0, i1, i2, i3])
}

fn merge_coplanar(points: &[Point3], tris: &[&Tri], scale: f64) -> Result<Polyhedron> {
    let tol = tolerance::PLANARITY_REL * scale;
    let mut owner = BTreeMap::new();
    for (k, t) in tris.iter().enumerate() {
        for e in t.directed_edges() {
            owner.insert(e, k);
        }
    }
    let mut parent: Vec<usize> = (0..tris.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (k, t) in tris.iter().enumerate() {
        for (a, b) in t.directed_edges() {
            let g = owner[&(b, a)];
            let far = tris[g].v.iter().copied().find(|&x| x != a && x != b).unwrap();
            let near = t.v.iter().copied().find(|&x| x != a && x != b).unwrap();
            if t.distance(points[far]).abs() <= tol && tris[g].distance(points[near]).abs() <= tol {
                let (ra, rb) = (find(&mut parent, k), find(&mut parent, g));
                parent[ra] = rb;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..tris.len() {
        let r = find(&mut parent, k);
        groups.entry(r).or_default().push(k);
    }

    let mut faces: Vec<Vec<usize>> = Vec::new();
    for members in groups.values() {
        let inside: BTreeMap<(usize, usize), ()> =
            members.iter().flat_map(|&k| tris[k].directed_edges()).map(|e| (e, ())).collect();
        let mut next: BTreeMap<usize, usize> = BTreeMap::new();
        for &(a, b) in inside.keys() {
            if !inside.contains_key(&(b, a)) {
                next.insert(a, b);
            }
        }
        let start = *next.keys().next().ok_or_else(|| Error::Degenerate("closed coplanar group".into()))?;
        let mut cycle = vec![start];
        let mut cur = next[&start];
        while cur != start {
            if cycle.len() > next.len() {
                return Err(Error::Degenerate("non-simple merged face boundary".into()));
            }
            cycle.push(cur);
            cur = *next.get(&cur).ok_or_else(|| Error::Degenerate("open merged face boundary".into()))?;
        }
        faces.push(cycle);
    }

    // Drop vertices lying on the straight part of every face that uses them.
    let mut keep = vec![true; points.len()];
    let mut used = vec![false; points.len()];
    for f in &faces {
        for &v in f {
            used[v] = true;
        }
    }
    for v in 0..points.len() {
        if !used[v] {
            continue;
        }
        let mut straight_everywhere = true;
        for f in faces.iter().filter(|f| f.contains(&v)) {
            let k = f.iter().position(|&x| x == v).unwrap();
            let prev = points[f[(k + f.len() - 1) % f.len()]];
            let succ = points[f[(k + 1) % f.len()]];
            let (d1, d2) = (points[v] - prev, succ - points[v]);
            if d1.cross(d2).norm() > tol * (d1.norm() + d2.norm()) {
                straight_everywhere = false;
                break;
            }
        }
        if straight_everywhere {
            keep[v] = false;
        }
    }
    for f in faces.iter_mut() {
        f.retain(|&v| keep[v]);
    }

    let mut remap = vec![usize::MAX; points.len()];
    let mut vertices = Vec::new();
    for v in 0..points.len() {
        if used[v] && keep[v] {
            remap[v] = vertices.len();
            vertices.push(points[v]);
        }
    }
    let faces = faces.into_iter().map(|f| f.into_iter().map(|v| remap[v]).collect()).collect();
    Polyhedron::try_new(vertices, faces)
}
