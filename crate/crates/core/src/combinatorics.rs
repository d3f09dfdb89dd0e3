//! Face vectors, combinatorial types, canonical codes and prism detection.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{closest_points_between_lines, Point3};
use crate::mesh::{check_surface_topology, cycle_pairs, Polyhedron};
use crate::tolerance;

/// Incidence defects reported for a combinatorial type. These are the
/// topological subset of the polyhedron invariants.
pub use crate::mesh::Violation as StructureViolation;

// ---------------------------------------------------------------------------
// Face vectors

/// Counts of `i`-gonal faces for `i = 3 ..= n - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceVector {
    counts: Vec<usize>,
}

impl FaceVector {
    pub fn new(counts: Vec<usize>) -> Self {
        FaceVector { counts }
    }

    /// `counts()[k]` is the number of `(k + 3)`-gons.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn count(&self, sides: usize) -> usize {
        sides.checked_sub(3).and_then(|k| self.counts.get(k)).copied().unwrap_or(0)
    }

    pub fn face_count(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Sum over faces of the number of sides, i.e. twice the edge count of
    /// any polyhedron with these faces.
    pub fn side_sum(&self) -> usize {
        self.counts.iter().enumerate().map(|(k, &x)| (k + 3) * x).sum()
    }

    /// Every edge borders two faces, so the side sum must be even.
    pub fn has_even_side_sum(&self) -> bool {
        self.side_sum().is_multiple_of(2)
    }

    /// Whether Euler's formula admits a polyhedron with these faces and all
    /// vertex degrees at least three: with `E = side_sum / 2` and
    /// `V = E - F + 2`, this needs `2E >= 3V`.
    pub fn is_euler_admissible(&self) -> bool {
        if !self.has_even_side_sum() {
            return false;
        }
        let e = self.side_sum() / 2;
        let f = self.face_count();
        match (e + 2).checked_sub(f) {
            Some(v) => v >= 4 && 2 * e >= 3 * v,
            None => false,
        }
    }
}

/// All nonnegative solutions of `x_3 + x_4 + ... + x_{n-1} = n`, ordered
/// with `x_3` descending, then `x_4`, and so on.
pub fn enumerate_face_vectors(n: usize) -> Result<Vec<FaceVector>> {
    if !(4..=20).contains(&n) {
        return Err(Error::OutOfRange { value: n as i64, min: 4, max: 20 });
    }
    let vars = n - 3;
    let mut out = Vec::new();
    let mut current = vec![0usize; vars];
    fn fill(k: usize, left: usize, current: &mut [usize], out: &mut Vec<FaceVector>) {
        if k + 1 == current.len() {
            current[k] = left;
            out.push(FaceVector::new(current.to_vec()));
            return;
        }
        for x in (0..=left).rev() {
            current[k] = x;
            fill(k + 1, left - x, current, out);
        }
    }
    fill(0, n, &mut current, &mut out);
    Ok(out)
}

/// Binomial coefficient in exact integer arithmetic.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

// ---------------------------------------------------------------------------
// Combinatorial types

/// Face cycles over abstract vertex labels `0..vertex_count`, validated as a
/// closed, orientable surface of Euler characteristic two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialType {
    faces: Vec<Vec<usize>>,
    vertex_count: usize,
}

impl CombinatorialType {
    /// Labels may be any integers; they are renumbered densely in
    /// increasing order. Inconsistently oriented faces are flipped to agree
    /// with the first face.
    pub fn new(faces: Vec<Vec<usize>>) -> Result<Self> {
        let labels: BTreeSet<usize> = faces.iter().flatten().copied().collect();
        let index: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut faces: Vec<Vec<usize>> = faces.iter().map(|f| f.iter().map(|l| index[l]).collect()).collect();
        let nv = labels.len();

        let mut local = Vec::new();
        for (fi, f) in faces.iter().enumerate() {
            let distinct: BTreeSet<usize> = f.iter().copied().collect();
            if distinct.len() < 3 {
                local.push(StructureViolation::FaceTooSmall { face: fi, len: distinct.len() });
            } else if distinct.len() != f.len() {
                let mut seen = BTreeSet::new();
                let vertex = *f.iter().find(|&&v| !seen.insert(v)).unwrap();
                local.push(StructureViolation::RepeatedVertex { face: fi, vertex });
            }
        }
        if !local.is_empty() {
            return Err(Error::InvalidStructure(local));
        }
        let mut violations = check_surface_topology(nv, &faces);
        let misoriented: Vec<usize> = violations
            .iter()
            .filter_map(|v| match v {
                StructureViolation::OrientationMismatch { face } => Some(*face),
                _ => None,
            })
            .collect();
        if !misoriented.is_empty() && misoriented.len() == violations.len() {
            // Flip whichever class does not contain face 0.
            let flip: BTreeSet<usize> = if misoriented.contains(&0) {
                (0..faces.len()).filter(|f| !misoriented.contains(f)).collect()
            } else {
                misoriented.into_iter().collect()
            };
            for &f in &flip {
                faces[f].reverse();
            }
            violations = check_surface_topology(nv, &faces);
        }
        if !violations.is_empty() {
            return Err(Error::InvalidStructure(violations));
        }
        Ok(CombinatorialType { faces, vertex_count: nv })
    }

    pub fn of(p: &Polyhedron) -> Self {
        CombinatorialType { faces: p.faces().to_vec(), vertex_count: p.vertex_count() }
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for f in &self.faces {
            for &v in f {
                d[v] += 1;
            }
        }
        d
    }

    /// Face-size counts from triangles up to the largest face.
    pub fn face_vector(&self) -> FaceVector {
        let max = self.faces.iter().map(Vec::len).max().unwrap_or(3);
        let mut counts = vec![0; max - 2];
        for f in &self.faces {
            counts[f.len() - 3] += 1;
        }
        FaceVector::new(counts)
    }

    /// Faces containing each vertex.
    pub fn vertex_faces(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertex_count];
        for (fi, f) in self.faces.iter().enumerate() {
            for &v in f {
                out[v].push(fi);
            }
        }
        out
    }

    /// A byte string equal for two types exactly when they are
    /// combinatorially equivalent (mirror images included).
    ///
    /// Each directed edge and each of the two rotation senses roots a
    /// breadth-first relabeling that follows the cyclic order of neighbours
    /// around every vertex; the lexicographically least encoding wins.
    pub fn canonical_code(&self) -> Vec<u8> {
        // For directed edge (v, w) held by face f as ... p, v, w ...,
        // `turn[(v, w)]` is p: the next neighbour of v in rotation order.
        let mut turn: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for f in &self.faces {
            let k = f.len();
            for i in 0..k {
                turn.insert((f[i], f[(i + 1) % k]), f[(i + k - 1) % k]);
            }
        }
        let inverse: BTreeMap<(usize, usize), usize> = turn.iter().map(|(&(v, w), &p)| ((v, p), w)).collect();
        let degrees = self.vertex_degrees();

        let mut best: Option<Vec<u8>> = None;
        for &(root, first) in turn.keys() {
            for mirrored in [false, true] {
                let rot = if mirrored { &inverse } else { &turn };
                let mut label = vec![usize::MAX; self.vertex_count];
                let mut entry = vec![0usize; self.vertex_count];
                label[root] = 0;
                entry[root] = first;
                let mut next = 1;
                let mut queue = VecDeque::from([root]);
                while let Some(v) = queue.pop_front() {
                    let mut w = entry[v];
                    for _ in 0..degrees[v] {
                        if label[w] == usize::MAX {
                            label[w] = next;
                            next += 1;
                            entry[w] = v;
                            queue.push_back(w);
                        }
                        w = rot[&(v, w)];
                    }
                }
                let code = encode(&self.faces, &label, mirrored);
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
        best.unwrap_or_default()
    }

    pub fn is_equivalent(&self, other: &CombinatorialType) -> bool {
        self.vertex_count == other.vertex_count
            && self.faces.len() == other.faces.len()
            && self.face_vector() == other.face_vector()
            && self.canonical_code() == other.canonical_code()
    }
}

fn encode(faces: &[Vec<usize>], label: &[usize], mirrored: bool) -> Vec<u8> {
    let mut relabeled: Vec<Vec<usize>> = faces
        .iter()
        .map(|f| {
            let mut c: Vec<usize> = f.iter().map(|&v| label[v]).collect();
            if mirrored {
                c.reverse();
            }
            let k = (0..c.len()).min_by_key(|&i| c[i]).unwrap();
            c.rotate_left(k);
            c
        })
        .collect();
    relabeled.sort();
    let mut out = Vec::new();
    let mut push = |x: usize| out.extend_from_slice(&(x as u16).to_be_bytes());
    push(label.len());
    push(faces.len());
    for f in &relabeled {
        push(f.len());
        for &v in f {
            push(v);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Prism structure

/// If the type is a combinatorial `k`-prism (two disjoint `k`-gons joined by
/// `k` quadrilaterals, each quadrilateral holding one edge of each base),
/// returns the lexicographically smallest base pair of face indices.
pub fn is_combinatorial_prism(t: &CombinatorialType) -> Option<(usize, usize)> {
    let f = t.face_count();
    if f < 5 {
        return None;
    }
    let k = f - 2;
    if t.vertex_count() != 2 * k || t.vertex_degrees().iter().any(|&d| d != 3) {
        return None;
    }
    let faces = t.faces();
    let candidates: Vec<usize> = (0..f).filter(|&i| faces[i].len() == k).collect();
    let quads = faces.iter().filter(|x| x.len() == 4).count();
    // For k = 4 every face is both a base candidate and a quadrilateral.
    if (k != 4 && (candidates.len() != 2 || quads != k)) || (k == 4 && quads != 6) {
        return None;
    }
    for (ai, &a) in candidates.iter().enumerate() {
        for &b in &candidates[ai + 1..] {
            if prism_pair(faces, a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

fn prism_pair(faces: &[Vec<usize>], a: usize, b: usize) -> bool {
    let sa: BTreeSet<usize> = faces[a].iter().copied().collect();
    let sb: BTreeSet<usize> = faces[b].iter().copied().collect();
    if !sa.is_disjoint(&sb) {
        return false;
    }
    let edges_of =
        |f: &[usize]| -> BTreeSet<(usize, usize)> { cycle_pairs(f).map(|(x, y)| (x.min(y), x.max(y))).collect() };
    let (ea, eb) = (edges_of(&faces[a]), edges_of(&faces[b]));
    faces.iter().enumerate().filter(|&(i, _)| i != a && i != b).all(|(_, q)| {
        let eq = edges_of(q);
        q.len() == 4 && eq.intersection(&ea).count() == 1 && eq.intersection(&eb).count() == 1
    })
}

/// The two combinatorial classes of 5-hedra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiveHedronClass {
    TriangularPrism,
    QuadrilateralPyramid,
}

pub fn classify_5hedron(t: &CombinatorialType) -> Result<FiveHedronClass> {
    if t.face_count() != 5 {
        return Err(Error::Precondition(format!("expected 5 faces, found {}", t.face_count())));
    }
    if let Some(v) = t.vertex_degrees().iter().position(|&d| d < 3) {
        return Err(Error::Precondition(format!("vertex {v} has degree below three")));
    }
    if is_combinatorial_prism(t).is_some() {
        return Ok(FiveHedronClass::TriangularPrism);
    }
    let fv = t.face_vector();
    if fv.count(3) == 4 && fv.count(4) == 1 && t.vertex_count() == 5 {
        let base = t.faces().iter().position(|f| f.len() == 4).unwrap();
        let apex = (0..5).find(|v| !t.faces()[base].contains(v)).unwrap();
        if t.faces().iter().enumerate().all(|(i, f)| i == base || f.contains(&apex)) {
            return Ok(FiveHedronClass::QuadrilateralPyramid);
        }
    }
    Err(Error::ClassificationFailure(format!(
        "5-hedron with face sizes {:?} is neither a triangular prism nor a quadrilateral pyramid",
        t.faces().iter().map(Vec::len).collect::<Vec<_>>()
    )))
}

/// How the three side-edge lines of a triangular prism meet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeLinesRelation {
    Parallel,
    Concurrent(Point3),
}

pub fn edge_lines_relation(p: &Polyhedron) -> Result<EdgeLinesRelation> {
    let report = p.validate();
    if !report.is_valid() {
        return Err(Error::InvalidPolyhedron(report));
    }
    let t = CombinatorialType::of(p);
    let (a, b) = match is_combinatorial_prism(&t) {
        Some(pair) if t.face_count() == 5 => pair,
        _ => return Err(Error::Precondition("not a combinatorial triangular prism".into())),
    };
    let top: BTreeSet<usize> = t.faces()[b].iter().copied().collect();
    let edges = p.edges();
    let lines: Vec<(Point3, Point3)> = t.faces()[a]
        .iter()
        .map(|&v| {
            let w = edges
                .iter()
                .find_map(|&(x, y)| match (x == v, y == v) {
                    (true, _) if top.contains(&y) => Some(y),
                    (_, true) if top.contains(&x) => Some(x),
                    _ => None,
                })
                .expect("prism vertex has a side edge");
            (p.vertices()[v], (p.vertices()[w] - p.vertices()[v]).normalized())
        })
        .collect();

    let parallel = (0..3).all(|i| lines[i].1.cross(lines[(i + 1) % 3].1).norm() < tolerance::PARALLEL_CROSS);
    if parallel {
        return Ok(EdgeLinesRelation::Parallel);
    }
    let mut points = Vec::with_capacity(6);
    for i in 0..3 {
        let j = (i + 1) % 3;
        match closest_points_between_lines(lines[i].0, lines[i].1, lines[j].0, lines[j].1) {
            Some((x, y)) => {
                points.push(x);
                points.push(y);
            }
            None => return Err(Error::NeitherParallelNorConcurrent { spread: f64::INFINITY }),
        }
    }
    let mut mean = Point3::ORIGIN;
    for &x in &points {
        mean += x;
    }
    let mean = mean / 6.0;
    let spread = points.iter().map(|&x| x.distance(mean)).fold(0.0, f64::max);
    if spread <= tolerance::CONCURRENCY_REL * p.diameter() {
        Ok(EdgeLinesRelation::Concurrent(mean))
    } else {
        Err(Error::NeitherParallelNorConcurrent { spread })
    }
}
