//! Optimal right prisms over planar bases, regular polygons and the Cairo
//! and Prismatic pentagons.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::Point3;
use crate::math;
use crate::mesh::Polyhedron;

/// A planar polygon as a vertex list in the plane.
pub type Polygon = Vec<[f64; 2]>;

/// Signed area: positive for counter-clockwise vertex order.
pub fn signed_area(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
        / 2.0
}

pub fn perimeter(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            math::hypot(b[0] - a[0], b[1] - a[1])
        })
        .sum()
}

/// Area centroid of a simple polygon.
pub fn area_centroid(poly: &[[f64; 2]]) -> [f64; 2] {
    let n = poly.len();
    let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        let w = p[0] * q[1] - q[0] * p[1];
        a2 += w;
        cx += (p[0] + q[0]) * w;
        cy += (p[1] + q[1]) * w;
    }
    [cx / (3.0 * a2), cy / (3.0 * a2)]
}

/// Checks that the polygon has at least three finite vertices, positive
/// area, no repeated consecutive vertices and no crossing sides, and
/// returns it in counter-clockwise order.
pub fn normalize_polygon(poly: &[[f64; 2]]) -> Result<Polygon> {
    let n = poly.len();
    if n < 3 {
        return Err(Error::Degenerate(format!("polygon has {n} vertices")));
    }
    if poly.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
        return Err(Error::Degenerate("polygon has a non-finite vertex".into()));
    }
    let scale = perimeter(poly);
    let area = signed_area(poly);
    if !(area.abs() > 1e-12 * scale * scale) {
        return Err(Error::Degenerate(format!("polygon area {area} is zero")));
    }
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if math::hypot(b[0] - a[0], b[1] - a[1]) <= 1e-12 * scale {
            return Err(Error::Degenerate(format!("polygon side {i} has zero length")));
        }
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if segments_cross(a, b, poly[j], poly[(j + 1) % n]) {
                return Err(Error::Degenerate(format!("polygon sides {i} and {j} intersect")));
            }
        }
    }
    let mut out = poly.to_vec();
    if area < 0.0 {
        out.reverse();
    }
    Ok(out)
}

fn segments_cross(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let orient = |p: [f64; 2], q: [f64; 2], r: [f64; 2]| (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
    let (d1, d2) = (orient(a, b, c), orient(a, b, d));
    let (d3, d4) = (orient(c, d, a), orient(c, d, b));
    (d1 * d2 <= 0.0)
        && (d3 * d4 <= 0.0)
        && !(d1 == 0.0 && d2 == 0.0 && d3 == 0.0 && d4 == 0.0 && disjoint_collinear(a, b, c, d))
}

fn disjoint_collinear(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let axis = if (b[0] - a[0]).abs() >= (b[1] - a[1]).abs() { 0 } else { 1 };
    let (lo1, hi1) = (a[axis].min(b[axis]), a[axis].max(b[axis]));
    let (lo2, hi2) = (c[axis].min(d[axis]), c[axis].max(d[axis]));
    hi1 < lo2 || hi2 < lo1
}

/// Regular `k`-gon with unit side, centred at the origin, counter-clockwise.
pub fn regular_polygon(k: usize) -> Result<Polygon> {
    if !(3..=64).contains(&k) {
        return Err(Error::OutOfRange { value: k as i64, min: 3, max: 64 });
    }
    let radius = 0.5 / math::sin(PI / k as f64);
    Ok((0..k)
        .map(|i| {
            let a = 2.0 * PI * i as f64 / k as f64;
            [radius * math::cos(a), radius * math::sin(a)]
        })
        .collect())
}

/// Polygon circumscribed about the unit circle with the given interior
/// angles (radians), in order. Tangent lengths are `cot(angle / 2)`, so
/// side `i` has length `t_i + t_{i+1}`.
pub fn tangential_polygon(angles: &[f64]) -> Result<Polygon> {
    let k = angles.len();
    if k < 3 || angles.iter().any(|&a| !(a > 0.0 && a < PI)) {
        return Err(Error::Degenerate("angles must number at least three and lie in (0, pi)".into()));
    }
    let total: f64 = angles.iter().sum();
    if (total - (k as f64 - 2.0) * PI).abs() > 1e-12 * total {
        return Err(Error::Degenerate(format!("interior angles sum to {total}, not (k - 2) pi")));
    }
    let tangent: Vec<f64> = angles.iter().map(|&a| 1.0 / math::tan(a / 2.0)).collect();
    let mut out = Vec::with_capacity(k);
    let (mut x, mut y, mut heading) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..k {
        out.push([x, y]);
        let side = tangent[i] + tangent[(i + 1) % k];
        x += side * math::cos(heading);
        y += side * math::sin(heading);
        heading += PI - angles[(i + 1) % k];
    }
    let p = perimeter(&out);
    if math::hypot(x, y) > 1e-12 * p {
        return Err(Error::Degenerate(format!("tangential polygon fails to close by {}", math::hypot(x, y))));
    }
    // Place the incircle centre at the origin: it sits at distance 1 to the
    // left of the first side, tangent_0 along it.
    let centre = [tangent[0], 1.0];
    Ok(out.into_iter().map(|[a, b]| [a - centre[0], b - centre[1]]).collect())
}

const RIGHT: f64 = PI / 2.0;
const THIRD: f64 = 2.0 * PI / 3.0;

/// Pentagon with angles 90, 120, 90, 120, 120 degrees (right angles not
/// adjacent) about the unit circle.
pub fn cairo_pentagon() -> Polygon {
    tangential_polygon(&[RIGHT, THIRD, RIGHT, THIRD, THIRD]).expect("angle sum is 3 pi")
}

/// Pentagon with angles 90, 90, 120, 120, 120 degrees (right angles
/// adjacent) about the unit circle.
pub fn prismatic_pentagon() -> Polygon {
    tangential_polygon(&[RIGHT, RIGHT, THIRD, THIRD, THIRD]).expect("angle sum is 3 pi")
}

/// Base shape, base measurements and height of a right prism.
#[derive(Debug, Clone, PartialEq)]
pub struct PrismSpec {
    /// Counter-clockwise base with its area centroid at the origin.
    pub base: Polygon,
    pub base_area: f64,
    pub base_perimeter: f64,
    pub height: f64,
}

/// The least-area unit-volume right prism over a base shape.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalPrism {
    pub spec: PrismSpec,
    pub surface_area: f64,
    pub polyhedron: Polyhedron,
}

/// Among unit-volume right prisms whose base is similar to `base`, the
/// least surface area is `3 (P^2 / (2A))^(1/3)` at height
/// `(4 sqrt(A) / P)^(2/3)`, where `A` and `P` are the area and perimeter of
/// `base` at any scale.
pub fn optimal_prism(base: &[[f64; 2]]) -> Result<OptimalPrism> {
    let base = normalize_polygon(base)?;
    let (a0, p0) = (signed_area(&base), perimeter(&base));
    let height = math::powf(4.0 * math::sqrt(a0) / p0, 2.0 / 3.0);
    let surface_area = 3.0 * math::cbrt(p0 * p0 / (2.0 * a0));
    // Scale so the base area is 1 / height.
    let scale = math::sqrt(1.0 / (height * a0));
    let c = area_centroid(&base);
    let scaled: Polygon = base.iter().map(|p| [(p[0] - c[0]) * scale, (p[1] - c[1]) * scale]).collect();
    let spec = PrismSpec { base_area: signed_area(&scaled), base_perimeter: perimeter(&scaled), base: scaled, height };
    let polyhedron = right_prism(&spec.base, height)?;
    Ok(OptimalPrism { spec, surface_area, polyhedron })
}

/// Right prism with `base` at `z = 0` and its copy at `z = height`.
pub fn right_prism(base: &[[f64; 2]], height: f64) -> Result<Polyhedron> {
    if !(height > 0.0) || !height.is_finite() {
        return Err(Error::Degenerate(format!("prism height {height} is not positive")));
    }
    let base = normalize_polygon(base)?;
    let k = base.len();
    let mut vertices: Vec<Point3> = base.iter().map(|p| Point3::new(p[0], p[1], 0.0)).collect();
    vertices.extend(base.iter().map(|p| Point3::new(p[0], p[1], height)));
    let mut faces = Vec::with_capacity(k + 2);
    faces.push((0..k).rev().collect());
    faces.push((k..2 * k).collect());
    for i in 0..k {
        let j = (i + 1) % k;
        faces.push(alloc::vec![i, j, k + j, k + i]);
    }
    Polyhedron::try_new(vertices, faces)
}

/// Counter-clockwise convex hull of planar points (monotone chain).
pub fn convex_hull_2d(points: &[[f64; 2]]) -> Polygon {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: alloc::boxed::Box<dyn Iterator<Item = &[f64; 2]>> =
            if pass == 0 { alloc::boxed::Box::new(pts.iter()) } else { alloc::boxed::Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}
