//! Closed-form lower bounds and the square-pyramid optimum.

use alloc::vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::Point3;
use crate::math;
use crate::mesh::Polyhedron;

/// A lower bound on unit-volume surface area, with the solid attaining it
/// when there is one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    pub bound_value: f64,
    pub attained_by: Option<&'static str>,
}

/// Lower bound on the surface area of a unit-volume convex polyhedron with
/// `faces` faces: the cube root of `54 (f - 2) tan(w) (4 sin^2(w) - 1)` with
/// `w = pi f / (6 (f - 2))`.
pub fn goldberg_bound(faces: u32) -> Result<BoundResult> {
    if faces < 4 {
        return Err(Error::OutOfRange { value: faces as i64, min: 4, max: i64::MAX });
    }
    let f = faces as f64;
    let w = PI * f / (6.0 * (f - 2.0));
    let s = math::sin(w);
    let cost = 54.0 * (f - 2.0) * math::tan(w) * (4.0 * s * s - 1.0);
    let attained_by = match faces {
        4 => Some("regular-tetrahedron"),
        6 => Some("cube"),
        12 => Some("regular-dodecahedron"),
        _ => None,
    };
    Ok(BoundResult { bound_value: math::cbrt(cost), attained_by })
}

/// Lower bound on the lateral area of a pyramid over a base of area
/// `base_area` and perimeter `base_perimeter` at height `height`:
/// `sqrt((2 S)^2 + p^2 h^2) / 2`. Equality holds when the base is
/// circumscribed about a circle and the apex lies over its centre.
pub fn pyramid_lateral_bound(base_area: f64, base_perimeter: f64, height: f64) -> f64 {
    0.5 * math::sqrt(4.0 * base_area * base_area + base_perimeter * base_perimeter * height * height)
}

/// The least-area unit-volume quadrilateral pyramid.
#[derive(Debug, Clone, PartialEq)]
pub struct SquarePyramidOptimum {
    pub base_side: f64,
    pub base_area: f64,
    pub height: f64,
    pub surface_area: f64,
    pub polyhedron: Polyhedron,
}

/// Right square pyramid of base area `2^(-1/3) 3^(2/3)` (base side
/// `2^(-1/6) 3^(1/3)`) and height `2^(1/3) 3^(1/3)`; its area is
/// `2^(5/3) 3^(2/3)`. The base is centred on the origin in the plane `z = 0`.
///
/// Minimizing `S + sqrt(S^2 + 36 / S)` over the base area `S` gives the
/// value above; the height follows from unit volume, `h = 3 / S`.
pub fn square_pyramid_optimum() -> SquarePyramidOptimum {
    let base_area = math::powf(2.0, -1.0 / 3.0) * math::powf(3.0, 2.0 / 3.0);
    let base_side = math::sqrt(base_area);
    let height = 3.0 / base_area;
    let surface_area = math::powf(2.0, 5.0 / 3.0) * math::powf(3.0, 2.0 / 3.0);
    let polyhedron = right_square_pyramid(base_side, height);
    SquarePyramidOptimum { base_side, base_area, height, surface_area, polyhedron }
}

/// Right pyramid over the square `[-s/2, s/2]^2` with apex at height `height`.
pub fn right_square_pyramid(side: f64, height: f64) -> Polyhedron {
    let h = side / 2.0;
    let vertices = vec![
        Point3::new(-h, -h, 0.0),
        Point3::new(h, -h, 0.0),
        Point3::new(h, h, 0.0),
        Point3::new(-h, h, 0.0),
        Point3::new(0.0, 0.0, height),
    ];
    let faces = vec![vec![3, 2, 1, 0], vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4], vec![3, 0, 4]];
    Polyhedron::new(vertices, faces)
}

/// Largest possible diameter of a unit-volume convex polyhedron whose
/// surface area is at most `area_budget`: `3 P^2 / (2 pi)`.
pub fn diameter_bound(area_budget: f64) -> f64 {
    3.0 * area_budget * area_budget / (2.0 * PI)
}
