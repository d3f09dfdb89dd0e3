use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::lp::{self, LpOutcome};
use super::Polyhedron;
use crate::error::{Error, Result};
use crate::geometry::Point3;
use crate::tolerance;

/// Largest ball contained in a convex polyhedron.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Insphere {
    pub center: Point3,
    pub radius: f64,
}

/// Chebyshev centre of the face half-spaces: maximize `r` subject to
/// `n_f . c + r <= d_f` for every face.
///
/// When the maximizing centre is not unique (a 1x1x2 box, say) the
/// midpoint of the bounding box of the optimal set is returned, which
/// recovers the symmetric centre for symmetric inputs.
pub fn insphere(p: &Polyhedron) -> Result<Insphere> {
    p.ensure_valid()?;
    p.ensure_convex()?;
    let planes: Vec<(Point3, f64)> = (0..p.face_count()).map(|f| p.face_plane(f)).collect();
    insphere_of_planes(&planes, p.vertex_centroid(), p.diameter())
}

pub(crate) fn insphere_of_planes(planes: &[(Point3, f64)], interior: Point3, scale: f64) -> Result<Insphere> {
    let eps = tolerance::LP_EPS;
    // Work relative to an interior point so every right-hand side is positive.
    let shifted: Vec<(Point3, f64)> = planes.iter().map(|&(n, d)| (n, d - n.dot(interior))).collect();
    let a: Vec<Vec<f64>> = shifted.iter().map(|(n, _)| vec![n.x, n.y, n.z, 1.0]).collect();
    let b: Vec<f64> = shifted.iter().map(|&(_, d)| d).collect();
    let (c0, r) = match lp::maximize(&[0.0, 0.0, 0.0, 1.0], &a, &b, eps) {
        Ok(LpOutcome::Optimal { x, value }) => (Point3::new(x[0], x[1], x[2]), value),
        Ok(LpOutcome::Unbounded) => return Err(Error::Degenerate("insphere LP is unbounded".into())),
        Err(e) => return Err(Error::Degenerate(format!("insphere LP failed: {e:?}"))),
    };
    if !(r > 0.0) {
        return Err(Error::Degenerate(format!("no interior: Chebyshev radius {r}")));
    }

    // Bounding box of the optimal centre set {c : n_f . c <= d_f - r}.
    let slack = tolerance::LP_EPS * scale.max(1e-300);
    let a3: Vec<Vec<f64>> = shifted.iter().map(|(n, _)| vec![n.x, n.y, n.z]).collect();
    let b3: Vec<f64> = shifted.iter().map(|&(n, d)| (d - r + slack - n.dot(c0)).max(0.0)).collect();
    let mut lo = [0.0f64; 3];
    let mut hi = [0.0f64; 3];
    for k in 0..3 {
        for (sign, slot) in [(1.0, &mut hi[k]), (-1.0, &mut lo[k])] {
            let mut obj = [0.0; 3];
            obj[k] = sign;
            if let Ok(LpOutcome::Optimal { x, .. }) = lp::maximize(&obj, &a3, &b3, eps) {
                *slot = x[k];
            }
        }
    }
    let mid = c0 + Point3::new(0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1]), 0.5 * (lo[2] + hi[2]));
    let feasible = shifted.iter().all(|&(n, d)| n.dot(mid) + r <= d + 2.0 * slack);
    let center = if feasible { mid } else { c0 };
    let radius = shifted.iter().map(|&(n, d)| d - n.dot(center)).fold(f64::INFINITY, f64::min);
    Ok(Insphere { center: center + interior, radius })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn centred_unit_cube() {
        let c = cube(1.0).translated(Point3::new(-0.5, -0.5, -0.5));
        let s = insphere(&c).unwrap();
        assert!(s.center.norm() < 1e-12);
        assert!((s.radius - 0.5).abs() < 1e-12);
    }

    #[test]
    fn long_box_centre_is_centroid() {
        let b = boxed(1.0, 1.0, 2.0);
        let s = insphere(&b).unwrap();
        assert!((s.radius - 0.5).abs() < 1e-12);
        assert!((s.center - Point3::new(0.5, 0.5, 1.0)).norm() < 1e-9);
    }

    #[test]
    fn regular_tetrahedron_inradius() {
        // inradius of the regular tetrahedron is edge / sqrt(24)
        let s = insphere(&regular_tetrahedron(1.0)).unwrap();
        assert!((s.radius - 1.0 / 24f64.sqrt()).abs() < 1e-12);
        assert!(s.center.norm() < 1e-12);
    }

    #[test]
    fn non_convex_rejected() {
        assert!(matches!(insphere(&dented_cube()), Err(Error::NonConvex { .. })));
    }
}
