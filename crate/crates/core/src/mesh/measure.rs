use alloc::collections::BTreeMap;

use super::{cycle_pairs, edge_key, signed_volume, surface_area, Edge, Polyhedron};
use crate::error::Result;
use crate::math;

/// Area, volume, the scale-free cost `area^3 / volume^2`, and diameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measures {
    pub surface_area: f64,
    pub volume: f64,
    pub cost: f64,
    pub diameter: f64,
}

impl Measures {
    /// Surface area the polyhedron would have at unit volume.
    pub fn unit_volume_area(&self) -> f64 {
        math::cbrt(self.cost)
    }
}

impl Polyhedron {
    pub fn measures(&self) -> Result<Measures> {
        self.ensure_valid()?;
        Ok(self.measures_unchecked())
    }

    pub(crate) fn measures_unchecked(&self) -> Measures {
        let surface_area = surface_area(&self.vertices, &self.faces);
        let volume = signed_volume(&self.vertices, &self.faces);
        Measures {
            surface_area,
            volume,
            cost: surface_area * surface_area * surface_area / (volume * volume),
            diameter: self.diameter(),
        }
    }

    /// Uniform scaling about the origin to volume 1.
    pub fn scale_to_unit_volume(&self) -> Result<Polyhedron> {
        self.ensure_valid()?;
        let v = signed_volume(&self.vertices, &self.faces);
        Ok(self.scaled(1.0 / math::cbrt(v)))
    }
}

/// Interior dihedral angle in degrees at every edge, keyed by `(min, max)`
/// vertex index.
pub fn dihedral_angles(p: &Polyhedron) -> Result<BTreeMap<Edge, f64>> {
    p.ensure_valid()?;
    // For each directed edge a->b remember the face traversing it.
    let mut owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (fi, f) in p.faces.iter().enumerate() {
        for (a, b) in cycle_pairs(f) {
            owner.insert((a, b), fi);
        }
    }
    let normals: alloc::vec::Vec<_> = (0..p.faces.len()).map(|f| p.face_normal(f)).collect();
    let mut out = BTreeMap::new();
    for (&(a, b), &f) in &owner {
        if a > b {
            continue;
        }
        let g = owner[&(b, a)];
        let (nf, ng) = (normals[f], normals[g]);
        let between = math::acos(nf.dot(ng));
        let e = p.vertices[b] - p.vertices[a];
        // Convex when the normals turn the same way as the edge traversed by `f`.
        let convex = nf.cross(ng).dot(e) >= 0.0;
        let interior = if convex { core::f64::consts::PI - between } else { core::f64::consts::PI + between };
        out.insert(edge_key(a, b), interior.to_degrees());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn unit_cube_measures() {
        let m = cube(1.0).measures().unwrap();
        assert!((m.surface_area - 6.0).abs() < 1e-14);
        assert!((m.volume - 1.0).abs() < 1e-14);
        assert!((m.cost - 216.0).abs() < 1e-12);
        assert!((m.diameter - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn regular_tetrahedron_volume_matches_cayley_menger() {
        let t = regular_tetrahedron(1.0);
        // Cayley-Menger determinant for six unit edges: 288 V^2 = 4  =>  V = 1/(6 sqrt 2)
        let cm = 4.0_f64;
        let oracle = (cm / 288.0).sqrt();
        let v = t.measures().unwrap().volume;
        assert!((v - oracle).abs() < 1e-15);
        assert!((v - 0.117851).abs() < 1e-6);
    }

    #[test]
    fn scaling_a_side_two_cube() {
        let c = cube(2.0).scale_to_unit_volume().unwrap();
        assert!((c.diameter() - 3f64.sqrt()).abs() < 1e-12);
        let again = c.scale_to_unit_volume().unwrap();
        for (a, b) in c.vertices().iter().zip(again.vertices()) {
            assert!((*a - *b).norm() < 1e-12);
        }
    }

    #[test]
    fn cube_dihedral_angles() {
        let d = dihedral_angles(&cube(1.0)).unwrap();
        assert_eq!(d.len(), 12);
        assert!(d.values().all(|a| (a - 90.0).abs() < 1e-12));
        let sum: f64 = d.values().sum();
        assert!((sum - 1080.0).abs() < 1e-9);
    }

    #[test]
    fn tetrahedron_dihedral_angles() {
        let d = dihedral_angles(&regular_tetrahedron(1.0)).unwrap();
        let want = (1.0f64 / 3.0).acos().to_degrees();
        assert!(d.values().all(|a| (a - want).abs() < 1e-12));
        assert!((want - 70.5288).abs() < 1e-4);
    }

    #[test]
    fn reflex_edges_exceed_180() {
        let d = dihedral_angles(&dented_cube()).unwrap();
        // edges from the top corners to the inward apex are reflex
        for v in 4..8 {
            let a = d[&(v, 8)];
            assert!(a > 180.0 && a < 360.0, "edge ({v}, 8) = {a}");
        }
    }
}
