use alloc::vec::Vec;

use crate::error::Result;
use crate::geometry::Point3;
use crate::math;
use crate::mesh::{insphere, Insphere, Polyhedron};

/// Tangency data for one face.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceTangency {
    /// Foot of the perpendicular from the insphere centre to the face plane.
    pub tangency: Point3,
    /// Area centroid of the face polygon.
    pub centroid: Point3,
    /// Distance between the tangency point and the centroid.
    pub residual: f64,
    /// `|dist(centre, plane) - radius|`.
    pub deficit: f64,
}

/// How far a convex polyhedron is from circumscribing a sphere that touches
/// every face at its centroid.
#[derive(Debug, Clone, PartialEq)]
pub struct LindelofReport {
    pub insphere: Insphere,
    pub faces: Vec<FaceTangency>,
}

impl LindelofReport {
    pub fn max_residual(&self) -> f64 {
        self.faces.iter().fold(0.0, |m, f| m.max(f.residual))
    }

    pub fn max_deficit(&self) -> f64 {
        self.faces.iter().fold(0.0, |m, f| m.max(f.deficit))
    }
}

pub fn lindelof_check(p: &Polyhedron) -> Result<LindelofReport> {
    let sphere = insphere(p)?;
    let c = sphere.center;
    let faces = (0..p.face_count())
        .map(|f| {
            let (n, d) = p.face_plane(f);
            let gap = d - n.dot(c);
            let tangency = c + n * gap;
            let centroid = p.face_centroid(f);
            FaceTangency {
                tangency,
                centroid,
                residual: (tangency - centroid).norm(),
                deficit: math::abs(gap - sphere.radius),
            }
        })
        .collect();
    Ok(LindelofReport { insphere: sphere, faces })
}
