use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::embedding::TypeEmbedding;
use crate::error::{Error, Result};
use crate::geometry::{Mat3, Point3};
use crate::math;

/// A finite group of orthogonal matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct PointGroup {
    name: String,
    elements: Vec<Mat3>,
}

const GROUP_TOL: f64 = 1e-9;

impl PointGroup {
    /// Closure of the generators under multiplication.
    pub fn from_generators(name: &str, generators: &[Mat3]) -> Result<Self> {
        let mut elements = vec![Mat3::IDENTITY];
        let mut frontier = vec![Mat3::IDENTITY];
        while let Some(a) = frontier.pop() {
            for g in generators {
                let b = g.mul_mat(&a);
                if !elements.iter().any(|e| e.max_abs_diff(&b) < GROUP_TOL) {
                    if elements.len() >= 240 {
                        return Err(Error::Precondition(format!("group {name} is not finite")));
                    }
                    elements.push(b);
                    frontier.push(b);
                }
            }
        }
        Ok(PointGroup { name: name.to_string(), elements })
    }

    /// Schoenflies names with the principal axis along `z`: `C1`, `Ci`,
    /// `Cs` (mirror `z = 0`), `Cn`, `Cnv`, `Cnh`, `Dn`, `Dnh`, `Dnd` and `Oh`.
    /// Dihedral two-fold axes include the `x` axis; vertical mirrors of
    /// `Cnv` contain the `x` axis; the mirrors of `Dnd` bisect the two-fold
    /// axes.
    pub fn named(name: &str) -> Result<Self> {
        let z = Point3::new(0.0, 0.0, 1.0);
        let x = Point3::new(1.0, 0.0, 0.0);
        let unknown = || Error::UnknownName(name.to_string());
        let gens: Vec<Mat3> = match name {
            "C1" => vec![],
            "Ci" => vec![Mat3::IDENTITY.scaled(-1.0)],
            "Cs" => vec![Mat3::reflection(z)],
            "Oh" => vec![
                Mat3::rotation(z, PI / 2.0),
                Mat3::rotation(Point3::new(1.0, 1.0, 1.0), 2.0 * PI / 3.0),
                Mat3::IDENTITY.scaled(-1.0),
            ],
            _ => {
                let (family, rest) = name.split_at(1);
                let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
                let suffix = &rest[digits.len()..];
                let n: usize = digits.parse().map_err(|_| unknown())?;
                if !(1..=24).contains(&n) {
                    return Err(unknown());
                }
                let turn = Mat3::rotation(z, 2.0 * PI / n as f64);
                let flip = Mat3::rotation(x, PI);
                let horizontal = Mat3::reflection(z);
                let vertical = Mat3::reflection(Point3::new(0.0, 1.0, 0.0));
                let a = PI / (2.0 * n as f64) + PI / 2.0;
                let diagonal = Mat3::reflection(Point3::new(math::cos(a), math::sin(a), 0.0));
                match (family, suffix) {
                    ("C", "") => vec![turn],
                    ("C", "v") => vec![turn, vertical],
                    ("C", "h") => vec![turn, horizontal],
                    ("D", "") => vec![turn, flip],
                    ("D", "h") => vec![turn, flip, horizontal],
                    ("D", "d") => vec![turn, flip, diagonal],
                    _ => return Err(unknown()),
                }
            }
        };
        PointGroup::from_generators(name, &gens)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn elements(&self) -> &[Mat3] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// A point group acting on the faces of a type, plus optional linear
/// constraints on individual face normals.
#[derive(Debug, Clone, PartialEq)]
pub struct Symmetry {
    group: PointGroup,
    /// `face_image[g][f]` is the face whose plane is element `g` applied to
    /// the plane of face `f`.
    face_image: Vec<Vec<usize>>,
    perpendicular: Vec<(usize, Point3)>,
}

impl Symmetry {
    /// Derives the action on faces from an embedding that has the symmetry.
    pub fn derive(group: PointGroup, seed: &TypeEmbedding) -> Result<Self> {
        let planes = seed.planes();
        let scale = planes.iter().fold(0.0f64, |m, p| m.max(p.offset.abs())).max(1.0);
        let mut face_image = Vec::with_capacity(group.order());
        for (gi, g) in group.elements().iter().enumerate() {
            let mut image = Vec::with_capacity(planes.len());
            for (f, p) in planes.iter().enumerate() {
                let n = g.mul_vec(p.normal);
                let hit = planes
                    .iter()
                    .position(|q| (q.normal - n).norm() < 1e-7 && math::abs(q.offset - p.offset) < 1e-7 * scale)
                    .ok_or_else(|| {
                        Error::Precondition(format!(
                            "seed is not symmetric under element {gi} of {}: face {f} has no image",
                            group.name()
                        ))
                    })?;
                image.push(hit);
            }
            face_image.push(image);
        }
        Ok(Symmetry { group, face_image, perpendicular: Vec::new() })
    }

    /// Requires the normal of `face` (and, through the group, of its orbit)
    /// to stay perpendicular to `axis`.
    pub fn with_perpendicular(mut self, face: usize, axis: Point3) -> Self {
        self.perpendicular.push((face, axis.normalized()));
        self
    }

    pub fn group(&self) -> &PointGroup {
        &self.group
    }

    pub fn perpendicular(&self) -> &[(usize, Point3)] {
        &self.perpendicular
    }

    pub fn face_image(&self, element: usize, face: usize) -> usize {
        self.face_image[element][face]
    }

    pub fn face_count(&self) -> usize {
        self.face_image.first().map_or(0, Vec::len)
    }

    /// Face orbits, each listed from its smallest face index.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let nf = self.face_count();
        let mut seen = vec![false; nf];
        let mut out = Vec::new();
        for f in 0..nf {
            if seen[f] {
                continue;
            }
            let mut orbit: Vec<usize> = self.face_image.iter().map(|img| img[f]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &g in &orbit {
                seen[g] = true;
            }
            out.push(orbit);
        }
        out
    }
}

/// A group specification such as `D2d` or `D2d;perp-z=0,2`: a group name
/// optionally followed by `;perp-<axis>=<faces>` clauses with axis `x`,
/// `y` or `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetrySpec {
    pub group: String,
    pub perpendicular: Vec<(usize, Point3)>,
}

impl SymmetrySpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = text.split(';').map(str::trim);
        let group = parts.next().filter(|g| !g.is_empty()).ok_or_else(|| Error::UnknownName(text.to_string()))?;
        PointGroup::named(group)?;
        let mut perpendicular = Vec::new();
        for clause in parts {
            let (key, faces) =
                clause.split_once('=').ok_or_else(|| Error::Precondition(format!("malformed clause `{clause}`")))?;
            let axis = match key.trim() {
                "perp-x" => Point3::new(1.0, 0.0, 0.0),
                "perp-y" => Point3::new(0.0, 1.0, 0.0),
                "perp-z" => Point3::new(0.0, 0.0, 1.0),
                other => return Err(Error::UnknownName(other.to_string())),
            };
            for f in faces.split(',') {
                let f: usize = f.trim().parse().map_err(|_| Error::Precondition(format!("bad face index `{f}`")))?;
                perpendicular.push((f, axis));
            }
        }
        Ok(SymmetrySpec { group: group.to_string(), perpendicular })
    }

    /// Binds the specification to a seed embedding.
    pub fn bind(&self, seed: &TypeEmbedding) -> Result<Symmetry> {
        let mut s = Symmetry::derive(PointGroup::named(&self.group)?, seed)?;
        for &(f, axis) in &self.perpendicular {
            if f >= seed.planes().len() {
                return Err(Error::Precondition(format!("face {f} out of range")));
            }
            s = s.with_perpendicular(f, axis);
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::fixtures::cube;

    #[test]
    fn group_orders() {
        for (name, order) in [
            ("C1", 1),
            ("Ci", 2),
            ("C3", 3),
            ("C4v", 8),
            ("D2d", 8),
            ("D3", 6),
            ("D3h", 12),
            ("D4", 8),
            ("D4d", 16),
            ("Oh", 48),
        ] {
            assert_eq!(PointGroup::named(name).unwrap().order(), order, "{name}");
        }
        assert!(PointGroup::named("Q7").is_err());
    }

    #[test]
    fn cube_orbits() {
        let c = cube(2.0).translated(Point3::new(-1.0, -1.0, -1.0));
        let e = TypeEmbedding::from_polyhedron(&c).unwrap();
        let s = Symmetry::derive(PointGroup::named("Oh").unwrap(), &e).unwrap();
        assert_eq!(s.orbits(), vec![vec![0, 1, 2, 3, 4, 5]]);
        let s = Symmetry::derive(PointGroup::named("D4h").unwrap(), &e).unwrap();
        assert_eq!(s.orbits().len(), 2);
        // an off-centre cube is not symmetric about the origin
        let e = TypeEmbedding::from_polyhedron(&cube(1.0)).unwrap();
        assert!(Symmetry::derive(PointGroup::named("Ci").unwrap(), &e).is_err());
    }

    #[test]
    fn spec_parsing() {
        let s = SymmetrySpec::parse("D2d;perp-z=0,3").unwrap();
        assert_eq!(s.group, "D2d");
        assert_eq!(s.perpendicular.len(), 2);
        assert!(SymmetrySpec::parse("D2d;perp-w=1").is_err());
        assert!(SymmetrySpec::parse("X9").is_err());
    }
}
