//! Builders for the conjectured minimizing tiles, their competitors and
//! the comparison solids, plus a registry carrying every expected value.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::bounds::square_pyramid_optimum;
use crate::combinatorics::CombinatorialType;
use crate::error::{Error, Result};
use crate::geometry::{Mat3, Point3};
use crate::math;
use crate::mesh::{convex_hull, Polyhedron};
use crate::optimize::{
    minimize_within_type, OptimizeOptions, OptimizeOutcome, Plane, PointGroup, Symmetry, TypeEmbedding,
};
use crate::prisms::{cairo_pentagon, optimal_prism, prismatic_pentagon, regular_polygon};

/// How a candidate is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    /// Exact coordinates.
    ClosedForm,
    /// A piece cut from a closed-form solid.
    CutOf,
    /// Minimized within a fixed combinatorial type.
    Optimized,
    /// Minimized within a combinatorial type the caller supplies.
    TypeFile,
}

/// Which published list a candidate belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Catalog {
    /// One row per face count of the conjectured minimizers.
    Conjectured,
    /// Competing 12- and 13-hedral tiles.
    Competitor,
    /// Other solids used for comparison.
    Comparison,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateSpec {
    pub name: &'static str,
    pub label: &'static str,
    pub faces: usize,
    pub construction: Construction,
    pub catalog: Catalog,
    /// Published unit-volume surface area, if any.
    pub expected_area: Option<f64>,
    /// Allowed `|area - expected|`.
    pub tolerance: f64,
    pub provenance: &'static str,
}

const TABLE: &str = "published table of conjectured minimizers";
const COMPETITORS: &str = "published table of competing tiles";
const TETRA: &str = "published areas of the four tetrahedral tiles";

macro_rules! entry {
    ($name:expr, $label:expr, $faces:expr, $construction:ident, $catalog:ident, $expected:expr, $tol:expr, $prov:expr) => {
        CandidateSpec {
            name: $name,
            label: $label,
            faces: $faces,
            construction: Construction::$construction,
            catalog: Catalog::$catalog,
            expected_area: $expected,
            tolerance: $tol,
            provenance: $prov,
        }
    };
}

static REGISTRY: &[CandidateSpec] = &[
    entry!("sommerville-1", "one third of a triangular prism", 4, CutOf, Conjectured, Some(7.4126), 5e-4, TABLE),
    entry!(
        "triangular-prism",
        "right equilateral-triangular prism",
        5,
        ClosedForm,
        Conjectured,
        Some(6.5467),
        5e-4,
        TABLE
    ),
    entry!("cube", "cube", 6, ClosedForm, Conjectured, Some(6.0000), 5e-4, TABLE),
    entry!("cairo-prism", "Cairo pentagonal prism", 7, ClosedForm, Conjectured, Some(5.8629), 5e-4, TABLE),
    entry!("hexagonal-prism", "regular hexagonal prism", 8, ClosedForm, Conjectured, Some(5.7191), 5e-4, TABLE),
    entry!("enneahedron", "three squares and six pentagons", 9, Optimized, Conjectured, Some(5.5299), 1e-2, TABLE),
    entry!(
        "decahedral-barrel",
        "two squares and eight pentagons",
        10,
        Optimized,
        Conjectured,
        Some(5.4434),
        1e-2,
        TABLE
    ),
    entry!("half-truncated-octahedron", "type 12-VIII", 12, Optimized, Conjectured, Some(5.3199), 2e-3, TABLE),
    entry!("goldberg-13-IV", "type 13-IV", 13, Optimized, Conjectured, Some(5.3189), 2e-3, TABLE),
    entry!(
        "truncated-octahedron",
        "Kelvin's truncated octahedron",
        14,
        ClosedForm,
        Conjectured,
        Some(5.3147),
        5e-4,
        TABLE
    ),
    entry!("rhombic-dodecahedron", "rhombic dodecahedron", 12, ClosedForm, Competitor, Some(5.3454), 5e-4, COMPETITORS),
    entry!(
        "elongated-dodecahedron",
        "elongated dodecahedron",
        12,
        ClosedForm,
        Competitor,
        Some(5.4932),
        2e-3,
        COMPETITORS
    ),
    entry!("goldberg-13-I", "type 13-I", 13, TypeFile, Competitor, Some(5.3640), 5e-3, COMPETITORS),
    entry!("goldberg-13-II", "type 13-II", 13, TypeFile, Competitor, Some(6.8813), 5e-3, COMPETITORS),
    entry!(
        "gabled-rhombohedron",
        "four pentagons and four quadrilaterals",
        8,
        Optimized,
        Comparison,
        Some(5.7191),
        2e-3,
        "stated equal to the hexagonal prism"
    ),
    entry!(
        "prismatic-prism",
        "prismatic pentagonal prism",
        7,
        ClosedForm,
        Comparison,
        Some(5.8629),
        5e-4,
        "stated equal to the Cairo prism"
    ),
    entry!("sommerville-2", "half of sommerville-3", 4, CutOf, Comparison, Some(7.9635), 5e-4, TETRA),
    entry!("sommerville-3", "one twelfth of a cube", 4, CutOf, Comparison, Some(8.1802), 5e-4, TETRA),
    entry!("sommerville-4", "one quarter of sommerville-1", 4, CutOf, Comparison, Some(10.3646), 5e-4, TETRA),
    entry!(
        "regular-octahedron",
        "regular octahedron",
        8,
        ClosedForm,
        Comparison,
        Some(5.7191),
        5e-4,
        "stated equal to the hexagonal prism"
    ),
    entry!(
        "regular-tetrahedron",
        "regular tetrahedron",
        4,
        ClosedForm,
        Comparison,
        None,
        0.0,
        "isoperimetric bound equality"
    ),
    entry!(
        "regular-dodecahedron",
        "regular dodecahedron",
        12,
        ClosedForm,
        Comparison,
        None,
        0.0,
        "isoperimetric bound equality"
    ),
    entry!("square-pyramid", "least-area square pyramid", 5, ClosedForm, Comparison, None, 0.0, "pyramid bound"),
    entry!(
        "gyrobifastigium",
        "gyrobifastigium, height optimized",
        8,
        ClosedForm,
        Comparison,
        None,
        0.0,
        "no published value"
    ),
];

const COMPETITOR_NAMES: [&str; 9] = [
    "rhombic-dodecahedron",
    "elongated-dodecahedron",
    "goldberg-13-I",
    "goldberg-13-II",
    "regular-octahedron",
    "regular-tetrahedron",
    "regular-dodecahedron",
    "square-pyramid",
    "gyrobifastigium",
];

pub fn registry() -> &'static [CandidateSpec] {
    REGISTRY
}

pub fn spec(name: &str) -> Result<&'static CandidateSpec> {
    REGISTRY.iter().find(|s| s.name == name).ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// Registry entries of one catalog, ordered by face count then name.
pub fn catalog(which: Catalog) -> Vec<&'static CandidateSpec> {
    let mut out: Vec<_> = REGISTRY.iter().filter(|s| s.catalog == which).collect();
    out.sort_by(|a, b| a.faces.cmp(&b.faces).then(a.name.cmp(b.name)));
    out
}

/// Unit-volume realization of a registry entry.
pub fn build(name: &str) -> Result<Polyhedron> {
    let entry = spec(name)?;
    match entry.name {
        "sommerville-1" => build_sommerville(1),
        "sommerville-2" => build_sommerville(2),
        "sommerville-3" => build_sommerville(3),
        "sommerville-4" => build_sommerville(4),
        "triangular-prism" => Ok(optimal_prism(&regular_polygon(3)?)?.polyhedron),
        "cube" => unit(cube_points()),
        "cairo-prism" => Ok(optimal_prism(&cairo_pentagon())?.polyhedron),
        "prismatic-prism" => Ok(optimal_prism(&prismatic_pentagon())?.polyhedron),
        "hexagonal-prism" => Ok(optimal_prism(&regular_polygon(6)?)?.polyhedron),
        "truncated-octahedron" => unit(kelvin_points()),
        "rhombic-dodecahedron" => unit(rhombic_dodecahedron_points(0.0)),
        "elongated-dodecahedron" => elongated_dodecahedron(ELONGATION),
        "regular-octahedron" => unit(octahedron_points()),
        "regular-tetrahedron" => unit(vec![
            Point3::new(1.0, 1.0, 1.0),
            Point3::new(1.0, -1.0, -1.0),
            Point3::new(-1.0, 1.0, -1.0),
            Point3::new(-1.0, -1.0, 1.0),
        ]),
        "regular-dodecahedron" => unit(dodecahedron_points()),
        "square-pyramid" => square_pyramid_optimum().polyhedron.scale_to_unit_volume(),
        "gyrobifastigium" => unit(gyrobifastigium_points(gyrobifastigium_height())),
        "goldberg-13-I" | "goldberg-13-II" => Err(Error::UnsupportedName(name.to_string())),
        _ => Ok(optimize_candidate(name, &OptimizeOptions::default())?.polyhedron),
    }
}

/// Table 2 style competitors and comparison solids.
pub fn build_competitor(name: &str) -> Result<Polyhedron> {
    if !COMPETITOR_NAMES.contains(&name) {
        return Err(Error::UnknownName(name.to_string()));
    }
    build(name)
}

/// Minimizes area within a caller-supplied combinatorial type, seeded
/// automatically. This is how the type-file candidates are built.
pub fn build_from_type(name: &str, ty: &CombinatorialType, options: &OptimizeOptions) -> Result<OptimizeOutcome> {
    let entry = spec(name)?;
    if ty.face_count() != entry.faces {
        return Err(Error::Precondition(format!(
            "{name} has {} faces, the supplied type has {}",
            entry.faces,
            ty.face_count()
        )));
    }
    let seed = TypeEmbedding::tangential_seed(ty, 0)?;
    minimize_within_type(ty, &seed, None, options)
}

/// The four tetrahedral tiles, each at unit volume:
/// 1. the tetragonal disphenoid with two opposite edges 2 and the other four
///    edges `sqrt 3`, one third of a triangular prism;
/// 2. half of No. 3, cut by its mirror plane;
/// 3. half of a square pyramid cut across the base diagonal, one twelfth of
///    a cube;
/// 4. the cone from the centroid of No. 1 over one of its faces.
pub fn build_sommerville(k: u32) -> Result<Polyhedron> {
    let disphenoid = [
        Point3::new(1.0, 0.0, -0.5),
        Point3::new(-1.0, 0.0, -0.5),
        Point3::new(0.0, 1.0, 0.5),
        Point3::new(0.0, -1.0, 0.5),
    ];
    let points = match k {
        1 => disphenoid.to_vec(),
        2 => {
            vec![Point3::ORIGIN, Point3::new(0.0, 0.0, -1.0), Point3::new(1.0, -1.0, -1.0), Point3::new(1.0, 1.0, -1.0)]
        }
        3 => vec![
            Point3::ORIGIN,
            Point3::new(1.0, 1.0, -1.0),
            Point3::new(-1.0, -1.0, -1.0),
            Point3::new(1.0, -1.0, -1.0),
        ],
        4 => vec![disphenoid[0], disphenoid[1], disphenoid[2], Point3::ORIGIN],
        _ => return Err(Error::OutOfRange { value: k as i64, min: 1, max: 4 }),
    };
    unit(points)
}

/// Seed, type and symmetry of an optimized candidate.
#[derive(Debug, Clone)]
pub struct OptimizedSetup {
    pub ty: CombinatorialType,
    pub seed: TypeEmbedding,
    pub symmetry: Option<Symmetry>,
}

/// Runs the documented optimization for an optimized candidate.
pub fn optimize_candidate(name: &str, options: &OptimizeOptions) -> Result<OptimizeOutcome> {
    let setup = optimized_setup(name)?;
    minimize_within_type(&setup.ty, &setup.seed, setup.symmetry.as_ref(), options)
}

/// The seed embedding and symmetry used for each optimized candidate.
pub fn optimized_setup(name: &str) -> Result<OptimizedSetup> {
    let entry = spec(name)?;
    if entry.construction != Construction::Optimized {
        return Err(Error::Precondition(format!("{name} is not an optimized candidate")));
    }
    let z = Point3::new(0.0, 0.0, 1.0);
    let (seed, group, perpendicular): (Polyhedron, Option<&str>, Vec<usize>) = match name {
        "gabled-rhombohedron" => {
            // Cube with perpendicular gable roofs on top and bottom, turned so
            // the two-fold axes lie along x and y.
            let (a, r) = (0.3, 0.3);
            let mut points: Vec<Point3> = Vec::new();
            for x in [-1.0, 1.0] {
                for y in [-1.0, 1.0] {
                    for s in [-1.0, 1.0] {
                        points.push(Point3::new(x, y, s * a));
                    }
                }
            }
            for s in [-1.0, 1.0] {
                points.push(Point3::new(s, 0.0, a + r));
                points.push(Point3::new(0.0, s, -a - r));
            }
            let p = convex_hull(&points)?.transformed(&Mat3::rotation(z, PI / 4.0));
            let pentagons = (0..p.face_count()).filter(|&f| p.faces()[f].len() == 5).collect();
            (p, Some("D2d"), pentagons)
        }
        "enneahedron" => {
            let (tilt, offset) = (0.9, 1.0);
            let mut planes = Vec::new();
            for k in 0..3 {
                let t = 2.0 * PI * k as f64 / 3.0;
                planes.push(Plane::new(spherical(t, tilt), offset));
                planes.push(Plane::new(spherical(t, PI - tilt), offset));
                planes.push(Plane::new(spherical(t + PI / 3.0, PI / 2.0), 1.0));
            }
            (from_planes(&planes)?, Some("D3"), vec![])
        }
        "decahedral-barrel" => {
            let (tilt, offset) = (1.0, 1.0);
            let mut planes = vec![Plane::new(z, 1.0), Plane::new(-z, 1.0)];
            for k in 0..4 {
                let t = PI / 2.0 * k as f64 - PI / 8.0;
                planes.push(Plane::new(spherical(t, tilt), offset));
                planes.push(Plane::new(spherical(t + PI / 4.0, PI - tilt), offset));
            }
            (from_planes(&planes)?, Some("D4"), vec![])
        }
        "half-truncated-octahedron" => {
            // The central cut normal to (3, 1, 0) is the bisection of the
            // Kelvin cell with twelve faces and only degree-three vertices;
            // it keeps the mirror z = 0.
            let mut planes = kelvin_planes();
            planes.push(Plane::new(Point3::new(3.0, 1.0, 0.0), 0.0));
            (from_planes(&planes)?, Some("Cs"), vec![])
        }
        "goldberg-13-IV" => {
            // Viewed along (0, 1, -1) the Kelvin cell is a hexagonal prism
            // capped by four faces at each end; the cut normal to (3, 1, 1)
            // halves it along that axis. Turned so its mirror is z = 0.
            let mut planes = kelvin_planes();
            planes.push(Plane::new(Point3::new(3.0, 1.0, 1.0), 0.0));
            let turn = Mat3::rotation(Point3::new(1.0, 0.0, 0.0), -PI / 4.0);
            (from_planes(&planes)?.transformed(&turn), Some("Cs"), vec![])
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    if seed.face_count() != entry.faces {
        return Err(Error::Degenerate(format!("{name} seed has {} faces", seed.face_count())));
    }
    let embedding = TypeEmbedding::from_polyhedron(&seed)?;
    let symmetry = match group {
        None => None,
        Some(g) => {
            let mut s = Symmetry::derive(PointGroup::named(g)?, &embedding)?;
            for f in perpendicular {
                s = s.with_perpendicular(f, z);
            }
            Some(s)
        }
    };
    Ok(OptimizedSetup { ty: embedding.combinatorial_type().clone(), seed: embedding, symmetry })
}

/// Unit-volume rhombic dodecahedron stretched along a four-fold axis by
/// `2 * elongation`; its area grows with the elongation.
pub fn elongated_dodecahedron(elongation: f64) -> Result<Polyhedron> {
    if !(elongation >= 0.0 && elongation.is_finite()) {
        return Err(Error::Precondition(format!("elongation {elongation} must be finite and non-negative")));
    }
    unit(rhombic_dodecahedron_points(elongation))
}

/// Elongation of the rhombic dodecahedron along its four-fold axis, one
/// third of the axial extent of the unelongated solid.
const ELONGATION: f64 = 2.0 / 3.0;

fn unit(points: Vec<Point3>) -> Result<Polyhedron> {
    convex_hull(&points)?.scale_to_unit_volume()
}

fn spherical(azimuth: f64, polar: f64) -> Point3 {
    Point3::new(math::cos(azimuth) * math::sin(polar), math::sin(azimuth) * math::sin(polar), math::cos(polar))
}

fn signs() -> impl Iterator<Item = [f64; 3]> {
    (0..8).map(|m| [1.0, 2.0, 4.0].map(|b: f64| if m & (b as usize) == 0 { 1.0 } else { -1.0 }))
}

fn cube_points() -> Vec<Point3> {
    signs().map(Point3::from_array).collect()
}

fn octahedron_points() -> Vec<Point3> {
    let mut out = Vec::new();
    for axis in 0..3 {
        for s in [1.0, -1.0] {
            let mut a = [0.0; 3];
            a[axis] = s;
            out.push(Point3::from_array(a));
        }
    }
    out
}

/// All permutations of `(0, +-1, +-2)`.
fn kelvin_points() -> Vec<Point3> {
    let mut out = Vec::new();
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        for s in [[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]] {
            let mut a = [0.0; 3];
            a[perm[1]] = s[0];
            a[perm[2]] = 2.0 * s[1];
            out.push(Point3::from_array(a));
        }
    }
    out
}

/// Face planes of [`kelvin_points`].
fn kelvin_planes() -> Vec<Plane> {
    let mut planes: Vec<Plane> = octahedron_points().into_iter().map(|n| Plane::new(n, 2.0)).collect();
    planes.extend(signs().map(|s| Plane::new(Point3::from_array(s), 3.0)));
    planes
}

/// Rhombic dodecahedron `(+-1, +-1, +-1)`, `(+-2, 0, 0)` and permutations,
/// with the half above `z = 0` raised and the half below lowered by
/// `elongation`.
fn rhombic_dodecahedron_points(elongation: f64) -> Vec<Point3> {
    let mut raw: Vec<Point3> = cube_points();
    raw.extend(octahedron_points().into_iter().map(|p| p * 2.0));
    let mut out = Vec::new();
    for p in raw {
        if p.z > 0.0 {
            out.push(p + Point3::new(0.0, 0.0, elongation));
        } else if p.z < 0.0 {
            out.push(p - Point3::new(0.0, 0.0, elongation));
        } else if elongation > 0.0 {
            out.push(p + Point3::new(0.0, 0.0, elongation));
            out.push(p - Point3::new(0.0, 0.0, elongation));
        } else {
            out.push(p);
        }
    }
    out
}

fn dodecahedron_points() -> Vec<Point3> {
    let phi = (1.0 + math::sqrt(5.0)) / 2.0;
    let mut out = cube_points();
    for s in [[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]] {
        let (a, b) = (s[0] / phi, s[1] * phi);
        out.push(Point3::new(0.0, a, b));
        out.push(Point3::new(a, b, 0.0));
        out.push(Point3::new(b, 0.0, a));
    }
    out
}

/// Two triangular prisms over the unit square, roof ridges at heights
/// `+-ridge` and perpendicular to each other.
fn gyrobifastigium_points(ridge: f64) -> Vec<Point3> {
    let mut out = Vec::new();
    for x in [-0.5, 0.5] {
        for y in [-0.5, 0.5] {
            out.push(Point3::new(x, y, 0.0));
        }
    }
    for s in [-0.5, 0.5] {
        out.push(Point3::new(s, 0.0, ridge));
        out.push(Point3::new(0.0, s, -ridge));
    }
    out
}

/// Ridge height minimizing the unit-volume area, by golden-section search.
fn gyrobifastigium_height() -> f64 {
    let cost = |h: f64| {
        // Four rectangles' worth of roof: each roof half is a 1 x slant rectangle.
        let slant = math::sqrt(h * h + 0.25);
        let area = 4.0 * slant + 4.0 * (0.5 * h);
        let volume = h;
        area / math::powf(volume, 2.0 / 3.0)
    };
    golden_section(cost, 0.05, 3.0, 1e-12)
}

fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let ratio = (math::sqrt(5.0) - 1.0) / 2.0;
    let mut a = hi - ratio * (hi - lo);
    let mut b = lo + ratio * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    while hi - lo > tol {
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - ratio * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + ratio * (hi - lo);
            fb = f(b);
        }
    }
    (lo + hi) / 2.0
}

/// Intersection of half-spaces `normal . x <= offset` that contains the
/// origin, by brute force over plane triples.
fn from_planes(planes: &[Plane]) -> Result<Polyhedron> {
    let scale = planes.iter().fold(1.0f64, |m, p| m.max(math::abs(p.offset)));
    let mut points: Vec<Point3> = Vec::new();
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            for k in j + 1..planes.len() {
                let m = Mat3::from_rows(planes[i].normal, planes[j].normal, planes[k].normal);
                let rhs = Point3::new(planes[i].offset, planes[j].offset, planes[k].offset);
                let Some(x) = m.solve(rhs) else { continue };
                if planes.iter().all(|p| p.normal.dot(x) <= p.offset + 1e-9 * scale)
                    && !points.iter().any(|q| (*q - x).norm() < 1e-9 * scale)
                {
                    points.push(x);
                }
            }
        }
    }
    convex_hull(&points)
}
