//! Object File Format: an `OFF` header line, a `V F E` counts line, one
//! vertex per line and one face per line as `k i1 ... ik` with zero-based
//! indices. `#` starts a comment; blank lines are skipped.

use std::fmt::Write;

use polytile_core::{Point3, Polyhedron};

use crate::error::{IoError, Result};

/// Parsed but unvalidated OFF contents.
#[derive(Debug, Clone, PartialEq)]
pub struct OffMesh {
    pub vertices: Vec<Point3>,
    pub faces: Vec<Vec<usize>>,
}

/// Reads and validates a closed polyhedral surface.
pub fn read_off(text: &str) -> Result<Polyhedron> {
    let mesh = parse_off(text, 3)?;
    Ok(Polyhedron::try_new(mesh.vertices, mesh.faces)?)
}

/// Reads OFF text whose vertex lines may carry two coordinates (a planar
/// polygon) or three; missing coordinates are zero.
pub fn parse_off(text: &str, max_coords: usize) -> Result<OffMesh> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, header) = lines.next().ok_or_else(|| IoError::parse(1, "empty file"))?;
    if header != "OFF" {
        return Err(IoError::parse(line, format!("expected `OFF`, found `{header}`")));
    }
    let (line, counts) = lines.next().ok_or_else(|| IoError::parse(line, "missing counts line"))?;
    let counts: Vec<usize> = counts
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| IoError::parse(line, format!("bad count `{t}`"))))
        .collect::<Result<_>>()?;
    let [vertex_count, face_count, _edges] = counts[..] else {
        return Err(IoError::parse(line, "counts line must be `V F E`"));
    };

    let mut vertices = Vec::with_capacity(vertex_count);
    for k in 0..vertex_count {
        let (line, text) = lines.next().ok_or_else(|| IoError::parse(line, format!("file ends at vertex {k}")))?;
        let coords: Vec<f64> = text
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| IoError::parse(line, format!("bad coordinate `{t}`"))))
            .collect::<Result<_>>()?;
        if coords.len() < 2 || coords.len() > max_coords {
            return Err(IoError::parse(line, format!("expected {max_coords} coordinates, found {}", coords.len())));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(IoError::parse(line, "coordinate is not finite"));
        }
        vertices.push(Point3::new(coords[0], coords[1], coords.get(2).copied().unwrap_or(0.0)));
    }

    let mut faces = Vec::with_capacity(face_count);
    let mut last = line;
    for k in 0..face_count {
        let (line, text) = lines.next().ok_or_else(|| IoError::parse(last, format!("file ends at face {k}")))?;
        last = line;
        let fields: Vec<usize> = text
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| IoError::parse(line, format!("bad index `{t}`"))))
            .collect::<Result<_>>()?;
        let Some((&len, indices)) = fields.split_first() else {
            return Err(IoError::parse(line, "empty face line"));
        };
        if len < 3 || indices.len() != len {
            return Err(IoError::parse(line, format!("face declares {len} indices but lists {}", indices.len())));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= vertex_count) {
            return Err(IoError::parse(line, format!("index {bad} out of range for {vertex_count} vertices")));
        }
        faces.push(indices.to_vec());
    }
    if let Some((line, _)) = lines.next() {
        return Err(IoError::parse(line, "unexpected content after the last face"));
    }
    Ok(OffMesh { vertices, faces })
}

/// Canonical serialization: 17 significant digits, face order preserved,
/// edge count 0.
pub fn write_off(p: &Polyhedron) -> String {
    let mut out = String::new();
    out.push_str("OFF\n");
    let _ = writeln!(out, "{} {} 0", p.vertex_count(), p.face_count());
    for v in p.vertices() {
        let _ = writeln!(out, "{:.16e} {:.16e} {:.16e}", v.x, v.y, v.z);
    }
    for f in p.faces() {
        out.push_str(&f.len().to_string());
        for i in f {
            let _ = write!(out, " {i}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUBE: &str = "OFF
# unit cube
8 6 0
0 0 0
1 0 0
1 1 0
0 1 0
0 0 1
1 0 1
1 1 1
0 1 1
4 3 2 1 0
4 4 5 6 7
4 0 1 5 4
4 1 2 6 5
4 2 3 7 6
4 3 0 4 7
";

    #[test]
    fn reads_the_unit_cube() {
        let p = read_off(CUBE).unwrap();
        assert_eq!((p.vertex_count(), p.face_count()), (8, 6));
        assert!((p.measures().unwrap().volume - 1.0).abs() < 1e-15);
    }

    #[test]
    fn edge_count_is_ignored() {
        let text = CUBE.replace("8 6 0", "8 6 12");
        assert!(read_off(&text).is_ok());
    }

    #[test]
    fn bad_index_names_its_line() {
        let text = CUBE.replace("4 2 3 7 6", "4 2 3 8 6");
        let err = read_off(&text).unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 16, .. }), "{err}");
        assert!(err.to_string().contains("line 16"));
    }

    #[test]
    fn header_and_counts_are_checked() {
        assert!(matches!(read_off("PLY\n"), Err(IoError::Parse { line: 1, .. })));
        assert!(matches!(read_off("OFF\n8 6\n"), Err(IoError::Parse { line: 2, .. })));
        assert!(matches!(read_off(""), Err(IoError::Parse { .. })));
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let p = read_off(CUBE).unwrap().scaled(1.0 / 3.0);
        let once = write_off(&p);
        let again = write_off(&read_off(&once).unwrap());
        assert_eq!(once, again);
        assert_eq!(read_off(&once).unwrap(), p);
    }

    #[test]
    fn invalid_surfaces_are_rejected() {
        let text = CUBE.replace("4 4 5 6 7", "4 7 6 5 4");
        assert!(matches!(read_off(&text), Err(IoError::Core(_))));
    }
}
