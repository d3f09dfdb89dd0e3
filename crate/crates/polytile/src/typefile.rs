//! Combinatorial-type files: one face per line, written as its vertex labels
//! in cyclic order. Labels are arbitrary whitespace-free tokens; `#` starts a
//! comment and blank lines are skipped.

use std::collections::HashMap;
use std::fmt::Write;

use polytile_core::combinatorics::CombinatorialType;

use crate::error::{IoError, Result};

pub fn read_type(text: &str) -> Result<CombinatorialType> {
    let mut labels: HashMap<&str, usize> = HashMap::new();
    let mut faces = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut face = Vec::new();
        for token in line.split_whitespace() {
            let next = labels.len();
            face.push(*labels.entry(token).or_insert(next));
        }
        if face.len() < 3 {
            return Err(IoError::parse(i + 1, format!("a face needs at least three vertices, found {}", face.len())));
        }
        faces.push(face);
    }
    if faces.is_empty() {
        return Err(IoError::parse(1, "no faces"));
    }
    Ok(CombinatorialType::new(faces)?)
}

/// One line per face with zero-based vertex numbers as labels.
pub fn write_type(ty: &CombinatorialType) -> String {
    let mut out = String::new();
    for f in ty.faces() {
        let line: Vec<String> = f.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}
