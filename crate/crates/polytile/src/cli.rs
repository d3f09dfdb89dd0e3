//! The `polytile` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::json;

use polytile_core::bounds::{diameter_bound, goldberg_bound};
use polytile_core::candidates::{build, build_sommerville};
use polytile_core::combinatorics::{binomial, enumerate_face_vectors, CombinatorialType};
use polytile_core::mesh::dihedral_angles;
use polytile_core::optimize::{
    canonical_placement, lindelof_check, minimize_within_type, truncation_experiment, OptimizeOptions, SymmetrySpec,
    TypeEmbedding,
};
use polytile_core::prisms::{optimal_prism, regular_polygon};
use polytile_core::{Error, Polyhedron};

use crate::error::{IoError, Result};
use crate::off::{parse_off, read_off, write_off};
use crate::table::{self, Format};
use crate::typefile::read_type;

#[derive(Debug, Parser)]
#[command(name = "polytile", version, about = "Surface-area-minimizing polyhedral tiles")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Suppress informational output.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Conjectured minimizers against their published areas.
    Table1,
    /// Competing tiles against their published areas.
    Table2 {
        /// `name=path` combinatorial-type file for a type-file entry.
        #[arg(long = "type-file", value_name = "NAME=PATH")]
        type_files: Vec<String>,
    },
    /// Write a unit-volume candidate.
    Build {
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Validate and measure an OFF file.
    Check {
        path: PathBuf,
        /// Also report tangency of the insphere at face centroids.
        #[arg(long)]
        lindelof: bool,
    },
    /// Minimize area within a combinatorial type.
    Optimize {
        #[arg(long = "type")]
        type_path: PathBuf,
        /// Point group with optional constraints, e.g. `D2d;perp-z=0,3`.
        #[arg(long)]
        symmetry: Option<String>,
        /// Run only this restart.
        #[arg(long)]
        seed_index: Option<usize>,
        /// Seed polyhedron of the given type; defaults to a tangential seed.
        #[arg(long)]
        seed: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Least-area unit-volume right prism over a base.
    #[command(group(ArgGroup::new("shape").required(true).args(["ngon", "base"])))]
    Prism {
        /// Regular polygon with this many sides.
        #[arg(long)]
        ngon: Option<usize>,
        /// OFF file whose single face is the base polygon.
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write one of the four tetrahedral tiles.
    Sommerville {
        k: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Costs of ever shallower cuts at one vertex.
    TruncateExp {
        path: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        steps: usize,
    },
    /// Face vectors of n-hedra and their count.
    Facevectors { n: usize },
}

struct Streams<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    quiet: bool,
}

impl Streams<'_> {
    fn emit(&mut self, text: &str) -> Result<()> {
        self.out.write_all(text.as_bytes()).map_err(|e| IoError::Output(e.to_string()))
    }

    fn info(&mut self, text: &str) {
        if !self.quiet {
            let _ = writeln!(self.err, "{text}");
        }
    }
}

/// Runs the command line and returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = out.write_all(text.as_bytes());
                0
            } else {
                let _ = err.write_all(text.as_bytes());
                2
            };
        }
    };
    let mut streams = Streams { out, err, quiet: cli.quiet };
    match dispatch(&cli, &mut streams) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(streams.err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &IoError) -> u8 {
    match e {
        IoError::Parse { .. } | IoError::File { .. } | IoError::Usage(_) => 2,
        IoError::Output(_) => 3,
        IoError::Core(core) => match core {
            Error::UnknownName(_)
            | Error::UnsupportedName(_)
            | Error::OutOfRange { .. }
            | Error::InvalidPolyhedron(_)
            | Error::InvalidStructure(_)
            | Error::VertexOutOfRange { .. }
            | Error::Precondition(_)
            | Error::NonConvex { .. }
            | Error::NonConvexVertex(_)
            | Error::CutTooDeep { .. } => 2,
            _ => 3,
        },
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| IoError::file(path, e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| IoError::file(path, e))
}

fn emit_rows(rows: &[table::TableRow], format: Format, io: &mut Streams) -> Result<u8> {
    io.emit(&table::render(rows, format)?)?;
    if format == Format::Csv {
        for r in rows {
            if let Some(e) = &r.error {
                let _ = writeln!(io.err, "{}: {e}", r.name);
            }
        }
    }
    Ok(table::exit_status(rows))
}

fn to_json(value: &serde_json::Value) -> Result<String> {
    serde_json::to_string_pretty(value).map(|s| s + "\n").map_err(|e| IoError::Output(e.to_string()))
}

fn dispatch(cli: &Cli, io: &mut Streams) -> Result<u8> {
    let format = cli.format;
    match &cli.command {
        Command::Table1 => emit_rows(&table::table1(), format, io),
        Command::Table2 { type_files } => {
            let mut types = BTreeMap::new();
            for entry in type_files {
                let (name, path) = entry
                    .split_once('=')
                    .ok_or_else(|| IoError::Usage(format!("--type-file expects NAME=PATH, got `{entry}`")))?;
                types.insert(name.to_string(), read_type(&read_text(Path::new(path))?)?);
            }
            let (rows, warnings) = table::table2(&types);
            for w in warnings {
                let _ = writeln!(io.err, "warning: {w}");
            }
            emit_rows(&rows, format, io)
        }
        Command::Build { name, out } => {
            let p = build(name)?;
            write_text(out, &write_off(&p))?;
            let area = p.measures()?.surface_area;
            io.info(&format!("{name}: {} faces, unit-volume area {area:.4}", p.face_count()));
            Ok(0)
        }
        Command::Sommerville { k, out } => {
            let p = build_sommerville(*k)?;
            write_text(out, &write_off(&p))?;
            io.info(&format!("No. {k}: unit-volume area {:.4}", p.measures()?.surface_area));
            Ok(0)
        }
        Command::Check { path, lindelof } => check(path, *lindelof, format, io),
        Command::Optimize { type_path, symmetry, seed_index, seed, out } => {
            optimize(type_path, symmetry.as_deref(), *seed_index, seed.as_deref(), out, format, io)
        }
        Command::Prism { ngon, base, out } => prism(*ngon, base.as_deref(), out.as_deref(), format, io),
        Command::TruncateExp { path, vertex, steps } => {
            let p = read_off(&read_text(path)?)?;
            let e = truncation_experiment(&p, *vertex, *steps)?;
            if format == Format::Json {
                let value = json!({
                    "base_cost": e.base_cost,
                    "max_depth": e.max_depth,
                    "samples": e.samples,
                    "derivative_at_zero": e.derivative_at_zero,
                });
                io.emit(&to_json(&value)?)?;
            } else {
                let mut text = String::from("t,cost\n");
                for (t, c) in &e.samples {
                    let _ = writeln!(text, "{t:e},{c:.12}");
                }
                io.emit(&text)?;
                io.info(&format!("base cost {:.12}, slope at zero {:.6e}", e.base_cost, e.derivative_at_zero));
            }
            Ok(0)
        }
        Command::Facevectors { n } => facevectors(*n, format, io),
    }
}

fn check(path: &Path, lindelof: bool, format: Format, io: &mut Streams) -> Result<u8> {
    let mesh = parse_off(&read_text(path)?, 3)?;
    let p = Polyhedron::new(mesh.vertices, mesh.faces);
    let report = p.validate();
    if !report.is_valid() {
        return Err(Error::InvalidPolyhedron(report).into());
    }
    let m = p.measures()?;
    let unit_area = m.unit_volume_area();
    let unit_diameter = m.diameter / m.volume.cbrt();
    let bound = goldberg_bound(p.face_count() as u32)?.bound_value;
    let diameter_limit = diameter_bound(unit_area);
    let convex = p.is_convex();
    let angles = dihedral_angles(&p)?;
    let tangency = if lindelof { Some(lindelof_check(&p)?) } else { None };

    if format == Format::Json {
        let mut value = json!({
            "valid": true,
            "convex": convex,
            "vertices": p.vertex_count(),
            "faces": p.face_count(),
            "edges": p.edges().len(),
            "surface_area": m.surface_area,
            "volume": m.volume,
            "cost": m.cost,
            "diameter": m.diameter,
            "unit_volume_area": unit_area,
            "goldberg_bound": bound,
            "goldberg_margin": unit_area - bound,
            "unit_volume_diameter": unit_diameter,
            "diameter_bound": diameter_limit,
            "dihedral_angles": angles.iter().map(|(e, a)| json!({"edge": [e.0, e.1], "degrees": a})).collect::<Vec<_>>(),
        });
        if let Some(r) = &tangency {
            value["lindelof"] = json!({
                "center": r.insphere.center.to_array(),
                "radius": r.insphere.radius,
                "max_residual": r.max_residual(),
                "max_deficit": r.max_deficit(),
                "faces": r.faces.iter().map(|f| json!({
                    "tangency": f.tangency.to_array(),
                    "centroid": f.centroid.to_array(),
                    "residual": f.residual,
                    "deficit": f.deficit,
                })).collect::<Vec<_>>(),
            });
        }
        io.emit(&to_json(&value)?)?;
        return Ok(0);
    }

    let mut text = String::new();
    let _ = writeln!(text, "valid: yes");
    let _ = writeln!(text, "convex: {}", if convex { "yes" } else { "no" });
    let _ = writeln!(text, "vertices {} faces {} edges {}", p.vertex_count(), p.face_count(), p.edges().len());
    let _ = writeln!(text, "surface area {:.10}", m.surface_area);
    let _ = writeln!(text, "volume {:.10}", m.volume);
    let _ = writeln!(text, "cost {:.10}", m.cost);
    let _ = writeln!(text, "diameter {:.10}", m.diameter);
    let _ = writeln!(text, "unit-volume area {unit_area:.4}");
    let _ = writeln!(text, "goldberg bound {bound:.4}, margin {:.3e}", unit_area - bound);
    let _ = writeln!(
        text,
        "unit-volume diameter {unit_diameter:.4} <= {diameter_limit:.4}: {}",
        if unit_diameter <= diameter_limit { "yes" } else { "no" }
    );
    let _ = writeln!(text, "dihedral angles (degrees):");
    for (e, a) in &angles {
        let _ = writeln!(text, "  {} {} {a:.6}", e.0, e.1);
    }
    if let Some(r) = &tangency {
        let c = r.insphere.center;
        let _ = writeln!(text, "insphere centre ({:.6}, {:.6}, {:.6}) radius {:.6}", c.x, c.y, c.z, r.insphere.radius);
        for (f, t) in r.faces.iter().enumerate() {
            let _ = writeln!(text, "  face {f}: residual {:.3e} deficit {:.3e}", t.residual, t.deficit);
        }
        let _ = writeln!(text, "max residual {:.4}", r.max_residual());
        let _ = writeln!(text, "max deficit {:.4}", r.max_deficit());
    }
    io.emit(&text)?;
    Ok(0)
}

fn optimize(
    type_path: &Path,
    symmetry: Option<&str>,
    seed_index: Option<usize>,
    seed: Option<&Path>,
    out: &Path,
    format: Format,
    io: &mut Streams,
) -> Result<u8> {
    let ty = read_type(&read_text(type_path)?)?;
    let start = match seed {
        Some(path) => {
            let p = read_off(&read_text(path)?)?;
            if !CombinatorialType::of(&p).is_equivalent(&ty) {
                return Err(IoError::Usage(format!(
                    "{} does not have the type of {}",
                    path.display(),
                    type_path.display()
                )));
            }
            // Symmetry elements act about the origin, where the insphere centre goes.
            TypeEmbedding::from_polyhedron(&canonical_placement(&p)?)?
        }
        None => TypeEmbedding::tangential_seed(&ty, 0)?,
    };
    let ty = start.combinatorial_type().clone();
    let group = symmetry.map(|s| SymmetrySpec::parse(s).and_then(|spec| spec.bind(&start))).transpose()?;
    let options = OptimizeOptions { seed_index, ..OptimizeOptions::default() };
    let result = minimize_within_type(&ty, &start, group.as_ref(), &options)?;
    write_text(out, &write_off(&result.polyhedron))?;
    let residual = result.lindelof.as_ref().map(|r| r.max_residual());
    match format {
        Format::Json => {
            let value = json!({
                "surface_area": result.surface_area,
                "cost": result.cost,
                "restart": result.restart,
                "iterations": result.iterations,
                "lindelof_max_residual": residual,
                "trace": result.trace,
            });
            io.emit(&to_json(&value)?)?;
        }
        Format::Csv | Format::Text => {
            let mut text = String::from("iteration,cost\n");
            for (i, c) in result.trace.iter().enumerate() {
                let _ = writeln!(text, "{i},{c:.12}");
            }
            io.emit(&text)?;
            let tangency = residual.map(|r| format!(", Lindelöf residual {r:.2e}")).unwrap_or_default();
            io.info(&format!(
                "restart {} converged after {} iterations: unit-volume area {:.6}{tangency}",
                result.restart, result.iterations, result.surface_area
            ));
        }
    }
    Ok(0)
}

fn prism(ngon: Option<usize>, base: Option<&Path>, out: Option<&Path>, format: Format, io: &mut Streams) -> Result<u8> {
    let polygon = match (ngon, base) {
        (Some(k), _) => regular_polygon(k)?,
        (None, Some(path)) => {
            let mesh = parse_off(&read_text(path)?, 3)?;
            let [face] = &mesh.faces[..] else {
                return Err(IoError::Usage(format!("{}: a base file holds exactly one face", path.display())));
            };
            let z = mesh.vertices[face[0]].z;
            if face.iter().any(|&i| (mesh.vertices[i].z - z).abs() > 1e-12) {
                return Err(IoError::Usage(format!("{}: the base must lie in a plane z = const", path.display())));
            }
            face.iter().map(|&i| [mesh.vertices[i].x, mesh.vertices[i].y]).collect()
        }
        (None, None) => return Err(IoError::Usage("give --ngon or --base".into())),
    };
    let result = optimal_prism(&polygon)?;
    if let Some(path) = out {
        write_text(path, &write_off(&result.polyhedron))?;
    }
    let spec = &result.spec;
    let text = match format {
        Format::Json => to_json(&json!({
            "height": spec.height,
            "surface_area": result.surface_area,
            "base_area": spec.base_area,
            "base_perimeter": spec.base_perimeter,
        }))?,
        Format::Csv => format!(
            "height,surface_area,base_area,base_perimeter\n{:.15},{:.15},{:.15},{:.15}\n",
            spec.height, result.surface_area, spec.base_area, spec.base_perimeter
        ),
        Format::Text => format!(
            "height {:.12}\nsurface area {:.12}\nbase area {:.12}\nbase perimeter {:.12}\n",
            spec.height, result.surface_area, spec.base_area, spec.base_perimeter
        ),
    };
    io.emit(&text)?;
    Ok(0)
}

fn facevectors(n: usize, format: Format, io: &mut Streams) -> Result<u8> {
    let vectors = enumerate_face_vectors(n)?;
    let expected = binomial(2 * n as u64 - 4, n as u64);
    if format == Format::Json {
        let value = json!({
            "n": n,
            "count": vectors.len(),
            "binomial": expected,
            "face_vectors": vectors.iter().map(|v| json!({
                "counts": v.counts(),
                "even_side_sum": v.has_even_side_sum(),
                "euler_admissible": v.is_euler_admissible(),
            })).collect::<Vec<_>>(),
        });
        io.emit(&to_json(&value)?)?;
        return Ok(0);
    }
    let mut text = String::new();
    let header: Vec<String> = (3..n).map(|i| format!("x{i}")).collect();
    let _ = writeln!(text, "{},even_side_sum,euler_admissible", header.join(","));
    for v in &vectors {
        let counts: Vec<String> = v.counts().iter().map(usize::to_string).collect();
        let _ = writeln!(text, "{},{},{}", counts.join(","), v.has_even_side_sum(), v.is_euler_admissible());
    }
    io.emit(&text)?;
    io.info(&format!("{} face vectors; C({}, {n}) = {expected}", vectors.len(), 2 * n - 4));
    Ok(0)
}
