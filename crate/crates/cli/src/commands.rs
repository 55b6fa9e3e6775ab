//! The batch commands. Each returns the process exit code: 0 for success or
//! a true property, 1 for a false property (with a witness printed), with
//! input problems reported as errors and mapped to exit code 2 by `main`.

use std::fs;
use std::path::Path;

use cubecross::rigidity::{
    extend_isomorphism, is_mobius, reconstruct, CrossRatioOracle, MobiusMap, RigidityError,
    verify_uniqueness,
};
use cubecross::roller::{
    classify_vertices, cross_ratio, cross_ratio_wall_only, crt, is_admissible, median_bar,
    ComplexDescription, Point, RollerError,
};

use crate::format;

pub struct Options {
    pub depth: Option<u32>,
    pub seed: Option<u64>,
    pub quiet: bool,
}

impl Options {
    fn header(&self, command: &str, depth: Option<u32>) {
        if self.quiet {
            return;
        }
        println!("# cubecross {command}");
        if let Some(d) = depth {
            println!("# depth {d}");
        }
        if let Some(s) = self.seed {
            println!("# seed {s}");
        }
    }
}

pub enum CommandError {
    /// Bad input: parse failures, unresolved names, violated preconditions.
    Input(String),
}

impl From<format::ParseError> for CommandError {
    fn from(e: format::ParseError) -> Self {
        CommandError::Input(e.to_string())
    }
}

type CmdResult = Result<i32, CommandError>;

fn read(path: &Path) -> Result<String, CommandError> {
    fs::read_to_string(path)
        .map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<ComplexDescription, CommandError> {
    Ok(format::parse_complex(&read(path)?)?)
}

fn resolve_points(
    complex: &ComplexDescription,
    names: &[String],
) -> Result<Vec<Point>, CommandError> {
    let mut unresolved = Vec::new();
    let mut points = Vec::new();
    for name in names {
        match complex.resolve_point(name) {
            Ok(p) => points.push(p),
            Err(_) => unresolved.push(name.clone()),
        }
    }
    if !unresolved.is_empty() {
        return Err(CommandError::Input(format!(
            "unresolved point names: {}",
            unresolved.join(" ")
        )));
    }
    Ok(points)
}

/// The depth a query over these points is computed at.
fn effective_depth(
    complex: &ComplexDescription,
    points: &[Point],
    requested: Option<u32>,
) -> u32 {
    let policy = complex.policy_depth(points.iter());
    match requested {
        Some(d) => d.max(complex.max_ray_depth(points.iter()) + 1),
        None => policy,
    }
}

pub fn cmd_validate(opts: &Options, file: &Path) -> CmdResult {
    let text = read(file)?;
    opts.header("validate", None);
    match format::parse_complex(&text) {
        Ok(complex) => {
            println!("complex {}: valid", complex.name());
            let report = complex.eligibility();
            if report.eligible() {
                println!("eligible yes");
            } else {
                println!("eligible no");
                if report.is_point {
                    println!("reason point");
                }
                if report.is_line {
                    println!("reason line");
                }
                for v in &report.extremal_vertices {
                    println!("extremal {}", v.render());
                }
            }
            Ok(0)
        }
        Err(format::ParseError::Load(e @ RollerError::CoreNotMedian { .. })) => {
            // the file parsed but a core fails the median-graph property
            println!("invalid: {e}");
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_boundary(opts: &Options, file: &Path) -> CmdResult {
    let complex = load_complex(file)?;
    let depth = opts.depth.unwrap_or(1);
    opts.header("boundary", Some(depth));
    let enumeration = complex.enumerate_boundary(depth);
    println!(
        "{}",
        if enumeration.complete {
            "complete"
        } else {
            "partial"
        }
    );
    for (name, point) in &enumeration.points {
        println!("point {name} = {}", point.render());
    }
    Ok(0)
}

pub fn cmd_cr(opts: &Options, file: &Path, names: &[String]) -> CmdResult {
    let complex = load_complex(file)?;
    let points = resolve_points(&complex, names)?;
    let depth = effective_depth(&complex, &points, opts.depth);
    opts.header("cr", Some(depth));
    let tuple = [&points[0], &points[1], &points[2], &points[3]];
    if !is_admissible(&complex, tuple) {
        println!("not admissible");
        if let Ok(Some(value)) = cross_ratio_wall_only(&complex, tuple) {
            if !opts.quiet {
                println!("# wall-formula value {value}");
            }
        }
        return Ok(1);
    }
    let value = cross_ratio(&complex, tuple).map_err(internal)?;
    println!("{value}");
    Ok(0)
}

pub fn cmd_crt(opts: &Options, file: &Path, names: &[String]) -> CmdResult {
    let complex = load_complex(file)?;
    let points = resolve_points(&complex, names)?;
    let depth = effective_depth(&complex, &points, opts.depth);
    opts.header("crt", Some(depth));
    let tuple = [&points[0], &points[1], &points[2], &points[3]];
    let value = crt(&complex, tuple).map_err(internal)?;
    println!("{value}");
    Ok(0)
}

pub fn cmd_median(opts: &Options, file: &Path, names: &[String]) -> CmdResult {
    let complex = load_complex(file)?;
    let points = resolve_points(&complex, names)?;
    let depth = effective_depth(&complex, &points, opts.depth);
    opts.header("median", Some(depth));
    let m = median_bar(&complex, &points[0], &points[1], &points[2]).map_err(internal)?;
    println!("{}", m.render());
    Ok(0)
}

pub fn cmd_decompose(opts: &Options, file: &Path) -> CmdResult {
    let complex = load_complex(file)?;
    opts.header("decompose", None);
    let decomposition = classify_vertices(&complex).map_err(|e| match e {
        RollerError::ProductUnsupported | RollerError::LineComplex | RollerError::PointComplex => {
            CommandError::Input(e.to_string())
        }
        other => internal(other),
    })?;
    for fat in &decomposition.fat {
        println!("fat {fat}");
    }
    for (a, b) in &decomposition.fat_edges {
        println!("fat-edge {a} {b}");
    }
    for seg in &decomposition.segments {
        let via = if seg.interior.is_empty() {
            String::new()
        } else {
            format!(" via {}", seg.interior.join(" "))
        };
        println!(
            "segment {} {} length {}{via}",
            seg.ends.0, seg.ends.1, seg.length
        );
    }
    for ray in &decomposition.rays {
        let via = if ray.core_prefix.is_empty() {
            String::new()
        } else {
            format!(" via {}", ray.core_prefix.join(" "))
        };
        println!("ray {} at {}{via}", ray.ray_id, ray.base);
    }
    Ok(0)
}

pub fn cmd_oracle_dump(opts: &Options, file: &Path) -> CmdResult {
    let complex = load_complex(file)?;
    opts.header("oracle-dump", None);
    let oracle = CrossRatioOracle::from_complex(&complex).map_err(internal)?;
    print!("{}", format::write_oracle(complex.name(), &oracle));
    Ok(0)
}

pub fn cmd_reconstruct(opts: &Options, dump: &Path) -> CmdResult {
    let (_, oracle) = format::parse_oracle(&read(dump)?)?;
    opts.header("reconstruct", None);
    match reconstruct(&oracle) {
        Ok(result) => {
            let complex = result.to_description().map_err(internal)?;
            print!("{}", format::write_complex(&complex));
            Ok(0)
        }
        Err(RigidityError::CorruptOracle(message)) => {
            println!("reconstruction failed: {message}");
            Ok(1)
        }
        Err(e) => Err(internal(e)),
    }
}

pub fn cmd_check_mobius(
    opts: &Options,
    dump_source: &Path,
    dump_target: &Path,
    pairing: &Path,
) -> CmdResult {
    let (_, source) = format::parse_oracle(&read(dump_source)?)?;
    let (_, target) = format::parse_oracle(&read(dump_target)?)?;
    let map = format::parse_pairing(&read(pairing)?)?;
    opts.header("check-mobius", None);
    let verdict = is_mobius(&map, &source, &target)
        .map_err(|e| CommandError::Input(e.to_string()))?;
    let mobius = verdict.is_mobius();
    let surjective = verdict.surjective_onto_boundary();
    let extendable = mobius && verdict.bijective() && surjective && source.is_complete();
    println!(
        "{}; {}; extension {}",
        if mobius { "MOBIUS" } else { "NOT MOBIUS" },
        if surjective {
            "SURJECTIVE"
        } else {
            "NOT SURJECTIVE"
        },
        if extendable { "allowed" } else { "refused" }
    );
    println!("injective {}", verdict.injective);
    println!("surjective-onto-listed-ids {}", verdict.surjective_onto_ids);
    println!("target-boundary-complete {}", verdict.target_complete);
    if let Some(ce) = verdict
        .forward
        .counterexample
        .as_ref()
        .or(verdict
            .inverse
            .as_ref()
            .and_then(|c| c.counterexample.as_ref()))
    {
        println!(
            "counterexample {} {} {} {}",
            ce.tuple[0], ce.tuple[1], ce.tuple[2], ce.tuple[3]
        );
        println!("source-crt {}", ce.source_crt);
        println!(
            "image admissible={} crt={}",
            ce.image_admissible as u8, ce.image_crt
        );
    }
    Ok(if mobius { 0 } else { 1 })
}

pub fn cmd_verify_theorem(
    opts: &Options,
    file_source: &Path,
    file_target: &Path,
    pairing: &Path,
) -> CmdResult {
    let source = load_complex(file_source)?;
    let target = load_complex(file_target)?;
    let map = format::parse_pairing(&read(pairing)?)?;
    opts.header("verify-theorem", None);
    let source_oracle = CrossRatioOracle::from_complex(&source).map_err(internal)?;
    let target_oracle = CrossRatioOracle::from_complex(&target).map_err(internal)?;
    let verdict = is_mobius(&map, &source_oracle, &target_oracle)
        .map_err(|e| CommandError::Input(e.to_string()))?;
    if !verdict.is_mobius() {
        println!("NOT MOBIUS");
        if let Some(ce) = verdict
            .forward
            .counterexample
            .as_ref()
            .or(verdict
                .inverse
                .as_ref()
                .and_then(|c| c.counterexample.as_ref()))
        {
            println!(
                "counterexample {} {} {} {}",
                ce.tuple[0], ce.tuple[1], ce.tuple[2], ce.tuple[3]
            );
        }
        return Ok(1);
    }
    println!("MOBIUS");
    let mobius = match MobiusMap::verify(map, &source_oracle, &target_oracle) {
        Ok(m) => m,
        Err(e) => {
            println!("extension refused: {e}");
            return Ok(1);
        }
    };
    let extension = match extend_isomorphism(&mobius, &source, &target) {
        Ok(ext) => ext,
        Err(RigidityError::ExtensionRefused(reason)) => {
            println!("extension refused: {reason}");
            return Ok(1);
        }
        Err(e) => return Err(internal(e)),
    };
    for (from, to) in extension.core_map() {
        println!("F v:{from} -> {}", to.render());
    }
    for (from, to) in extension.boundary_map() {
        println!("F end:{from} -> end:{to}");
    }
    let report =
        verify_uniqueness(&mobius, &source, &target, &extension).map_err(internal)?;
    println!("isomorphisms {}", report.total_isomorphisms);
    println!("extensions-of-f {}", report.extensions_of_map);
    if report.unique_and_matches {
        println!("UNIQUE");
        Ok(0)
    } else {
        println!("NOT UNIQUE");
        Ok(1)
    }
}

fn internal(e: impl std::fmt::Display) -> CommandError {
    CommandError::Input(e.to_string())
}
