//! Golden tests: the shipped fixture files match the writer, and command
//! outputs are byte-stable and as expected.
//!
//! Set `UPDATE_FIXTURES=1` to regenerate the fixture files from the
//! library's canonical definitions.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cubecross::roller::fixtures;

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

fn fixture_path(name: &str) -> PathBuf {
    repo_root().join("fixtures").join(name)
}

fn write_complex_text(complex: &cubecross::roller::ComplexDescription) -> String {
    // thin re-export of the CLI writer via a reconstruction-free path: the
    // binary's `oracle-dump`/`reconstruct` cover the other direction
    let mut out = String::new();
    out.push_str(&format!("complex {}\n", complex.name()));
    out.push_str(&format!("factors {}\n", complex.factors().len()));
    for factor in complex.factors() {
        out.push_str("factor\n");
        for v in factor.core().ids() {
            out.push_str(&format!("vertex {v}\n"));
        }
        for &(u, v) in factor.core().edges() {
            out.push_str(&format!(
                "edge {} {}\n",
                factor.core().id_of(u),
                factor.core().id_of(v)
            ));
        }
        for ray in factor.rays() {
            out.push_str(&format!("ray {} at {}\n", ray.id, ray.base));
        }
    }
    for (alias, point) in complex.named_points() {
        out.push_str(&format!("point {alias} = {}\n", point.render()));
    }
    out
}

#[test]
fn fixture_files_match_canonical_definitions() {
    let fixtures: Vec<(&str, cubecross::roller::ComplexDescription)> = vec![
        ("star4.cx", fixtures::star4()),
        ("line.cx", fixtures::line()),
        ("barbell1.cx", fixtures::barbell(1)),
        ("barbell3.cx", fixtures::barbell(3)),
        ("squarecore.cx", fixtures::squarecore()),
        ("zzz.cx", fixtures::zzz()),
    ];
    let update = std::env::var("UPDATE_FIXTURES").is_ok();
    for (file, complex) in fixtures {
        let path = fixture_path(file);
        let expected = write_complex_text(&complex);
        if update {
            fs::create_dir_all(path.parent().unwrap()).unwrap();
            fs::write(&path, &expected).unwrap();
            continue;
        }
        let on_disk = fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing fixture {}: {e}", path.display()));
        assert_eq!(on_disk, expected, "fixture {file} is stale");
    }
}

fn cubecross(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubecross"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn cr_on_star4_prints_zero() {
    let path = fixture_path("star4.cx");
    let path = path.to_str().unwrap();
    let out = cubecross(&["--quiet", "cr", path, "x", "y", "z", "zp"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn cr_on_barbell_prints_length() {
    let path = fixture_path("barbell3.cx");
    let path = path.to_str().unwrap();
    let out = cubecross(&["--quiet", "cr", path, "x1", "y1", "x2", "y2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "3\n");
}

#[test]
fn crt_and_median_outputs() {
    let path = fixture_path("zzz.cx");
    let path = path.to_str().unwrap();
    let out = cubecross(&["--quiet", "crt", path, "x", "y", "z", "zp"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0:0:0\n");
    let out = cubecross(&["--quiet", "median", path, "x", "y", "z"]);
    assert_eq!(stdout(&out), "(v:c,v:c,r:p:1)\n");
    let out = cubecross(&["--quiet", "median", path, "x", "y", "zp"]);
    assert_eq!(stdout(&out), "(r:p:1,r:p:1,r:p:1)\n");
}

#[test]
fn inadmissible_tuple_exits_one() {
    let path = fixture_path("star4.cx");
    let path = path.to_str().unwrap();
    let out = cubecross(&["--quiet", "cr", path, "x", "x", "x", "y"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "not admissible\n");
}

#[test]
fn unresolved_names_exit_two() {
    let path = fixture_path("star4.cx");
    let path = path.to_str().unwrap();
    let out = cubecross(&["--quiet", "cr", path, "x", "y", "z", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("nope"), "stderr: {err}");
}

#[test]
fn parse_errors_cite_line_numbers() {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("golden");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.cx");
    fs::write(&path, "complex broken\nfactors 1\nfactor\nvertex a\nwhat now\n").unwrap();
    let out = cubecross(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 5"), "stderr: {err}");
}

#[test]
fn validate_reports_non_median_core() {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("golden");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("triangle.cx");
    fs::write(
        &path,
        "complex triangle\nfactors 1\nfactor\nvertex a\nvertex b\nvertex c\n\
         edge a b\nedge b c\nedge c a\n",
    )
    .unwrap();
    let out = cubecross(&["--quiet", "validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("median failure"));
}

#[test]
fn validate_reports_eligibility() {
    let out = cubecross(&["--quiet", "validate", fixture_path("line.cx").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("eligible no"));
    assert!(text.contains("reason line"));
}

#[test]
fn boundary_listing() {
    let out = cubecross(&[
        "--quiet",
        "--depth",
        "0",
        "boundary",
        fixture_path("zzz.cx").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("partial\n"));
    assert_eq!(text.lines().count(), 1 + 26);
}

#[test]
fn oracle_dump_reconstruct_round_trip() {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("golden");
    fs::create_dir_all(&dir).unwrap();
    let dump_path = dir.join("barbell3.oracle");
    let out = cubecross(&[
        "--quiet",
        "oracle-dump",
        fixture_path("barbell3.cx").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    fs::write(&dump_path, stdout(&out)).unwrap();
    let out = cubecross(&["--quiet", "reconstruct", dump_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // two fat vertices joined by a length-3 segment, three rays each
    assert!(text.contains("complex reconstructed"));
    assert!(text.contains("ray x1 at"));
    assert!(text.contains("ray y3 at"));
    let vertex_count = text.lines().filter(|l| l.starts_with("vertex ")).count();
    assert_eq!(vertex_count, 4);
}

#[test]
fn check_mobius_star4_into_zzz() {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("golden");
    fs::create_dir_all(&dir).unwrap();
    let star_dump = dir.join("star4.oracle");
    let zzz_dump = dir.join("zzz.oracle");
    for (fixture, path) in [("star4.cx", &star_dump), ("zzz.cx", &zzz_dump)] {
        let out = cubecross(&[
            "--quiet",
            "oracle-dump",
            fixture_path(fixture).to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "dump of {fixture}");
        fs::write(path, stdout(&out)).unwrap();
    }
    let pairing = dir.join("star4_zzz.pairing");
    fs::write(&pairing, "pair x x\npair y y\npair z z\npair zp zp\n").unwrap();
    let out = cubecross(&[
        "--quiet",
        "check-mobius",
        star_dump.to_str().unwrap(),
        zzz_dump.to_str().unwrap(),
        pairing.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.starts_with("MOBIUS; NOT SURJECTIVE; extension refused\n"),
        "got: {text}"
    );
}

#[test]
fn verify_theorem_on_identity() {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("golden");
    fs::create_dir_all(&dir).unwrap();
    let pairing = dir.join("star4_id.pairing");
    fs::write(&pairing, "pair x x\npair y y\npair z z\npair zp zp\n").unwrap();
    let star = fixture_path("star4.cx");
    let out = cubecross(&[
        "--quiet",
        "verify-theorem",
        star.to_str().unwrap(),
        star.to_str().unwrap(),
        pairing.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("MOBIUS\n"));
    assert!(text.contains("F v:c -> v:c"));
    assert!(text.contains("isomorphisms 24"));
    assert!(text.contains("extensions-of-f 1"));
    assert!(text.contains("UNIQUE"));
}

#[test]
fn outputs_are_byte_stable() {
    let zzz = fixture_path("zzz.cx");
    let zzz = zzz.to_str().unwrap();
    let first = cubecross(&["cr", zzz, "x", "y", "z", "zp"]);
    let second = cubecross(&["cr", zzz, "x", "y", "z", "zp"]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), second.status.code());
    let first = cubecross(&["oracle-dump", fixture_path("squarecore.cx").to_str().unwrap()]);
    let second = cubecross(&["oracle-dump", fixture_path("squarecore.cx").to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn headers_carry_depth_and_seed() {
    let out = cubecross(&[
        "--seed",
        "7",
        "cr",
        fixture_path("star4.cx").to_str().unwrap(),
        "x",
        "y",
        "z",
        "zp",
    ]);
    let text = stdout(&out);
    assert!(text.contains("# cubecross cr"));
    assert!(text.contains("# depth "));
    assert!(text.contains("# seed 7"));
}
