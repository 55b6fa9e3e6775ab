//! Frozen expected values for the canonical fixtures. The derived numbers
//! were computed with an independent brute-force wall enumeration on proxy
//! graphs before this module was written.

use super::fixtures;
use super::*;

fn pt(complex: &ComplexDescription, name: &str) -> Point {
    complex.resolve_point(name).unwrap()
}

fn quad<'a>(
    complex: &'a ComplexDescription,
    names: [&str; 4],
) -> Vec<Point> {
    names.iter().map(|n| pt(complex, n)).collect()
}

fn fin(n: u64) -> Count {
    Count::Finite(n)
}

#[test]
fn eligibility_flags() {
    let star = fixtures::star4();
    assert!(star.eligibility().eligible());

    let line = fixtures::line();
    assert!(line.eligibility().is_line);
    assert!(!line.eligibility().eligible());

    let square = fixtures::bare_square();
    assert_eq!(square.eligibility().extremal_vertices.len(), 4);
    assert!(!square.eligibility().eligible());

    let zzz = fixtures::zzz();
    assert!(zzz.eligibility().eligible());
}

#[test]
fn load_rejects_bad_input() {
    use crate::median::MedianGraph;
    let triangle = MedianGraph::new(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
        .unwrap();
    let err = ComplexDescription::load(
        "bad",
        vec![(triangle, vec![])],
        Default::default(),
    )
    .unwrap_err();
    assert!(matches!(err, RollerError::CoreNotMedian { .. }));

    let core = MedianGraph::new(["a"], Vec::<(&str, &str)>::new()).unwrap();
    let err = ComplexDescription::load(
        "bad",
        vec![(core, vec![("r".to_string(), "nope".to_string())])],
        Default::default(),
    )
    .unwrap_err();
    assert!(matches!(err, RollerError::UnknownRayBase { .. }));
}

#[test]
fn truncation_sizes() {
    assert_eq!(fixtures::star4().truncation(2).graph.vertex_count(), 9);
    assert_eq!(fixtures::zzz().truncation(1).graph.vertex_count(), 27);
    assert_eq!(fixtures::barbell(3).truncation(1).graph.vertex_count(), 10);
}

#[test]
fn boundary_enumeration() {
    let star = fixtures::star4();
    let b = star.enumerate_boundary(1);
    assert!(b.complete);
    let names: Vec<&str> = b.points.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, ["x", "y", "z", "zp"]);

    let barbell = fixtures::barbell(4);
    let b = barbell.enumerate_boundary(1);
    assert!(b.complete);
    assert_eq!(b.points.len(), 6);

    let zzz = fixtures::zzz();
    let b = zzz.enumerate_boundary(0);
    assert!(!b.complete);
    assert_eq!(b.points.len(), 26);
}

#[test]
fn star4_wall_counts() {
    let star = fixtures::star4();
    let [x, y, z, zp] = [
        pt(&star, "x"),
        pt(&star, "y"),
        pt(&star, "z"),
        pt(&star, "zp"),
    ];
    assert_eq!(
        walls_between(&star, &[x.clone(), z], &[y.clone(), zp]).unwrap(),
        fin(0)
    );
    assert_eq!(
        walls_between(&star, &[x.clone()], &[y.clone()]).unwrap(),
        Count::Infinite
    );
    let c = pt(&star, "v:c");
    assert_eq!(gromov_product(&star, &x, &y, &c).unwrap(), fin(0));
    assert_eq!(gromov_product(&star, &x, &x, &c).unwrap(), Count::Infinite);
}

#[test]
fn zzz_wall_counts_and_products() {
    let zzz = fixtures::zzz();
    let [x, y, z, zp] = [
        pt(&zzz, "x"),
        pt(&zzz, "y"),
        pt(&zzz, "z"),
        pt(&zzz, "zp"),
    ];
    assert_eq!(
        walls_between(&zzz, &[x.clone(), z.clone()], &[y.clone(), zp.clone()]).unwrap(),
        fin(1)
    );
    assert_eq!(
        walls_between(&zzz, &[x.clone(), zp.clone()], &[y.clone(), z.clone()]).unwrap(),
        fin(1)
    );
    let origin = pt(&zzz, "(v:c,v:c,v:c)");
    assert_eq!(gromov_product(&zzz, &x, &y, &origin).unwrap(), fin(1));
    assert_eq!(gromov_product(&zzz, &x, &z, &origin).unwrap(), fin(0));
    assert_eq!(gromov_product(&zzz, &x, &zp, &origin).unwrap(), fin(1));
    assert_eq!(gromov_product(&zzz, &y, &z, &origin).unwrap(), fin(0));
    assert_eq!(gromov_product(&zzz, &y, &zp, &origin).unwrap(), fin(1));
    assert_eq!(gromov_product(&zzz, &z, &zp, &origin).unwrap(), fin(0));
}

#[test]
fn medians() {
    let star = fixtures::star4();
    let [x, y, z, zp] = [
        pt(&star, "x"),
        pt(&star, "y"),
        pt(&star, "z"),
        pt(&star, "zp"),
    ];
    let c = pt(&star, "v:c");
    assert_eq!(median_bar(&star, &x, &y, &z).unwrap(), c);
    assert_eq!(median_bar(&star, &x, &y, &zp).unwrap(), c);
    // majority rule
    assert_eq!(median_bar(&star, &x, &x, &y).unwrap(), x);

    let zzz = fixtures::zzz();
    let [x, y, z, zp] = [
        pt(&zzz, "x"),
        pt(&zzz, "y"),
        pt(&zzz, "z"),
        pt(&zzz, "zp"),
    ];
    assert_eq!(
        median_bar(&zzz, &x, &y, &z).unwrap(),
        pt(&zzz, "(v:c,v:c,r:p:1)")
    );
    assert_eq!(
        median_bar(&zzz, &x, &y, &zp).unwrap(),
        pt(&zzz, "(r:p:1,r:p:1,r:p:1)")
    );
}

#[test]
fn admissibility() {
    let star = fixtures::star4();
    let q = quad(&star, ["x", "x", "y", "y"]);
    assert!(is_admissible(&star, [&q[0], &q[1], &q[2], &q[3]]));
    let q = quad(&star, ["x", "x", "x", "y"]);
    assert!(!is_admissible(&star, [&q[0], &q[1], &q[2], &q[3]]));

    let zzz = fixtures::zzz();
    let q = quad(&zzz, ["x", "y", "z", "zp"]);
    assert!(is_admissible(&zzz, [&q[0], &q[1], &q[2], &q[3]]));
}

fn all_orderings(names: [&str; 4]) -> Vec<[&str; 4]> {
    let mut out = Vec::new();
    let idx = [0, 1, 2, 3];
    let mut perm = idx;
    // Heap's algorithm, iterative
    let mut c = [0usize; 4];
    out.push(perm.map(|i| names[i]));
    let mut i = 0;
    while i < 4 {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            out.push(perm.map(|i| names[i]));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    assert_eq!(out.len(), 24);
    out
}

#[test]
fn star4_cross_ratio_vanishes_in_every_order() {
    let star = fixtures::star4();
    for names in all_orderings(["x", "y", "z", "zp"]) {
        let q = quad(&star, names);
        let cr = cross_ratio(&star, [&q[0], &q[1], &q[2], &q[3]]).unwrap();
        assert_eq!(cr, CrossRatio::Finite(0), "ordering {names:?}");
    }
}

#[test]
fn zzz_cross_ratio_vanishes_in_every_order() {
    let zzz = fixtures::zzz();
    for names in all_orderings(["x", "y", "z", "zp"]) {
        let q = quad(&zzz, names);
        let cr = cross_ratio(&zzz, [&q[0], &q[1], &q[2], &q[3]]).unwrap();
        assert_eq!(cr, CrossRatio::Finite(0), "ordering {names:?}");
    }
}

#[test]
fn barbell_cross_ratio_is_segment_length() {
    for len in [1, 3, 5] {
        let barbell = fixtures::barbell(len);
        let q = quad(&barbell, ["x1", "y1", "x2", "y2"]);
        let cr = cross_ratio(&barbell, [&q[0], &q[1], &q[2], &q[3]]).unwrap();
        assert_eq!(cr, CrossRatio::Finite(len as i64));
    }
}

#[test]
fn crt_values() {
    let star = fixtures::star4();
    let q = quad(&star, ["x", "y", "z", "zp"]);
    let t = crt(&star, [&q[0], &q[1], &q[2], &q[3]]).unwrap();
    assert_eq!(t, CrtTriple::new(fin(0), fin(0), fin(0)));

    let zzz = fixtures::zzz();
    let q = quad(&zzz, ["x", "y", "z", "zp"]);
    let origin = pt(&zzz, "(v:c,v:c,v:c)");
    let raw = crt_at_basepoint(&zzz, [&q[0], &q[1], &q[2], &q[3]], &origin).unwrap();
    // raw sums at the origin are (1, 1, 1); the class is 0:0:0
    assert_eq!(raw, CrtTriple::new(fin(1), fin(1), fin(1)));
    assert_eq!(raw.to_string(), "0:0:0");
    let t = crt(&zzz, [&q[0], &q[1], &q[2], &q[3]]).unwrap();
    assert_eq!(t, CrtTriple::new(fin(0), fin(0), fin(0)));

    let barbell = fixtures::barbell(4);
    let q = quad(&barbell, ["x1", "y1", "x2", "y2"]);
    let t = crt(&barbell, [&q[0], &q[1], &q[2], &q[3]]).unwrap();
    assert_eq!(t, CrtTriple::new(fin(0), fin(4), fin(0)));
}

#[test]
fn cross_ratio_rejects_inadmissible() {
    let star = fixtures::star4();
    let q = quad(&star, ["x", "x", "x", "y"]);
    assert!(matches!(
        cross_ratio(&star, [&q[0], &q[1], &q[2], &q[3]]),
        Err(RollerError::NotAdmissible)
    ));
    // the wall form is still determinate here
    let wall_only = cross_ratio_wall_only(&star, [&q[0], &q[1], &q[2], &q[3]]).unwrap();
    assert_eq!(wall_only, Some(CrossRatio::Finite(0)));
}

#[test]
fn infinite_cross_ratio_on_admissible_tuple() {
    let star = fixtures::star4();
    // (x, z, x, y): the pairing x..z / z..y makes (x.x) infinite once
    let q = quad(&star, ["x", "z", "x", "y"]);
    assert!(is_admissible(&star, [&q[0], &q[1], &q[2], &q[3]]));
    let cr = cross_ratio(&star, [&q[0], &q[1], &q[2], &q[3]]).unwrap();
    assert_eq!(cr, CrossRatio::PlusInfinity);
}

#[test]
fn line_union_checks() {
    let star = fixtures::star4();
    let c = pt(&star, "v:c");
    let rx = SymbolicRay::new(&star, vec![c.clone()], 0, "x").unwrap();
    let ry = SymbolicRay::new(&star, vec![c.clone()], 0, "y").unwrap();
    assert!(is_line_union(&star, &rx, &ry).unwrap());
    assert!(!is_line_union(&star, &rx, &rx).unwrap());

    let zzz = fixtures::zzz();
    let origin = pt(&zzz, "(v:c,v:c,v:c)");
    let e1 = SymbolicRay::new(&zzz, vec![origin.clone()], 0, "p").unwrap();
    let e2 = SymbolicRay::new(&zzz, vec![origin.clone()], 1, "p").unwrap();
    assert!(is_line_union(&zzz, &e1, &e2).unwrap());

    let barbell = fixtures::barbell(2);
    let p = pt(&barbell, "v:p");
    let q = pt(&barbell, "v:q");
    let r1 = SymbolicRay::new(&barbell, vec![p.clone()], 0, "x1").unwrap();
    let r2 = SymbolicRay::new(&barbell, vec![q.clone()], 0, "y1").unwrap();
    assert!(matches!(
        is_line_union(&barbell, &r1, &r2),
        Err(RollerError::DifferentBases(..))
    ));
}

#[test]
fn straight_extension_star4() {
    let star = fixtures::star4();
    let c = pt(&star, "v:c");
    let x1 = pt(&star, "r:x:1");
    let line = extend_to_straight_line(&star, &c, &x1).unwrap();
    let (back, fwd) = line.endpoints(&star);
    assert_eq!(fwd, pt(&star, "x"));
    // the backward end is the least-id other ray
    assert_eq!(back, pt(&star, "y"));
}

#[test]
fn straight_extension_barbell_runs_through_segment() {
    let barbell = fixtures::barbell(3);
    let s1 = pt(&barbell, "v:s1");
    let s2 = pt(&barbell, "v:s2");
    let line = extend_to_straight_line(&barbell, &s1, &s2).unwrap();
    let (back, fwd) = line.endpoints(&barbell);
    assert_eq!(back, pt(&barbell, "x1"));
    assert_eq!(fwd, pt(&barbell, "y1"));
}

#[test]
fn straight_extension_line_gives_whole_line() {
    let line_cx = fixtures::line();
    let c = pt(&line_cx, "v:c");
    let p1 = pt(&line_cx, "r:p:1");
    let line = extend_to_straight_line(&line_cx, &c, &p1).unwrap();
    let (back, fwd) = line.endpoints(&line_cx);
    assert_eq!(back, pt(&line_cx, "m"));
    assert_eq!(fwd, pt(&line_cx, "p"));
}

#[test]
fn straight_extension_refuses_extremal_complex() {
    let square = fixtures::bare_square();
    let a = pt(&square, "v:a");
    let b = pt(&square, "v:b");
    assert!(matches!(
        extend_to_straight_line(&square, &a, &b),
        Err(RollerError::Ineligible(_))
    ));
}

#[test]
fn classify_fixtures() {
    let star = fixtures::star4();
    let d = classify_vertices(&star).unwrap();
    assert_eq!(d.fat, ["c"]);
    assert!(d.segments.is_empty());
    assert_eq!(d.rays.len(), 4);
    assert!(d.rays.iter().all(|r| r.base == "c" && r.core_prefix.is_empty()));

    let barbell = fixtures::barbell(3);
    let d = classify_vertices(&barbell).unwrap();
    assert_eq!(d.fat, ["p", "q"]);
    assert_eq!(d.segments.len(), 1);
    let seg = &d.segments[0];
    assert_eq!(seg.ends, ("p".to_string(), "q".to_string()));
    assert_eq!(seg.length, 3);
    assert_eq!(seg.interior, ["s1", "s2"]);
    assert_eq!(d.rays_at("p").len(), 3);
    assert_eq!(d.rays_at("q").len(), 3);

    let barbell1 = fixtures::barbell(1);
    let d = classify_vertices(&barbell1).unwrap();
    assert_eq!(d.fat, ["p", "q"]);
    assert!(d.segments.is_empty());
    assert_eq!(d.fat_edges, [("p".to_string(), "q".to_string())]);

    let square = fixtures::squarecore();
    let d = classify_vertices(&square).unwrap();
    assert_eq!(d.fat, ["a", "b", "c", "d"]);
    assert_eq!(d.fat_edges.len(), 4);
    assert!(d.segments.is_empty());
    assert_eq!(d.rays.len(), 4);

    assert!(matches!(
        classify_vertices(&fixtures::zzz()),
        Err(RollerError::ProductUnsupported)
    ));
    assert!(matches!(
        classify_vertices(&fixtures::line()),
        Err(RollerError::LineComplex)
    ));
}

#[test]
fn counts_stabilize_across_depths() {
    let zzz = fixtures::zzz();
    let [x, y, z, zp] = [
        pt(&zzz, "x"),
        pt(&zzz, "y"),
        pt(&zzz, "z"),
        pt(&zzz, "zp"),
    ];
    for depth in [1, 2, 3] {
        let at = walls_between_at_depth(
            &zzz,
            &[x.clone(), z.clone()],
            &[y.clone(), zp.clone()],
            depth,
        )
        .unwrap();
        let next = walls_between_at_depth(
            &zzz,
            &[x.clone(), z.clone()],
            &[y.clone(), zp.clone()],
            depth + 1,
        )
        .unwrap();
        assert_eq!(at, next);
        assert_eq!(at, fin(1));
    }
    let star = fixtures::star4();
    let x = pt(&star, "x");
    let y = pt(&star, "y");
    for depth in [1, 2, 3] {
        let at =
            walls_between_at_depth(&star, &[x.clone()], &[y.clone()], depth).unwrap();
        assert_eq!(at, Count::Infinite);
    }
}

#[test]
fn gromov_product_matches_median_distance() {
    // exhaustive over fixture boundaries and shallow basepoints
    for complex in fixtures::single_factor_suite() {
        let boundary = complex.enumerate_boundary(1);
        let trunc = complex.truncation(2);
        for (_, x) in &boundary.points {
            for (_, y) in &boundary.points {
                for v in trunc.points() {
                    let g = gromov_product(&complex, x, y, v).unwrap();
                    let m = median_bar(&complex, v, x, y).unwrap();
                    match g {
                        Count::Finite(n) => {
                            assert!(m.is_vertex());
                            assert_eq!(complex.vertex_distance(v, &m).unwrap(), n);
                        }
                        Count::Infinite => assert!(!m.is_vertex()),
                    }
                }
            }
        }
    }
}
