//! Canonical complexes used throughout the tests and shipped with the CLI.

use std::collections::BTreeMap;

use crate::median::MedianGraph;

use super::complex::{ComplexDescription, Coord};

fn ray(id: &str, base: &str) -> (String, String) {
    (id.to_string(), base.to_string())
}

/// One vertex with four rays `x`, `y`, `z`, `zp`: a tree with one branch
/// point and four boundary points.
pub fn star4() -> ComplexDescription {
    let core = MedianGraph::new(["c"], Vec::<(&str, &str)>::new()).unwrap();
    let rays = vec![ray("x", "c"), ray("y", "c"), ray("z", "c"), ray("zp", "c")];
    let named = ["x", "y", "z", "zp"]
        .into_iter()
        .map(|r| (r.to_string(), vec![Coord::End(r.to_string())]))
        .collect();
    ComplexDescription::load("star4", vec![(core, rays)], named).unwrap()
}

/// One vertex with rays `m` and `p`: the real line.
pub fn line() -> ComplexDescription {
    let core = MedianGraph::new(["c"], Vec::<(&str, &str)>::new()).unwrap();
    let rays = vec![ray("m", "c"), ray("p", "c")];
    let named = ["m", "p"]
        .into_iter()
        .map(|r| (r.to_string(), vec![Coord::End(r.to_string())]))
        .collect();
    ComplexDescription::load("line", vec![(core, rays)], named).unwrap()
}

/// Two branch vertices `p` and `q` joined by a path of `len` edges, with
/// rays `x1,x2,x3` at `p` and `y1,y2,y3` at `q`.
pub fn barbell(len: u32) -> ComplexDescription {
    assert!(len >= 1, "barbell needs a segment of positive length");
    let mut ids = vec!["p".to_string(), "q".to_string()];
    let mut chain = vec!["p".to_string()];
    for i in 1..len {
        let id = format!("s{i}");
        ids.push(id.clone());
        chain.push(id);
    }
    chain.push("q".to_string());
    let edges: Vec<(String, String)> = chain
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    let core = MedianGraph::new(ids, edges).unwrap();
    let rays = vec![
        ray("x1", "p"),
        ray("x2", "p"),
        ray("x3", "p"),
        ray("y1", "q"),
        ray("y2", "q"),
        ray("y3", "q"),
    ];
    let named = ["x1", "x2", "x3", "y1", "y2", "y3"]
        .into_iter()
        .map(|r| (r.to_string(), vec![Coord::End(r.to_string())]))
        .collect();
    ComplexDescription::load(format!("barbell{len}"), vec![(core, rays)], named).unwrap()
}

/// A 4-cycle with one ray per corner.
pub fn squarecore() -> ComplexDescription {
    let core = MedianGraph::new(
        ["a", "b", "c", "d"],
        [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
    )
    .unwrap();
    let rays = vec![ray("ra", "a"), ray("rb", "b"), ray("rc", "c"), ray("rd", "d")];
    let named = ["ra", "rb", "rc", "rd"]
        .into_iter()
        .map(|r| (r.to_string(), vec![Coord::End(r.to_string())]))
        .collect();
    ComplexDescription::load("squarecore", vec![(core, rays)], named).unwrap()
}

/// The cube of the line: three line factors, with the four boundary points
/// whose cross ratios all vanish yet whose medians differ from the tree
/// case.
pub fn zzz() -> ComplexDescription {
    let factors: Vec<(MedianGraph, Vec<(String, String)>)> = (0..3)
        .map(|_| {
            (
                MedianGraph::new(["c"], Vec::<(&str, &str)>::new()).unwrap(),
                vec![ray("m", "c"), ray("p", "c")],
            )
        })
        .collect();
    let end_p = || Coord::End("p".into());
    let end_m = || Coord::End("m".into());
    let core_c = || Coord::Core("c".into());
    let plus1 = || Coord::Ray {
        ray: "p".into(),
        depth: 1,
    };
    let mut named = BTreeMap::new();
    named.insert("x".to_string(), vec![core_c(), plus1(), end_p()]);
    named.insert("y".to_string(), vec![end_p(), core_c(), plus1()]);
    named.insert("z".to_string(), vec![core_c(), end_m(), core_c()]);
    named.insert("zp".to_string(), vec![plus1(), plus1(), end_m()]);
    ComplexDescription::load("zzz", factors, named).unwrap()
}

/// A bare square with no rays: every corner is extremal, so the complex is
/// not rigidity-eligible.
pub fn bare_square() -> ComplexDescription {
    let core = MedianGraph::new(
        ["a", "b", "c", "d"],
        [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
    )
    .unwrap();
    ComplexDescription::load("bare_square", vec![(core, Vec::new())], BTreeMap::new()).unwrap()
}

/// The single-factor fixtures the exhaustive suites sweep over.
pub fn single_factor_suite() -> Vec<ComplexDescription> {
    vec![
        star4(),
        barbell(1),
        barbell(2),
        barbell(3),
        squarecore(),
    ]
}
