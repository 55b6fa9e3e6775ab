//! Boundary characterizations: opposition, straightness and skinny-ray
//! detection, each in two forms. The direct form inspects a live complex;
//! the oracle form quantifies over the boundary points of a cross ratio
//! oracle and uses nothing but admissibility and triples. On the supported
//! complexes the witness searches are exact because every straight ray's
//! endpoint is a listed boundary point.

use crate::roller::{median_bar, ComplexDescription, Count, Point};

use super::oracle::CrossRatioOracle;
use super::RigidityError;

/// Whether `x` and `y` are opposite with respect to `z`: their median with
/// `z` is a vertex `m` and the interval between them splits at `m`, which
/// holds iff no wall adjacent to `m` towards `x` is transverse to one
/// towards `y`. Returns false when the median is a boundary point.
pub fn is_opposite_direct(
    complex: &ComplexDescription,
    x: &Point,
    y: &Point,
    z: &Point,
) -> Result<bool, RigidityError> {
    let m = median_bar(complex, x, y, z)?;
    if !m.is_vertex() {
        return Ok(false);
    }
    let adjacent = complex.vertex_neighbors(&m)?;
    let towards = |target: &Point| -> Vec<crate::roller::WallDescriptor> {
        adjacent
            .iter()
            .map(|(_, w)| *w)
            .filter(|w| w.on_far_side(complex, &m) != w.on_far_side(complex, target))
            .collect()
    };
    let walls_x = towards(x);
    let walls_y = towards(y);
    for wx in &walls_x {
        for wy in &walls_y {
            if wx.transverse(complex, wy) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The pattern that witnesses a failure: `crt = ⟪a:b:c⟫` with
/// `a < min{b, c} < +inf`.
fn failure_pattern(entries: [Count; 3]) -> bool {
    let [a, b, c] = entries;
    let m = b.min(c);
    a < m && m.is_finite()
}

fn require_pairwise_median(
    o: &CrossRatioOracle,
    x1: &str,
    x2: &str,
    y: &str,
) -> Result<(), RigidityError> {
    for (a, b) in [(x1, x2), (x2, y), (y, x1)] {
        if !o.admissible([a, a, b, b])? {
            return Err(RigidityError::PreconditionFailed(format!(
                "({a} . {b}) is infinite, so the median of ({x1}, {x2}, {y}) is not a vertex"
            )));
        }
    }
    Ok(())
}

/// Searches the oracle's boundary for a point `z` whose triple with
/// `(x1, x2, pivot)` shows the opposition failure pattern.
pub fn opposite_witness(
    o: &CrossRatioOracle,
    x1: &str,
    x2: &str,
    pivot: &str,
) -> Result<Option<String>, RigidityError> {
    require_pairwise_median(o, x1, x2, pivot)?;
    for z in o.ids() {
        let triple = o.crt([x1, x2, pivot, z])?;
        if failure_pattern(triple.entries()) {
            return Ok(Some(z.clone()));
        }
    }
    Ok(None)
}

/// Oracle-side opposition test: true iff no witness exists.
pub fn is_opposite_oracle(
    o: &CrossRatioOracle,
    x1: &str,
    x2: &str,
    pivot: &str,
) -> Result<bool, RigidityError> {
    Ok(opposite_witness(o, x1, x2, pivot)?.is_none())
}

/// Oracle-side test for `x` and `y` being the endpoints of a straight line:
/// some geodesic between them meets the complex (admissibility of
/// `(x,x,y,y)`) and no pair `(z, w)` of boundary points produces the
/// failure pattern.
pub fn is_straight_pair_oracle(
    o: &CrossRatioOracle,
    x: &str,
    y: &str,
) -> Result<bool, RigidityError> {
    if !o.admissible([x, x, y, y])? {
        return Ok(false);
    }
    for z in o.ids() {
        for w in o.ids() {
            let triple = o.crt([x, y, z, w])?;
            if failure_pattern(triple.entries()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A point is straight iff it has a partner making a straight pair.
pub fn is_straight_point(o: &CrossRatioOracle, x: &str) -> Result<bool, RigidityError> {
    for y in o.ids() {
        if is_straight_pair_oracle(o, x, y)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All straight boundary points of the oracle.
pub fn straight_points(o: &CrossRatioOracle) -> Result<Vec<String>, RigidityError> {
    let mut out = Vec::new();
    for x in o.ids() {
        if is_straight_point(o, x)? {
            out.push(x.clone());
        }
    }
    Ok(out)
}

/// Direct form of the straight-pair test: the interval between the two
/// boundary points meets the complex and is a single bi-infinite geodesic,
/// i.e. its vertices within a deep enough truncation induce a simple path.
pub fn is_straight_pair_direct(
    complex: &ComplexDescription,
    x: &Point,
    y: &Point,
) -> Result<bool, RigidityError> {
    if x == y {
        return Ok(false);
    }
    let depth = complex.policy_depth([x, y]);
    let trunc = complex.truncation(depth);
    let mut members = Vec::new();
    for (v, point) in trunc.points().iter().enumerate() {
        if gromov_is_zero(complex, x, y, point)? {
            members.push(v);
        }
    }
    if members.is_empty() {
        return Ok(false);
    }
    // induced degrees at most 2, connected, and no cycle
    let inside: std::collections::BTreeSet<usize> = members.iter().copied().collect();
    let mut edge_count = 0usize;
    for &v in &members {
        let deg = trunc
            .graph
            .neighbors(v)
            .iter()
            .filter(|n| inside.contains(n))
            .count();
        if deg > 2 {
            return Ok(false);
        }
        edge_count += deg;
    }
    let edge_count = edge_count / 2;
    if edge_count + 1 != members.len() {
        return Ok(false); // a cycle, or disconnected pieces
    }
    // connectivity via one sweep
    let mut seen = std::collections::BTreeSet::from([members[0]]);
    let mut queue = std::collections::VecDeque::from([members[0]]);
    while let Some(v) = queue.pop_front() {
        for &n in trunc.graph.neighbors(v) {
            if inside.contains(&n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    Ok(seen.len() == members.len())
}

fn gromov_is_zero(
    complex: &ComplexDescription,
    x: &Point,
    y: &Point,
    v: &Point,
) -> Result<bool, RigidityError> {
    // interval membership: no wall separates v from both x and y
    Ok(crate::roller::gromov_raw(complex, x, y, v) == Count::Finite(0))
}

/// Oracle-side skinny-ray detection for the boundary point `x`: a witness
/// pair `(y, z)` of straight points with `{x, y}` opposite with respect to
/// `z` such that for every other straight point `w` the triple
/// `crt(x, y, z, w)` has the form `⟪*:*:0⟫`. Returns every witness pair.
pub fn skinny_ray_witness(
    o: &CrossRatioOracle,
    x: &str,
    straight: &[String],
) -> Result<Vec<(String, String)>, RigidityError> {
    let mut witnesses = Vec::new();
    for y in straight {
        if y == x {
            continue;
        }
        for z in straight {
            if z == x || z == y {
                continue;
            }
            if require_pairwise_median(o, x, y, z).is_err() {
                continue;
            }
            if !is_opposite_oracle(o, x, y, z)? {
                continue;
            }
            let ok = straight.iter().filter(|w| w.as_str() != x).try_fold(
                true,
                |acc, w| -> Result<bool, RigidityError> {
                    if !acc {
                        return Ok(false);
                    }
                    let triple = o.crt([x, y, z, w])?;
                    Ok(triple.entries()[2] == Count::Finite(0))
                },
            )?;
            if ok {
                witnesses.push((y.clone(), z.clone()));
            }
        }
    }
    Ok(witnesses)
}
