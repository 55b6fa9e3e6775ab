//! Gromov products, medians of the compactification, admissibility, and the
//! integer cross ratio with its triple form.

use std::collections::BTreeMap;

use super::complex::{ComplexDescription, Coord, Point};
use super::count::{Count, CrossRatio, CrtTriple};
use super::walls::{count_separating, walls_between};
use super::RollerError;

/// Gromov product `(x . y)_v`: the number of walls separating `v` from both
/// `x` and `y`. Infinite exactly when no geodesic between `x` and `y` meets
/// the complex, equivalently when their median with `v` is a boundary point;
/// that equivalence is asserted on every call.
pub fn gromov_product(
    complex: &ComplexDescription,
    x: &Point,
    y: &Point,
    v: &Point,
) -> Result<Count, RollerError> {
    if !v.is_vertex() {
        return Err(RollerError::NotAVertex(v.render()));
    }
    let count = if v == x || v == y {
        Count::Finite(0)
    } else if x == y && x.is_vertex() {
        Count::Finite(complex.vertex_distance(v, x)?)
    } else {
        let b: Vec<Point> = if x == y {
            vec![x.clone()]
        } else {
            vec![x.clone(), y.clone()]
        };
        walls_between(complex, std::slice::from_ref(v), &b)?
    };
    let m = median_bar(complex, v, x, y)?;
    match count {
        Count::Finite(n) => {
            if !m.is_vertex() || complex.vertex_distance(v, &m)? != n {
                return Err(RollerError::Internal(format!(
                    "Gromov product {n} disagrees with median {} at {}",
                    m.render(),
                    v.render()
                )));
            }
        }
        Count::Infinite => {
            if m.is_vertex() {
                return Err(RollerError::Internal(format!(
                    "infinite Gromov product but median {} is a vertex",
                    m.render()
                )));
            }
        }
    }
    Ok(count)
}

/// Raw Gromov product from the rule-based count only; used for basepoint
/// sweeps where the caller batches many evaluations.
pub(crate) fn gromov_raw(
    complex: &ComplexDescription,
    x: &Point,
    y: &Point,
    v: &Point,
) -> Count {
    if v == x || v == y {
        return Count::Finite(0);
    }
    let vs = [v];
    let xy: Vec<&Point> = if x == y { vec![x] } else { vec![x, y] };
    let (finite, flags) = count_separating(complex, &vs, &xy);
    if flags.is_empty() {
        Count::Finite(finite)
    } else {
        Count::Infinite
    }
}

/// Median of three points of the compactification, computed coordinate-wise.
///
/// Within a factor: if at least two of the three coordinates are the end of
/// the same ray, the median's coordinate is that end. Otherwise ends are
/// replaced by proxies one step deeper than any finite ray coordinate and
/// the median is taken in the factor truncation; the result is checked
/// stable against a one-deeper proxy.
pub fn median_bar(
    complex: &ComplexDescription,
    x: &Point,
    y: &Point,
    z: &Point,
) -> Result<Point, RollerError> {
    let mut coords = Vec::new();
    for fi in 0..complex.factors().len() {
        coords.push(factor_median(
            complex,
            fi,
            [x.coord(fi), y.coord(fi), z.coord(fi)],
        )?);
    }
    Ok(Point::new(coords))
}

fn factor_median(
    complex: &ComplexDescription,
    fi: usize,
    coords: [&Coord; 3],
) -> Result<Coord, RollerError> {
    let mut end_counts: BTreeMap<&str, usize> = BTreeMap::new();
    for c in coords {
        if let Coord::End(r) = c {
            *end_counts.entry(r.as_str()).or_default() += 1;
        }
    }
    if let Some((ray, _)) = end_counts.iter().find(|(_, &n)| n >= 2) {
        return Ok(Coord::End(ray.to_string()));
    }
    let max_finite = coords
        .iter()
        .filter_map(|c| match c {
            Coord::Ray { depth, .. } => Some(*depth),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let proxy_depth = max_finite + 1;
    let at = |k: u32| -> Result<Coord, RollerError> {
        let trunc = complex.factor_trunc(fi, k);
        let idx: Vec<usize> = coords
            .iter()
            .map(|c| {
                let proxied = match c {
                    Coord::End(r) => Coord::Ray {
                        ray: r.clone(),
                        depth: k,
                    },
                    other => (*other).clone(),
                };
                trunc.index[&proxied]
            })
            .collect();
        let m = trunc
            .graph
            .median(idx[0], idx[1], idx[2])
            .map_err(|e| RollerError::Internal(format!("factor median: {e}")))?;
        Ok(trunc.coords[m].clone())
    };
    let m = at(proxy_depth)?;
    let check = at(proxy_depth + 1)?;
    if m != check {
        return Err(RollerError::Internal(format!(
            "factor median unstable between proxy depths {} and {}: {} vs {}",
            proxy_depth,
            proxy_depth + 1,
            m.render(),
            check.render()
        )));
    }
    Ok(m)
}

/// True iff no geodesic between the points meets the complex: their
/// coordinates are the same ray end in some factor.
pub(super) fn product_infinite(x: &Point, y: &Point) -> bool {
    x.coords()
        .iter()
        .zip(y.coords())
        .any(|(a, b)| matches!((a, b), (Coord::End(r), Coord::End(s)) if r == s))
}

/// The three pairing sums of a 4-tuple: `xy + zw`, `xz + yw`, `xw + yz`.
fn pairing_infinite(t: [&Point; 4]) -> [bool; 3] {
    let [x, y, z, w] = t;
    [
        product_infinite(x, y) || product_infinite(z, w),
        product_infinite(x, z) || product_infinite(y, w),
        product_infinite(x, w) || product_infinite(y, z),
    ]
}

/// Membership in the admissible set: at most one of the three pairing sums
/// of Gromov products is infinite (at any, hence every, basepoint).
pub fn is_admissible(_complex: &ComplexDescription, t: [&Point; 4]) -> bool {
    pairing_infinite(t).iter().filter(|&&b| b).count() <= 1
}

/// Cross ratio triple at one basepoint, before canonical comparison across
/// basepoints.
pub fn crt_at_basepoint(
    complex: &ComplexDescription,
    t: [&Point; 4],
    v: &Point,
) -> Result<CrtTriple, RollerError> {
    if !v.is_vertex() {
        return Err(RollerError::NotAVertex(v.render()));
    }
    let [x, y, z, w] = t;
    let p = |a: &Point, b: &Point| gromov_raw(complex, a, b, v);
    Ok(CrtTriple::new(
        p(x, y) + p(z, w),
        p(x, z) + p(y, w),
        p(x, w) + p(y, z),
    ))
}

fn sweep_points(complex: &ComplexDescription) -> Vec<Point> {
    complex.truncation(1).points().to_vec()
}

/// The cross ratio triple `⟪(x.y)+(z.w) : (x.z)+(y.w) : (x.w)+(y.z)⟫`,
/// defined for every 4-tuple. The canonical class is computed at every
/// vertex of the depth-1 truncation and asserted identical.
pub fn crt(
    complex: &ComplexDescription,
    t: [&Point; 4],
) -> Result<CrtTriple, RollerError> {
    let mut result: Option<(CrtTriple, Point)> = None;
    for v in sweep_points(complex) {
        let here = crt_at_basepoint(complex, t, &v)?;
        match &result {
            None => result = Some((here, v)),
            Some((first, v0)) => {
                if *first != here {
                    return Err(RollerError::Internal(format!(
                        "crt depends on basepoint: {first} at {} vs {here} at {}",
                        v0.render(),
                        v.render()
                    )));
                }
            }
        }
    }
    Ok(result.expect("truncation has at least one vertex").0)
}

/// Cross ratio at one basepoint; `None` when the defining difference is
/// infinite minus infinite (never the case on admissible tuples).
pub fn cross_ratio_at_basepoint(
    complex: &ComplexDescription,
    t: [&Point; 4],
    v: &Point,
) -> Result<Option<CrossRatio>, RollerError> {
    if !v.is_vertex() {
        return Err(RollerError::NotAVertex(v.render()));
    }
    let [x, y, z, w] = t;
    let p = |a: &Point, b: &Point| gromov_raw(complex, a, b, v);
    let s2 = p(x, z) + p(y, w);
    let s3 = p(x, w) + p(y, z);
    Ok(CrossRatio::difference(s2, s3))
}

/// The pairing count `#W({a, c} | {b, d})`, with overlapping pairings
/// contributing zero walls.
fn pairing_count(
    complex: &ComplexDescription,
    left: [&Point; 2],
    right: [&Point; 2],
) -> Result<Count, RollerError> {
    if left.contains(&right[0]) || left.contains(&right[1]) {
        return Ok(Count::Finite(0));
    }
    let a: Vec<Point> = left.iter().map(|p| (*p).clone()).collect();
    let b: Vec<Point> = right.iter().map(|p| (*p).clone()).collect();
    walls_between(complex, &a, &b)
}

/// Wall-count form of the cross ratio, `#W(x,z|y,w) - #W(x,w|y,z)`, defined
/// whenever at most one of the two pairing counts is infinite, with no
/// admissibility requirement.
pub fn cross_ratio_wall_only(
    complex: &ComplexDescription,
    t: [&Point; 4],
) -> Result<Option<CrossRatio>, RollerError> {
    let [x, y, z, w] = t;
    let first = pairing_count(complex, [x, z], [y, w])?;
    let second = pairing_count(complex, [x, w], [y, z])?;
    Ok(CrossRatio::difference(first, second))
}

/// The cross ratio of an admissible 4-tuple, computed two independent ways
/// and asserted equal: the basepoint formula, evaluated at every vertex of
/// the depth-1 truncation, and the wall-count formula, evaluated once.
pub fn cross_ratio(
    complex: &ComplexDescription,
    t: [&Point; 4],
) -> Result<CrossRatio, RollerError> {
    if !is_admissible(complex, t) {
        return Err(RollerError::NotAdmissible);
    }
    let mut by_basepoint: Option<CrossRatio> = None;
    for v in sweep_points(complex) {
        let here = cross_ratio_at_basepoint(complex, t, &v)?.ok_or_else(|| {
            RollerError::Internal("admissible tuple with indeterminate cross ratio".into())
        })?;
        match by_basepoint {
            None => by_basepoint = Some(here),
            Some(first) => {
                if first != here {
                    return Err(RollerError::Internal(format!(
                        "cross ratio depends on basepoint: {first} vs {here} at {}",
                        v.render()
                    )));
                }
            }
        }
    }
    let by_basepoint =
        by_basepoint.expect("truncation has at least one vertex");
    let by_walls = cross_ratio_wall_only(complex, t)?.ok_or_else(|| {
        RollerError::Internal("admissible tuple with two infinite pairing counts".into())
    })?;
    if by_basepoint != by_walls {
        return Err(RollerError::Internal(format!(
            "cross ratio routes disagree: basepoint {by_basepoint}, walls {by_walls}"
        )));
    }
    Ok(by_walls)
}
