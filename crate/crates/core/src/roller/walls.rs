//! Walls of the infinite complex and exact separating-wall counts.
//!
//! Every wall is named by a descriptor: a core wall of one factor (with the
//! rays hanging off each side), or the wall dual to one ray edge. Which side
//! of a wall a point lies on is decidable from its coordinates alone, so
//! counts over the infinitely many ray walls reduce to window arithmetic.
//!
//! `walls_between` runs two independent mechanisms and cross-checks them:
//! the rule-based count (core walls plus per-ray windows, with an explicit
//! tail classification for infinite contributions) and a count over the wall
//! classes of the finite truncation, recomputed at depth `D` and `D + 1`.
//! A finite result must be identical at both depths; an infinite one must
//! grow by exactly one wall per flagged ray. Any mismatch is an internal bug
//! signal, not an input error.

use std::collections::BTreeSet;

use super::complex::{ComplexDescription, Coord, Point};
use super::count::Count;
use super::RollerError;

/// A wall of the (possibly infinite) complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WallDescriptor {
    pub factor: usize,
    pub kind: WallKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WallKind {
    /// A wall of the factor's core, by core wall id.
    Core(usize),
    /// The wall dual to the ray edge between depths `depth - 1` and `depth`.
    Ray { ray: usize, depth: u32 },
}

impl WallDescriptor {
    /// True iff the point lies on the far side (the side not containing the
    /// factor core) for ray walls, or on the plus side for core walls.
    pub fn on_far_side(&self, complex: &ComplexDescription, p: &Point) -> bool {
        let factor = complex.factor(self.factor);
        let coord = p.coord(self.factor);
        match self.kind {
            WallKind::Core(wall) => {
                let anchor = factor.anchor(coord);
                factor.core().walls().expect("core walls computed at load")[wall]
                    .on_plus_side(anchor)
            }
            WallKind::Ray { ray, depth } => match coord {
                Coord::Ray { ray: r, depth: d } => {
                    factor.ray_index(r) == Some(ray) && *d >= depth
                }
                Coord::End(r) => factor.ray_index(r) == Some(ray),
                Coord::Core(_) => false,
            },
        }
    }

    /// Whether this wall separates all of `a` from all of `b`.
    pub fn separates(
        &self,
        complex: &ComplexDescription,
        a: &[&Point],
        b: &[&Point],
    ) -> bool {
        let sa: BTreeSet<bool> = a.iter().map(|p| self.on_far_side(complex, p)).collect();
        let sb: BTreeSet<bool> = b.iter().map(|p| self.on_far_side(complex, p)).collect();
        sa.len() == 1 && sb.len() == 1 && sa != sb
    }

    /// Transversality of walls of the infinite complex: walls in different
    /// factors always cross; a ray wall never crosses a wall of its own
    /// factor; two core walls cross iff they do in the core.
    pub fn transverse(&self, complex: &ComplexDescription, other: &WallDescriptor) -> bool {
        if self == other {
            return false;
        }
        if self.factor != other.factor {
            return true;
        }
        match (self.kind, other.kind) {
            (WallKind::Core(a), WallKind::Core(b)) => {
                if a == b {
                    return false;
                }
                let core = complex.factor(self.factor).core();
                let walls = core.walls().expect("core walls computed at load");
                core.transverse(&walls[a], &walls[b])
                    .expect("distinct wall ids")
            }
            _ => false,
        }
    }
}

/// Rays whose tail contributes infinitely many separating walls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) struct TailFlag {
    pub factor: usize,
    pub ray: usize,
}

/// Rule-based exact count: separating core walls plus, per ray, the window
/// of separating ray-wall depths. Returns the finite total together with the
/// rays whose window is unbounded.
pub(super) fn count_separating(
    complex: &ComplexDescription,
    a: &[&Point],
    b: &[&Point],
) -> (u64, Vec<TailFlag>) {
    let mut finite = 0u64;
    let mut flags = Vec::new();
    for (fi, factor) in complex.factors().iter().enumerate() {
        let walls = factor.core().walls().expect("core walls computed at load");
        for wall in walls {
            let descriptor = WallDescriptor {
                factor: fi,
                kind: WallKind::Core(wall.id()),
            };
            if descriptor.separates(complex, a, b) {
                finite += 1;
            }
        }
        for ri in 0..factor.rays().len() {
            for (far, near) in [(a, b), (b, a)] {
                match ray_window(factor, ri, fi, far, near) {
                    Window::Empty => {}
                    Window::Finite(n) => finite += n,
                    Window::Infinite => flags.push(TailFlag { factor: fi, ray: ri }),
                }
            }
        }
    }
    (finite, flags)
}

enum Window {
    Empty,
    Finite(u64),
    Infinite,
}

/// Depths `k` for which the ray wall at depth `k` has all of `far` beyond it
/// and all of `near` before it: `k` ranges over `(lo, hi]` where `hi` is the
/// shallowest far point (infinity if all of them sit at the ray's end) and
/// `lo` the deepest near point. Unbounded exactly when every far point's
/// coordinate is the ray's end and no near point's is.
fn ray_window(
    factor: &super::complex::Factor,
    ray: usize,
    factor_idx: usize,
    far: &[&Point],
    near: &[&Point],
) -> Window {
    let mut hi: Option<u64> = None; // None = +infinity so far
    let mut all_far_at_end = true;
    for p in far {
        match classify(factor, ray, p.coord(factor_idx)) {
            RayPos::End => {}
            RayPos::On(d) => {
                all_far_at_end = false;
                hi = Some(hi.map_or(d as u64, |h| h.min(d as u64)));
            }
            RayPos::Off => return Window::Empty,
        }
    }
    let mut lo = 0u64;
    for p in near {
        match classify(factor, ray, p.coord(factor_idx)) {
            RayPos::End => return Window::Empty,
            RayPos::On(d) => lo = lo.max(d as u64),
            RayPos::Off => {}
        }
    }
    if all_far_at_end {
        return Window::Infinite;
    }
    let hi = hi.expect("some far point is on the ray");
    if hi > lo {
        Window::Finite(hi - lo)
    } else {
        Window::Empty
    }
}

enum RayPos {
    Off,
    On(u32),
    End,
}

fn classify(factor: &super::complex::Factor, ray: usize, coord: &Coord) -> RayPos {
    match coord {
        Coord::Ray { ray: r, depth } if factor.ray_index(r) == Some(ray) => {
            RayPos::On(*depth)
        }
        Coord::End(r) if factor.ray_index(r) == Some(ray) => RayPos::End,
        _ => RayPos::Off,
    }
}

/// Counts walls of the depth-`depth` truncation separating the projections
/// of `a` and `b`. Truncation walls are recomputed from scratch (wall
/// classes of the finite graph), so this is independent of the rule-based
/// route.
fn truncated_count(
    complex: &ComplexDescription,
    a: &[&Point],
    b: &[&Point],
    depth: u32,
) -> Result<u64, RollerError> {
    let trunc = complex.truncation(depth);
    let project = |pts: &[&Point]| -> Result<Vec<usize>, RollerError> {
        pts.iter()
            .map(|p| {
                let q = complex.project(p, depth);
                trunc.index_of(&q).ok_or_else(|| {
                    RollerError::Internal(format!(
                        "projection {} missing from depth-{depth} truncation",
                        q.render()
                    ))
                })
            })
            .collect()
    };
    let pa = project(a)?;
    let pb = project(b)?;
    let walls = trunc
        .graph
        .walls()
        .map_err(|e| RollerError::Internal(format!("truncation walls: {e}")))?;
    let mut count = 0u64;
    for wall in walls {
        let sa: BTreeSet<bool> = pa.iter().map(|&v| wall.on_plus_side(v)).collect();
        let sb: BTreeSet<bool> = pb.iter().map(|&v| wall.on_plus_side(v)).collect();
        if sa.len() == 1 && sb.len() == 1 && sa != sb {
            count += 1;
        }
    }
    Ok(count)
}

/// `#W(A|B)` with the depth chosen by the policy.
pub fn walls_between(
    complex: &ComplexDescription,
    a: &[Point],
    b: &[Point],
) -> Result<Count, RollerError> {
    let depth = complex.policy_depth(a.iter().chain(b.iter()));
    walls_between_at_depth(complex, a, b, depth)
}

/// `#W(A|B)` cross-checked at a requested truncation depth. The effective
/// depth is floored at one past the deepest ray coordinate mentioned, so the
/// projections decide every wall of the truncation faithfully.
pub fn walls_between_at_depth(
    complex: &ComplexDescription,
    a: &[Point],
    b: &[Point],
    requested_depth: u32,
) -> Result<Count, RollerError> {
    if a.is_empty() || b.is_empty() {
        return Err(RollerError::BadWallQuery);
    }
    let set_a: BTreeSet<&Point> = a.iter().collect();
    let set_b: BTreeSet<&Point> = b.iter().collect();
    if set_a.intersection(&set_b).next().is_some() {
        return Err(RollerError::BadWallQuery);
    }
    let a: Vec<&Point> = set_a.into_iter().collect();
    let b: Vec<&Point> = set_b.into_iter().collect();
    let depth = requested_depth
        .max(complex.max_ray_depth(a.iter().chain(b.iter()).copied()) + 1)
        .max(1);
    let (finite, flags) = count_separating(complex, &a, &b);
    let c0 = truncated_count(complex, &a, &b, depth)?;
    let c1 = truncated_count(complex, &a, &b, depth + 1)?;
    if flags.is_empty() {
        if c0 != finite || c1 != finite {
            return Err(RollerError::Internal(format!(
                "wall count failed to stabilize: rule {finite}, depth {depth} -> {c0}, \
                 depth {} -> {c1}",
                depth + 1
            )));
        }
        Ok(Count::Finite(finite))
    } else {
        if c1 != c0 + flags.len() as u64 {
            return Err(RollerError::Internal(format!(
                "tail classification mismatch: {} rays flagged infinite but counts \
                 grew {c0} -> {c1} between depths {depth} and {}",
                flags.len(),
                depth + 1
            )));
        }
        Ok(Count::Infinite)
    }
}
