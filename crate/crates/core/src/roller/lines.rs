//! Symbolic geodesic rays, straight lines, and the greedy straight
//! extension of an edge.

use std::collections::BTreeSet;

use super::complex::{ComplexDescription, Coord, Point};
use super::walls::{WallDescriptor, WallKind};
use super::RollerError;

/// A geodesic ray given by a finite prefix of vertices followed by the tail
/// of one attached ray: after the prefix the path climbs that ray forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicRay {
    prefix: Vec<Point>,
    prefix_walls: Vec<WallDescriptor>,
    tail_factor: usize,
    tail_ray: usize,
    /// Ray depth of the last prefix vertex (0 when it is the ray's base).
    tail_start: u32,
}

impl SymbolicRay {
    /// Validates the prefix (nonempty, vertices, consecutive adjacency, no
    /// repeated wall) and that it ends on the named ray, pointing up it.
    pub fn new(
        complex: &ComplexDescription,
        prefix: Vec<Point>,
        tail_factor: usize,
        tail_ray_id: &str,
    ) -> Result<SymbolicRay, RollerError> {
        if prefix.is_empty() {
            return Err(RollerError::BadRay("empty prefix".into()));
        }
        for p in &prefix {
            if !p.is_vertex() {
                return Err(RollerError::NotAVertex(p.render()));
            }
        }
        if tail_factor >= complex.factors().len() {
            return Err(RollerError::BadRay(format!(
                "no factor {tail_factor}"
            )));
        }
        let factor = complex.factor(tail_factor);
        let tail_ray = factor.ray_index(tail_ray_id).ok_or_else(|| {
            RollerError::UnknownCoordRay {
                factor: tail_factor,
                ray: tail_ray_id.to_string(),
            }
        })?;
        let mut prefix_walls = Vec::new();
        let mut seen = BTreeSet::new();
        for pair in prefix.windows(2) {
            let wall = complex.edge_wall(&pair[0], &pair[1])?;
            if !seen.insert(wall) {
                return Err(RollerError::BadRay(format!(
                    "prefix repeats the wall crossed at {}",
                    pair[1].render()
                )));
            }
            prefix_walls.push(wall);
        }
        let last = prefix.last().expect("nonempty prefix");
        let tail_start = match last.coord(tail_factor) {
            Coord::Core(v) => {
                if factor.rays()[tail_ray].base != *v {
                    return Err(RollerError::BadRay(format!(
                        "prefix ends at {} which is not on ray {tail_ray_id}",
                        last.render()
                    )));
                }
                0
            }
            Coord::Ray { ray, depth } if factor.ray_index(ray) == Some(tail_ray) => *depth,
            _ => {
                return Err(RollerError::BadRay(format!(
                    "prefix ends at {} which is not on ray {tail_ray_id}",
                    last.render()
                )))
            }
        };
        // tail walls must be fresh: an earlier visit above tail_start would
        // have repeated a wall already
        for w in &prefix_walls {
            if w.factor == tail_factor {
                if let WallKind::Ray { ray, depth } = w.kind {
                    if ray == tail_ray && depth > tail_start {
                        return Err(RollerError::BadRay(
                            "prefix already crossed a tail wall".into(),
                        ));
                    }
                }
            }
        }
        Ok(SymbolicRay {
            prefix,
            prefix_walls,
            tail_factor,
            tail_ray,
            tail_start,
        })
    }

    pub fn base(&self) -> &Point {
        &self.prefix[0]
    }

    pub fn prefix(&self) -> &[Point] {
        &self.prefix
    }

    pub fn tail_ray_id<'a>(&self, complex: &'a ComplexDescription) -> &'a str {
        &complex.factor(self.tail_factor).rays()[self.tail_ray].id
    }

    /// The endpoint at infinity: the last prefix vertex with the tail
    /// factor's coordinate sent to the ray's end.
    pub fn endpoint(&self, complex: &ComplexDescription) -> Point {
        let last = self.prefix.last().expect("nonempty prefix");
        let mut coords = last.coords().to_vec();
        coords[self.tail_factor] = Coord::End(self.tail_ray_id(complex).to_string());
        Point::new(coords)
    }

    /// The vertex `steps` edges along the ray from its base.
    pub fn vertex_at(&self, complex: &ComplexDescription, steps: usize) -> Point {
        if steps < self.prefix.len() {
            return self.prefix[steps].clone();
        }
        let extra = (steps + 1 - self.prefix.len()) as u32;
        let last = self.prefix.last().expect("nonempty prefix");
        let mut coords = last.coords().to_vec();
        coords[self.tail_factor] = Coord::Ray {
            ray: self.tail_ray_id(complex).to_string(),
            depth: self.tail_start + extra,
        };
        Point::new(coords)
    }

    pub fn crosses(&self, wall: &WallDescriptor) -> bool {
        if self.prefix_walls.contains(wall) {
            return true;
        }
        match wall.kind {
            WallKind::Ray { ray, depth } => {
                wall.factor == self.tail_factor && ray == self.tail_ray && depth > self.tail_start
            }
            WallKind::Core(_) => false,
        }
    }

    /// True iff no two crossed walls are transverse. The tail walls are
    /// never transverse to same-factor walls, so only the prefix walls and
    /// the factor lock matter.
    pub fn is_straight(&self, complex: &ComplexDescription) -> bool {
        for (i, a) in self.prefix_walls.iter().enumerate() {
            for b in &self.prefix_walls[i + 1..] {
                if a.transverse(complex, b) {
                    return false;
                }
            }
            // a tail wall is transverse to every other-factor wall
            if a.factor != self.tail_factor {
                return false;
            }
        }
        true
    }
}

/// The walls adjacent to the ray's base that it crosses.
fn base_adjacent_crossed(
    complex: &ComplexDescription,
    ray: &SymbolicRay,
) -> Result<BTreeSet<WallDescriptor>, RollerError> {
    let mut out = BTreeSet::new();
    for (_, wall) in complex.vertex_neighbors(ray.base())? {
        if ray.crosses(&wall) {
            out.insert(wall);
        }
    }
    Ok(out)
}

/// Whether two rays based at the same vertex join to a bi-infinite geodesic:
/// true iff the sets of base-adjacent walls they cross are disjoint.
pub fn is_line_union(
    complex: &ComplexDescription,
    r1: &SymbolicRay,
    r2: &SymbolicRay,
) -> Result<bool, RollerError> {
    if r1.base() != r2.base() {
        return Err(RollerError::DifferentBases(
            r1.base().render(),
            r2.base().render(),
        ));
    }
    let w1 = base_adjacent_crossed(complex, r1)?;
    let w2 = base_adjacent_crossed(complex, r2)?;
    Ok(w1.intersection(&w2).next().is_none())
}

/// A straight bi-infinite line through an edge, as two rays with a common
/// base at the edge's first endpoint.
#[derive(Debug, Clone)]
pub struct LineSpec {
    /// The ray through the edge.
    pub forward: SymbolicRay,
    /// The ray extending the edge backwards.
    pub backward: SymbolicRay,
}

impl LineSpec {
    pub fn endpoints(&self, complex: &ComplexDescription) -> (Point, Point) {
        (
            self.backward.endpoint(complex),
            self.forward.endpoint(complex),
        )
    }
}

/// Extends the edge `u -- v` to a straight line greedily: at each end, take
/// the least-id incident edge whose wall is neither crossed already nor
/// transverse to a crossed wall. The walk terminates in a ray tail because
/// rays are skinny; a dead end means an extremal vertex was encountered.
pub fn extend_to_straight_line(
    complex: &ComplexDescription,
    u: &Point,
    v: &Point,
) -> Result<LineSpec, RollerError> {
    if !complex.eligibility().extremal_vertices.is_empty() {
        return Err(RollerError::Ineligible(
            complex
                .eligibility()
                .reason()
                .unwrap_or_else(|| "extremal vertices present".into()),
        ));
    }
    let first_wall = complex.edge_wall(u, v)?;
    let mut crossed = BTreeSet::from([first_wall]);
    let forward_path = greedy_walk(complex, vec![u.clone(), v.clone()], &mut crossed)?;
    let backward_path = greedy_walk(complex, vec![u.clone()], &mut crossed)?;
    let forward = SymbolicRay::new(
        complex,
        forward_path.prefix,
        forward_path.tail_factor,
        &forward_path.tail_ray_id,
    )?;
    let backward = SymbolicRay::new(
        complex,
        backward_path.prefix,
        backward_path.tail_factor,
        &backward_path.tail_ray_id,
    )?;
    if !is_line_union(complex, &forward, &backward)? {
        return Err(RollerError::Internal(
            "greedy extension produced rays sharing a base-adjacent wall".into(),
        ));
    }
    if !(forward.is_straight(complex) && backward.is_straight(complex)) {
        return Err(RollerError::Internal(
            "greedy extension produced a non-straight ray".into(),
        ));
    }
    Ok(LineSpec { forward, backward })
}

struct WalkResult {
    prefix: Vec<Point>,
    tail_factor: usize,
    tail_ray_id: String,
}

/// Walks from the end of `path`, extending greedily, until the walk ascends
/// onto a ray (after which it is forced up forever). `crossed` accumulates
/// the walls of every chosen edge, including those already in `path`.
fn greedy_walk(
    complex: &ComplexDescription,
    mut path: Vec<Point>,
    crossed: &mut BTreeSet<WallDescriptor>,
) -> Result<WalkResult, RollerError> {
    // if the starting segment already ascends a ray, it is forced already
    let ascent = |from: &Point, to: &Point, wall: &WallDescriptor| -> Option<(usize, String)> {
        if let WallKind::Ray { ray, depth } = wall.kind {
            let to_depth = match to.coord(wall.factor) {
                Coord::Ray { depth, .. } => *depth,
                _ => 0,
            };
            let from_depth = match from.coord(wall.factor) {
                Coord::Ray { depth, .. } => *depth,
                _ => 0,
            };
            if to_depth == depth && from_depth + 1 == depth {
                let id = complex.factor(wall.factor).rays()[ray].id.clone();
                return Some((wall.factor, id));
            }
        }
        None
    };
    if path.len() >= 2 {
        let wall = complex.edge_wall(&path[path.len() - 2], &path[path.len() - 1])?;
        if let Some((f, id)) = ascent(&path[path.len() - 2], &path[path.len() - 1], &wall) {
            return Ok(WalkResult {
                prefix: path,
                tail_factor: f,
                tail_ray_id: id,
            });
        }
    }
    let step_limit = 4
        + complex
            .factors()
            .iter()
            .map(|f| {
                f.core().edge_count()
                    + f.core().vertex_count()
                    + f.rays().len()
            })
            .sum::<usize>()
        * 4;
    for _ in 0..step_limit {
        let here = path.last().expect("path is nonempty").clone();
        let mut chosen = None;
        for (nbr, wall) in complex.vertex_neighbors(&here)? {
            if crossed.contains(&wall) {
                continue;
            }
            if crossed.iter().any(|c| c.transverse(complex, &wall)) {
                continue;
            }
            chosen = Some((nbr, wall));
            break;
        }
        let (nbr, wall) = chosen.ok_or_else(|| RollerError::ExtensionStuck(here.render()))?;
        crossed.insert(wall);
        let climbed = ascent(&here, &nbr, &wall);
        path.push(nbr);
        if let Some((f, id)) = climbed {
            return Ok(WalkResult {
                prefix: path,
                tail_factor: f,
                tail_ray_id: id,
            });
        }
    }
    Err(RollerError::Internal(
        "straight extension failed to reach a ray tail".into(),
    ))
}
