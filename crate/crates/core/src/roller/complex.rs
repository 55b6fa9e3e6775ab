//! Complex descriptions, points of the compactification, and truncations.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::median::MedianGraph;

use super::RollerError;

/// One coordinate of a point of the compactified complex, within one factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    /// A vertex of the factor's core.
    Core(String),
    /// The vertex at `depth >= 1` on the given ray.
    Ray { ray: String, depth: u32 },
    /// The endpoint at infinity of the given ray.
    End(String),
}

impl Coord {
    pub fn is_end(&self) -> bool {
        matches!(self, Coord::End(_))
    }

    pub fn render(&self) -> String {
        match self {
            Coord::Core(v) => format!("v:{v}"),
            Coord::Ray { ray, depth } => format!("r:{ray}:{depth}"),
            Coord::End(ray) => format!("end:{ray}"),
        }
    }

    pub fn parse(text: &str) -> Result<Coord, RollerError> {
        let bad = || RollerError::BadCoordinate(text.to_string());
        if let Some(v) = text.strip_prefix("v:") {
            if v.is_empty() {
                return Err(bad());
            }
            return Ok(Coord::Core(v.to_string()));
        }
        if let Some(rest) = text.strip_prefix("r:") {
            let (ray, depth) = rest.rsplit_once(':').ok_or_else(bad)?;
            if ray.is_empty() {
                return Err(bad());
            }
            let depth: u32 = depth.parse().map_err(|_| bad())?;
            return Ok(Coord::Ray {
                ray: ray.to_string(),
                depth,
            });
        }
        if let Some(ray) = text.strip_prefix("end:") {
            if ray.is_empty() {
                return Err(bad());
            }
            return Ok(Coord::End(ray.to_string()));
        }
        Err(bad())
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// A point of the Roller compactification: one coordinate per factor. The
/// point is a vertex iff no coordinate is a ray end, and a boundary point
/// otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    coords: Vec<Coord>,
}

impl Point {
    pub fn new(coords: Vec<Coord>) -> Point {
        Point { coords }
    }

    pub fn single(coord: Coord) -> Point {
        Point {
            coords: vec![coord],
        }
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    pub fn coord(&self, factor: usize) -> &Coord {
        &self.coords[factor]
    }

    pub fn is_vertex(&self) -> bool {
        self.coords.iter().all(|c| !c.is_end())
    }

    pub fn is_boundary(&self) -> bool {
        !self.is_vertex()
    }

    pub fn render(&self) -> String {
        if self.coords.len() == 1 {
            self.coords[0].render()
        } else {
            let inner: Vec<String> = self.coords.iter().map(Coord::render).collect();
            format!("({})", inner.join(","))
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// A skinny ray attached to the core at `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    pub id: String,
    pub base: String,
}

/// One factor of the complex: a finite median core plus attached rays.
#[derive(Debug)]
pub struct Factor {
    core: MedianGraph,
    rays: Vec<Ray>,
    ray_index: BTreeMap<String, usize>,
    ray_base_idx: Vec<usize>,
    rays_at: Vec<Vec<usize>>,
}

impl Factor {
    pub fn core(&self) -> &MedianGraph {
        &self.core
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray_index(&self, ray: &str) -> Option<usize> {
        self.ray_index.get(ray).copied()
    }

    pub fn ray_base_index(&self, ray_idx: usize) -> usize {
        self.ray_base_idx[ray_idx]
    }

    /// Ray indices attached at the given core vertex.
    pub fn rays_at(&self, core_vertex: usize) -> &[usize] {
        &self.rays_at[core_vertex]
    }

    /// Degree of a core vertex in the full (ray-extended) factor.
    pub fn full_degree(&self, core_vertex: usize) -> usize {
        self.core.degree(core_vertex) + self.rays_at[core_vertex].len()
    }

    /// Index of the core vertex the coordinate gates to (the base of its ray
    /// for ray coordinates).
    pub fn anchor(&self, coord: &Coord) -> usize {
        match coord {
            Coord::Core(v) => self.core.index_of(v).expect("validated coordinate"),
            Coord::Ray { ray, .. } | Coord::End(ray) => {
                self.ray_base_idx[self.ray_index[ray]]
            }
        }
    }

}

/// Eligibility flags computed when a complex is loaded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EligibilityReport {
    /// Vertices at which some incident edge spans a square with every other
    /// incident edge.
    pub extremal_vertices: Vec<Point>,
    /// The complex is isomorphic to the real line.
    pub is_line: bool,
    /// The complex is a single vertex.
    pub is_point: bool,
}

impl EligibilityReport {
    pub fn eligible(&self) -> bool {
        self.extremal_vertices.is_empty() && !self.is_line && !self.is_point
    }

    pub fn reason(&self) -> Option<String> {
        if self.is_point {
            Some("the complex is a single point".to_string())
        } else if self.is_line {
            Some("the complex is isomorphic to the real line".to_string())
        } else if !self.extremal_vertices.is_empty() {
            let ids: Vec<String> = self
                .extremal_vertices
                .iter()
                .map(Point::render)
                .collect();
            Some(format!("extremal vertices: {}", ids.join(" ")))
        } else {
            None
        }
    }
}

/// A finite truncation of one factor: the core with each ray cut at `depth`.
#[derive(Debug)]
pub(super) struct FactorTrunc {
    pub graph: MedianGraph,
    /// Coordinate of each truncation vertex, aligned with the graph indices.
    pub coords: Vec<Coord>,
    pub index: BTreeMap<Coord, usize>,
}

/// A finite truncation of the whole complex: the product of the factor
/// truncations, with the marker map recording which point of the
/// compactification each truncation vertex is.
#[derive(Debug)]
pub struct Truncation {
    pub depth: u32,
    pub graph: MedianGraph,
    points: Vec<Point>,
    index: BTreeMap<Point, usize>,
}

impl Truncation {
    /// The point of the complex each truncation vertex stands for, aligned
    /// with the graph's vertex indices.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point_of(&self, vertex: usize) -> &Point {
        &self.points[vertex]
    }

    pub fn index_of(&self, point: &Point) -> Option<usize> {
        self.index.get(point).copied()
    }
}

/// A validated complex: factors, named points, eligibility report, and
/// idempotent truncation caches. Immutable after loading.
#[derive(Debug)]
pub struct ComplexDescription {
    name: String,
    factors: Vec<Factor>,
    named: BTreeMap<String, Point>,
    eligibility: EligibilityReport,
    core_diameter: u32,
    factor_truncs: Mutex<BTreeMap<(usize, u32), Arc<FactorTrunc>>>,
    truncations: Mutex<BTreeMap<u32, Arc<Truncation>>>,
}

impl ComplexDescription {
    /// Validates and loads a complex from raw parts: each factor is a core
    /// graph plus `(ray id, attach vertex)` pairs; `named` lists boundary
    /// point aliases.
    pub fn load(
        name: impl Into<String>,
        raw_factors: Vec<(MedianGraph, Vec<(String, String)>)>,
        named: BTreeMap<String, Vec<Coord>>,
    ) -> Result<ComplexDescription, RollerError> {
        if raw_factors.is_empty() {
            return Err(RollerError::NoFactors);
        }
        let mut factors = Vec::new();
        for (fi, (core, rays)) in raw_factors.into_iter().enumerate() {
            let report = core.validate();
            if !report.is_ok() {
                return Err(RollerError::CoreNotMedian {
                    factor: fi,
                    report: report.to_string(),
                });
            }
            // wall classes exist for every median graph; surface the
            // diagnostic if not
            core.walls().map_err(|e| RollerError::CoreError {
                factor: fi,
                source: e,
            })?;
            let mut ray_list: Vec<Ray> = rays
                .into_iter()
                .map(|(id, base)| Ray { id, base })
                .collect();
            ray_list.sort_by(|a, b| a.id.cmp(&b.id));
            for pair in ray_list.windows(2) {
                if pair[0].id == pair[1].id {
                    return Err(RollerError::DuplicateRay {
                        factor: fi,
                        ray: pair[0].id.clone(),
                    });
                }
            }
            let mut ray_base_idx = Vec::new();
            for ray in &ray_list {
                let idx = core.index_of(&ray.base).map_err(|_| {
                    RollerError::UnknownRayBase {
                        factor: fi,
                        ray: ray.id.clone(),
                        base: ray.base.clone(),
                    }
                })?;
                ray_base_idx.push(idx);
            }
            let ray_index = ray_list
                .iter()
                .enumerate()
                .map(|(i, r)| (r.id.clone(), i))
                .collect();
            let mut rays_at = vec![Vec::new(); core.vertex_count()];
            for (ri, &base) in ray_base_idx.iter().enumerate() {
                rays_at[base].push(ri);
            }
            factors.push(Factor {
                core,
                rays: ray_list,
                ray_index,
                ray_base_idx,
                rays_at,
            });
        }
        let core_diameter = factors.iter().map(|f| f.core.diameter()).sum();
        let mut complex = ComplexDescription {
            name: name.into(),
            factors,
            named: BTreeMap::new(),
            eligibility: EligibilityReport {
                extremal_vertices: Vec::new(),
                is_line: false,
                is_point: false,
            },
            core_diameter,
            factor_truncs: Mutex::new(BTreeMap::new()),
            truncations: Mutex::new(BTreeMap::new()),
        };
        complex.eligibility = complex.compute_eligibility();
        let mut resolved = BTreeMap::new();
        for (alias, coords) in named {
            let point = complex.make_point(coords)?;
            resolved.insert(alias, point);
        }
        complex.named = resolved;
        Ok(complex)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &Factor {
        &self.factors[i]
    }

    pub fn is_single_factor(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn named_points(&self) -> &BTreeMap<String, Point> {
        &self.named
    }

    pub fn eligibility(&self) -> &EligibilityReport {
        &self.eligibility
    }

    /// Sum of the factor core diameters; the depth policy's core term.
    pub fn core_diameter(&self) -> u32 {
        self.core_diameter
    }

    /// Validates raw coordinates into a point of this complex.
    pub fn make_point(&self, coords: Vec<Coord>) -> Result<Point, RollerError> {
        if coords.len() != self.factors.len() {
            return Err(RollerError::PointArity {
                expected: self.factors.len(),
                got: coords.len(),
            });
        }
        for (fi, coord) in coords.iter().enumerate() {
            let factor = &self.factors[fi];
            match coord {
                Coord::Core(v) => {
                    if !factor.core.contains(v) {
                        return Err(RollerError::UnknownCoordVertex {
                            factor: fi,
                            id: v.clone(),
                        });
                    }
                }
                Coord::Ray { ray, depth } => {
                    if factor.ray_index(ray).is_none() {
                        return Err(RollerError::UnknownCoordRay {
                            factor: fi,
                            ray: ray.clone(),
                        });
                    }
                    if *depth == 0 {
                        return Err(RollerError::ZeroRayDepth { factor: fi });
                    }
                }
                Coord::End(ray) => {
                    if factor.ray_index(ray).is_none() {
                        return Err(RollerError::UnknownCoordRay {
                            factor: fi,
                            ray: ray.clone(),
                        });
                    }
                }
            }
        }
        Ok(Point::new(coords))
    }

    /// Parses a point literal: a single coordinate for single-factor
    /// complexes, or a parenthesized comma-separated coordinate tuple.
    pub fn parse_point(&self, text: &str) -> Result<Point, RollerError> {
        let inner = text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(text);
        let coords = inner
            .split(',')
            .map(|c| Coord::parse(c.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        self.make_point(coords)
    }

    /// Resolves a point by alias name, by single-factor ray id (the end of
    /// that ray), or as a coordinate literal.
    pub fn resolve_point(&self, name: &str) -> Result<Point, RollerError> {
        if let Some(p) = self.named.get(name) {
            return Ok(p.clone());
        }
        if self.is_single_factor() && self.factors[0].ray_index(name).is_some() {
            return Ok(Point::single(Coord::End(name.to_string())));
        }
        self.parse_point(name)
            .map_err(|_| RollerError::UnknownPoint(name.to_string()))
    }

    /// Depth policy: the largest ray depth mentioned in the points, plus the
    /// core diameter, plus one. Beyond the core, rays are skinny, so gate
    /// projections and wall counts cannot change past this depth.
    pub fn policy_depth<'a>(&self, points: impl IntoIterator<Item = &'a Point>) -> u32 {
        self.max_ray_depth(points) + self.core_diameter + 1
    }

    pub fn max_ray_depth<'a>(&self, points: impl IntoIterator<Item = &'a Point>) -> u32 {
        points
            .into_iter()
            .flat_map(|p| p.coords())
            .filter_map(|c| match c {
                Coord::Ray { depth, .. } => Some(*depth),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub(super) fn factor_trunc(&self, factor: usize, depth: u32) -> Arc<FactorTrunc> {
        let mut cache = self.factor_truncs.lock().expect("cache lock");
        cache
            .entry((factor, depth))
            .or_insert_with(|| Arc::new(build_factor_trunc(&self.factors[factor], depth)))
            .clone()
    }

    /// The truncation at the given depth: all rays cut at `depth`, factors
    /// multiplied out. Results are cached; population is idempotent.
    pub fn truncation(&self, depth: u32) -> Arc<Truncation> {
        if let Some(t) = self.truncations.lock().expect("cache lock").get(&depth) {
            return t.clone();
        }
        let parts: Vec<Arc<FactorTrunc>> = (0..self.factors.len())
            .map(|fi| self.factor_trunc(fi, depth))
            .collect();
        let built = Arc::new(build_product(depth, &parts));
        self.truncations
            .lock()
            .expect("cache lock")
            .entry(depth)
            .or_insert(built)
            .clone()
    }

    /// The truncation vertex a point projects to: ray coordinates deeper
    /// than the truncation depth (and ray ends) map to the depth-`D` stub.
    pub fn project(&self, point: &Point, depth: u32) -> Point {
        let coords = point
            .coords()
            .iter()
            .enumerate()
            .map(|(fi, c)| {
                let clamped = match c {
                    Coord::Core(_) => return c.clone(),
                    Coord::Ray { ray, depth: d } => (ray.clone(), (*d).min(depth)),
                    Coord::End(ray) => (ray.clone(), depth),
                };
                let (ray, d) = clamped;
                if d == 0 {
                    let factor = &self.factors[fi];
                    Coord::Core(factor.rays[factor.ray_index[&ray]].base.clone())
                } else {
                    Coord::Ray { ray, depth: d }
                }
            })
            .collect();
        Point::new(coords)
    }

    /// Enumerates boundary points. For a single factor the set is complete
    /// (one point per ray) and independent of `depth`; for products the
    /// points whose vertex coordinates lie within `depth` are listed and the
    /// enumeration is flagged partial.
    pub fn enumerate_boundary(&self, depth: u32) -> BoundaryEnumeration {
        if self.is_single_factor() {
            let factor = &self.factors[0];
            let points = factor
                .rays
                .iter()
                .map(|r| {
                    (
                        r.id.clone(),
                        Point::single(Coord::End(r.id.clone())),
                    )
                })
                .collect();
            return BoundaryEnumeration {
                points,
                complete: true,
            };
        }
        // per-factor coordinate menus within depth
        let mut menus: Vec<Vec<Coord>> = Vec::new();
        for factor in &self.factors {
            let mut menu: Vec<Coord> = factor
                .core
                .ids()
                .iter()
                .map(|v| Coord::Core(v.clone()))
                .collect();
            for ray in &factor.rays {
                for d in 1..=depth {
                    menu.push(Coord::Ray {
                        ray: ray.id.clone(),
                        depth: d,
                    });
                }
                menu.push(Coord::End(ray.id.clone()));
            }
            menus.push(menu);
        }
        let mut points = Vec::new();
        let mut stack = vec![0usize; self.factors.len()];
        'outer: loop {
            let coords: Vec<Coord> = stack
                .iter()
                .enumerate()
                .map(|(fi, &k)| menus[fi][k].clone())
                .collect();
            let p = Point::new(coords);
            if p.is_boundary() {
                points.push(p);
            }
            // odometer
            for fi in (0..stack.len()).rev() {
                stack[fi] += 1;
                if stack[fi] < menus[fi].len() {
                    continue 'outer;
                }
                stack[fi] = 0;
            }
            break;
        }
        let reverse: BTreeMap<&Point, &String> =
            self.named.iter().map(|(k, v)| (v, k)).collect();
        let mut named_points: Vec<(String, Point)> = points
            .into_iter()
            .map(|p| {
                let name = reverse
                    .get(&p)
                    .map(|s| (*s).clone())
                    .unwrap_or_else(|| p.render());
                (name, p)
            })
            .collect();
        named_points.sort();
        BoundaryEnumeration {
            points: named_points,
            complete: false,
        }
    }

    /// Distance between two vertices of the (possibly infinite) complex.
    pub fn vertex_distance(&self, p: &Point, q: &Point) -> Result<u64, RollerError> {
        if !p.is_vertex() {
            return Err(RollerError::NotAVertex(p.render()));
        }
        if !q.is_vertex() {
            return Err(RollerError::NotAVertex(q.render()));
        }
        let mut total = 0u64;
        for (fi, factor) in self.factors.iter().enumerate() {
            total += factor_vertex_distance(factor, p.coord(fi), q.coord(fi)) as u64;
        }
        Ok(total)
    }

    /// Neighbor vertices of a vertex point, sorted by rendering, paired with
    /// the wall descriptor of the connecting edge.
    pub fn vertex_neighbors(
        &self,
        p: &Point,
    ) -> Result<Vec<(Point, super::WallDescriptor)>, RollerError> {
        use super::{WallDescriptor, WallKind};
        if !p.is_vertex() {
            return Err(RollerError::NotAVertex(p.render()));
        }
        let mut out = Vec::new();
        for (fi, factor) in self.factors.iter().enumerate() {
            let mut push = |coord: Coord, kind: WallKind| {
                let mut coords = p.coords().to_vec();
                coords[fi] = coord;
                out.push((
                    Point::new(coords),
                    WallDescriptor { factor: fi, kind },
                ));
            };
            match p.coord(fi) {
                Coord::Core(v) => {
                    let vi = factor.core.index_of(v).expect("validated point");
                    for &n in factor.core.neighbors(vi) {
                        let e = factor
                            .core
                            .edge_between(vi, n)
                            .expect("adjacency implies edge");
                        let wall = factor
                            .core
                            .wall_of_edge(e)
                            .expect("core walls computed at load");
                        push(
                            Coord::Core(factor.core.id_of(n).to_string()),
                            WallKind::Core(wall),
                        );
                    }
                    for &ri in factor.rays_at(vi) {
                        push(
                            Coord::Ray {
                                ray: factor.rays[ri].id.clone(),
                                depth: 1,
                            },
                            WallKind::Ray { ray: ri, depth: 1 },
                        );
                    }
                }
                Coord::Ray { ray, depth } => {
                    let ri = factor.ray_index(ray).expect("validated point");
                    push(
                        Coord::Ray {
                            ray: ray.clone(),
                            depth: depth + 1,
                        },
                        WallKind::Ray {
                            ray: ri,
                            depth: depth + 1,
                        },
                    );
                    let below = if *depth == 1 {
                        Coord::Core(factor.rays[ri].base.clone())
                    } else {
                        Coord::Ray {
                            ray: ray.clone(),
                            depth: depth - 1,
                        }
                    };
                    push(
                        below,
                        WallKind::Ray {
                            ray: ri,
                            depth: *depth,
                        },
                    );
                }
                Coord::End(_) => unreachable!("vertex points have no end coordinates"),
            }
        }
        out.sort_by(|a, b| a.0.render().cmp(&b.0.render()));
        Ok(out)
    }

    /// The wall dual to the edge between two adjacent vertices.
    pub fn edge_wall(
        &self,
        p: &Point,
        q: &Point,
    ) -> Result<super::WallDescriptor, RollerError> {
        use super::{WallDescriptor, WallKind};
        if !p.is_vertex() {
            return Err(RollerError::NotAVertex(p.render()));
        }
        if !q.is_vertex() {
            return Err(RollerError::NotAVertex(q.render()));
        }
        let not_adjacent = || RollerError::NotAdjacent(p.render(), q.render());
        let mut differing = None;
        for fi in 0..self.factors.len() {
            if p.coord(fi) != q.coord(fi) {
                if differing.is_some() {
                    return Err(not_adjacent());
                }
                differing = Some(fi);
            }
        }
        let fi = differing.ok_or_else(not_adjacent)?;
        let factor = &self.factors[fi];
        let kind = match (p.coord(fi), q.coord(fi)) {
            (Coord::Core(u), Coord::Core(v)) => {
                let (ui, vi) = (
                    factor.core.index_of(u).expect("validated point"),
                    factor.core.index_of(v).expect("validated point"),
                );
                let e = factor.core.edge_between(ui, vi).ok_or_else(not_adjacent)?;
                super::WallKind::Core(
                    factor.core.wall_of_edge(e).expect("core walls computed at load"),
                )
            }
            (Coord::Core(u), Coord::Ray { ray, depth: 1 })
            | (Coord::Ray { ray, depth: 1 }, Coord::Core(u)) => {
                let ri = factor.ray_index(ray).expect("validated point");
                if factor.rays[ri].base != *u {
                    return Err(not_adjacent());
                }
                WallKind::Ray { ray: ri, depth: 1 }
            }
            (Coord::Ray { ray: r1, depth: d1 }, Coord::Ray { ray: r2, depth: d2 })
                if r1 == r2 && d1.abs_diff(*d2) == 1 =>
            {
                let ri = factor.ray_index(r1).expect("validated point");
                WallKind::Ray {
                    ray: ri,
                    depth: *d1.max(d2),
                }
            }
            _ => return Err(not_adjacent()),
        };
        Ok(WallDescriptor { factor: fi, kind })
    }

    fn compute_eligibility(&self) -> EligibilityReport {
        let is_point = self
            .factors
            .iter()
            .all(|f| f.core.vertex_count() == 1 && f.rays.is_empty());
        let nontrivial: Vec<usize> = self
            .factors
            .iter()
            .enumerate()
            .filter(|(_, f)| f.core.vertex_count() > 1 || !f.rays.is_empty())
            .map(|(i, _)| i)
            .collect();
        // A factor is a line iff every core vertex has full degree 2 and at
        // least one ray makes it infinite; the complex is a line iff exactly
        // one factor is nontrivial and that factor is a line.
        let is_line = nontrivial.len() == 1 && {
            let f = &self.factors[nontrivial[0]];
            !f.rays.is_empty()
                && (0..f.core.vertex_count()).all(|v| f.full_degree(v) == 2)
        };
        // Extremal vertices are read off the depth-1 truncation at vertices
        // whose full edge set is visible there: those with all-core
        // coordinates. Ray vertices are skinny and never extremal.
        let trunc = {
            let parts: Vec<Arc<FactorTrunc>> = (0..self.factors.len())
                .map(|fi| self.factor_trunc(fi, 1))
                .collect();
            build_product(1, &parts)
        };
        let mut extremal = Vec::new();
        for v in 0..trunc.graph.vertex_count() {
            let point = &trunc.points[v];
            if !point.coords().iter().all(|c| matches!(c, Coord::Core(_))) {
                continue;
            }
            let nbrs = trunc.graph.neighbors(v);
            if nbrs.is_empty() {
                continue;
            }
            let cone = nbrs.iter().any(|&a| {
                nbrs.iter()
                    .all(|&b| b == a || trunc.graph.spans_square(v, a, b))
            });
            if cone {
                extremal.push(point.clone());
            }
        }
        EligibilityReport {
            extremal_vertices: extremal,
            is_line,
            is_point,
        }
    }
}

/// Boundary points with display names; complete for single factors.
#[derive(Debug, Clone)]
pub struct BoundaryEnumeration {
    pub points: Vec<(String, Point)>,
    pub complete: bool,
}

pub(super) fn factor_vertex_distance(factor: &Factor, a: &Coord, b: &Coord) -> u32 {
    let core = &factor.core;
    match (a, b) {
        (Coord::Core(u), Coord::Core(v)) => core
            .dist_idx(core.index_of(u).unwrap(), core.index_of(v).unwrap()),
        (Coord::Core(u), Coord::Ray { ray, depth }) => {
            let base = factor.ray_base_idx[factor.ray_index[ray]];
            core.dist_idx(core.index_of(u).unwrap(), base) + depth
        }
        (Coord::Ray { .. }, Coord::Core(_)) => factor_vertex_distance(factor, b, a),
        (
            Coord::Ray { ray: r1, depth: d1 },
            Coord::Ray { ray: r2, depth: d2 },
        ) => {
            if r1 == r2 {
                d1.abs_diff(*d2)
            } else {
                let b1 = factor.ray_base_idx[factor.ray_index[r1]];
                let b2 = factor.ray_base_idx[factor.ray_index[r2]];
                d1 + core.dist_idx(b1, b2) + d2
            }
        }
        _ => unreachable!("vertex coordinates only"),
    }
}

pub(super) fn build_factor_trunc(factor: &Factor, depth: u32) -> FactorTrunc {
    let mut coords: Vec<Coord> = factor
        .core
        .ids()
        .iter()
        .map(|v| Coord::Core(v.clone()))
        .collect();
    for ray in &factor.rays {
        for d in 1..=depth {
            coords.push(Coord::Ray {
                ray: ray.id.clone(),
                depth: d,
            });
        }
    }
    coords.sort();
    let ids: Vec<String> = coords.iter().map(Coord::render).collect();
    let mut edges: Vec<(String, String)> = Vec::new();
    for &(u, v) in factor.core.edges() {
        edges.push((
            Coord::Core(factor.core.id_of(u).to_string()).render(),
            Coord::Core(factor.core.id_of(v).to_string()).render(),
        ));
    }
    for ray in &factor.rays {
        let mut prev = Coord::Core(ray.base.clone());
        for d in 1..=depth {
            let next = Coord::Ray {
                ray: ray.id.clone(),
                depth: d,
            };
            edges.push((prev.render(), next.render()));
            prev = next;
        }
    }
    let graph = MedianGraph::new(ids, edges).expect("factor truncation is well-formed");
    // remap coords to the graph's sorted order
    let coords: Vec<Coord> = graph
        .ids()
        .iter()
        .map(|id| Coord::parse(id).expect("round-trip"))
        .collect();
    let index: BTreeMap<Coord, usize> = coords
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    FactorTrunc {
        graph,
        coords,
        index,
    }
}

pub(super) fn build_product(depth: u32, parts: &[Arc<FactorTrunc>]) -> Truncation {
    let sizes: Vec<usize> = parts.iter().map(|p| p.graph.vertex_count()).collect();
    let mut points = Vec::new();
    let mut stack = vec![0usize; parts.len()];
    'outer: loop {
        let coords: Vec<Coord> = stack
            .iter()
            .enumerate()
            .map(|(fi, &k)| parts[fi].coords[k].clone())
            .collect();
        points.push(Point::new(coords));
        for fi in (0..stack.len()).rev() {
            stack[fi] += 1;
            if stack[fi] < sizes[fi] {
                continue 'outer;
            }
            stack[fi] = 0;
        }
        break;
    }
    points.sort();
    let ids: Vec<String> = points.iter().map(Point::render).collect();
    let mut edges: Vec<(String, String)> = Vec::new();
    for p in &points {
        for (fi, part) in parts.iter().enumerate() {
            let ci = part.index[p.coord(fi)];
            for &n in part.graph.neighbors(ci) {
                let ncoord = &part.coords[n];
                if ncoord > p.coord(fi) {
                    let mut coords = p.coords().to_vec();
                    coords[fi] = ncoord.clone();
                    edges.push((p.render(), Point::new(coords).render()));
                }
            }
        }
    }
    let graph = MedianGraph::new(ids, edges).expect("product truncation is well-formed");
    let points: Vec<Point> = graph
        .ids()
        .iter()
        .map(|id| parse_product_point(id, parts.len()))
        .collect();
    let index = points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    Truncation {
        depth,
        graph,
        points,
        index,
    }
}

fn parse_product_point(id: &str, factors: usize) -> Point {
    let inner = id
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(id);
    let coords: Vec<Coord> = inner
        .split(',')
        .map(|c| Coord::parse(c).expect("round-trip"))
        .collect();
    assert_eq!(coords.len(), factors);
    Point::new(coords)
}
