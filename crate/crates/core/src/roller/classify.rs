//! Skinny/fat decomposition of a single-factor complex.
//!
//! Degree-2 vertices are skinny; the skinny part splits into straight
//! segments between fat vertices and straight rays from a fat vertex out to
//! a boundary point. This is the structure the boundary-only reconstruction
//! rebuilds, so it is also the shape reconstruction results are compared
//! against.

use std::collections::BTreeSet;

use super::complex::{ComplexDescription, Factor};
use super::RollerError;

/// A maximal skinny path between two fat vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SkinnySegment {
    /// Fat endpoints, sorted.
    pub ends: (String, String),
    /// Number of edges; at least 2 (a single edge between fat vertices
    /// belongs to the fat part).
    pub length: u32,
    /// Interior skinny vertices, listed from `ends.0` to `ends.1`.
    pub interior: Vec<String>,
}

/// A skinny ray: an attached ray together with any skinny core vertices
/// between the fat part and its attach point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SkinnyRay {
    /// The fat vertex the ray is based at.
    pub base: String,
    /// Skinny core vertices from `base` (exclusive) out to the attach
    /// vertex (inclusive when it is skinny).
    pub core_prefix: Vec<String>,
    /// The attached ray's id, which names the boundary endpoint.
    pub ray_id: String,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Core vertices of degree other than 2, sorted.
    pub fat: Vec<String>,
    /// Skinny core vertices, sorted.
    pub skinny_core: Vec<String>,
    /// Core edges with both endpoints fat.
    pub fat_edges: Vec<(String, String)>,
    pub segments: Vec<SkinnySegment>,
    pub rays: Vec<SkinnyRay>,
}

impl Decomposition {
    /// The skinny rays based at the given fat vertex.
    pub fn rays_at(&self, fat: &str) -> Vec<&SkinnyRay> {
        self.rays.iter().filter(|r| r.base == fat).collect()
    }
}

/// Walks from a skinny vertex away from `prev` through skinny vertices,
/// returning the interior chain walked (starting with `from` if skinny) and
/// the fat vertex reached.
fn skinny_walk(
    factor: &Factor,
    is_fat: &[bool],
    mut prev: Option<usize>,
    mut current: usize,
) -> Result<(Vec<usize>, usize), RollerError> {
    let core = factor.core();
    let mut chain = Vec::new();
    for _ in 0..=core.vertex_count() {
        if is_fat[current] {
            return Ok((chain, current));
        }
        if !factor.rays_at(current).is_empty() && prev.is_some() {
            // a skinny vertex carrying a ray has only that ray besides the
            // edge we came through; the walk cannot continue into the core
            return Err(RollerError::Internal(format!(
                "skinny walk ran into ray-bearing vertex {}",
                core.id_of(current)
            )));
        }
        chain.push(current);
        let next = core
            .neighbors(current)
            .iter()
            .copied()
            .find(|&nb| Some(nb) != prev)
            .ok_or_else(|| {
                RollerError::Internal(format!(
                    "skinny walk dead-ends at {}",
                    core.id_of(current)
                ))
            })?;
        prev = Some(current);
        current = next;
    }
    Err(RollerError::Internal(
        "skinny walk did not terminate; skinny cycle in the core".into(),
    ))
}

/// Splits a single-factor complex into its fat part, skinny segments and
/// skinny rays. Undefined for products, single points and lines.
pub fn classify_vertices(
    complex: &ComplexDescription,
) -> Result<Decomposition, RollerError> {
    if !complex.is_single_factor() {
        return Err(RollerError::ProductUnsupported);
    }
    if complex.eligibility().is_point {
        return Err(RollerError::PointComplex);
    }
    if complex.eligibility().is_line {
        return Err(RollerError::LineComplex);
    }
    let factor = complex.factor(0);
    let core = factor.core();
    let n = core.vertex_count();
    let is_fat: Vec<bool> = (0..n).map(|v| factor.full_degree(v) != 2).collect();
    let fat: Vec<String> = (0..n)
        .filter(|&v| is_fat[v])
        .map(|v| core.id_of(v).to_string())
        .collect();
    let skinny_core: Vec<String> = (0..n)
        .filter(|&v| !is_fat[v])
        .map(|v| core.id_of(v).to_string())
        .collect();
    let fat_edges: Vec<(String, String)> = core
        .edges()
        .iter()
        .filter(|&&(u, v)| is_fat[u] && is_fat[v])
        .map(|&(u, v)| (core.id_of(u).to_string(), core.id_of(v).to_string()))
        .collect();

    // walk inward from each attached ray through skinny vertices to the fat part
    let mut on_ray: BTreeSet<usize> = BTreeSet::new();
    let mut rays = Vec::new();
    for ray in factor.rays() {
        let attach = core.index_of(&ray.base).expect("validated ray base");
        let (mut chain, base) = skinny_walk(factor, &is_fat, None, attach)?;
        on_ray.extend(chain.iter().copied());
        chain.reverse();
        rays.push(SkinnyRay {
            base: core.id_of(base).to_string(),
            core_prefix: chain.iter().map(|&v| core.id_of(v).to_string()).collect(),
            ray_id: ray.id.clone(),
        });
    }

    // remaining skinny vertices sit on segments between two fat vertices
    let mut segments = Vec::new();
    let mut seen = on_ray;
    for v in 0..n {
        if is_fat[v] || seen.contains(&v) {
            continue;
        }
        let nbrs = core.neighbors(v);
        if nbrs.len() != 2 {
            return Err(RollerError::Internal(format!(
                "skinny core vertex {} is not on a two-sided chain",
                core.id_of(v)
            )));
        }
        let (left_chain, left_end) = skinny_walk(factor, &is_fat, Some(v), nbrs[0])?;
        let (right_chain, right_end) = skinny_walk(factor, &is_fat, Some(v), nbrs[1])?;
        let mut interior: Vec<usize> =
            left_chain.iter().rev().copied().collect();
        interior.push(v);
        interior.extend(right_chain.iter().copied());
        seen.extend(interior.iter().copied());
        let (mut a, mut b) = (
            core.id_of(left_end).to_string(),
            core.id_of(right_end).to_string(),
        );
        if a == b {
            // a skinny loop at one fat vertex needs an extremal corner and
            // cannot occur in the complexes the decomposition is used on
            return Err(RollerError::Internal(format!(
                "skinny chain loops back to {a}"
            )));
        }
        let mut interior_ids: Vec<String> =
            interior.iter().map(|&t| core.id_of(t).to_string()).collect();
        if a > b {
            std::mem::swap(&mut a, &mut b);
            interior_ids.reverse();
        }
        segments.push(SkinnySegment {
            ends: (a, b),
            length: interior_ids.len() as u32 + 1,
            interior: interior_ids,
        });
    }
    segments.sort();
    rays.sort();
    Ok(Decomposition {
        fat,
        skinny_core,
        fat_edges,
        segments,
        rays,
    })
}
