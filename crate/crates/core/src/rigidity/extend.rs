//! Extending a Moebius bijection of boundaries to the unique cubical
//! isomorphism of the complexes.
//!
//! Each fat vertex is the median of an opposite triple of straight boundary
//! points; its image is the median of the image triple. Images are checked
//! identical across all representing triples, segments are transported
//! isometrically, and skinny rays follow the boundary bijection. The result
//! is verified to be a distance-preserving bijection of 1-skeleta whose
//! boundary extension is the given map.

use std::collections::BTreeMap;

use crate::roller::{classify_vertices, median_bar, ComplexDescription, Coord, Point};

use super::characterize::is_opposite_direct;
use super::mobius::MobiusMap;
use super::skeleton::FatSkeleton;
use super::RigidityError;

/// A cubical isomorphism between two single-factor complexes, given by the
/// images of all core vertices plus the ray pairing; images of ray vertices
/// follow by walking the paired skinny rays.
#[derive(Debug, Clone)]
pub struct CubicalMap {
    core_map: BTreeMap<String, Point>,
    boundary_map: BTreeMap<String, String>,
    fat_map: BTreeMap<String, String>,
    ray_info: BTreeMap<String, RayImage>,
}

#[derive(Debug, Clone)]
struct RayImage {
    /// Skinny core vertices of the source complex between the fat base and
    /// this ray (exclusive of the base).
    source_prefix_len: usize,
    /// The image ray's id in the target complex.
    target_ray: String,
    /// Skinny core vertices of the target complex along the image ray.
    target_prefix: Vec<String>,
}

impl CubicalMap {
    /// Image of a vertex of the source complex.
    pub fn apply_vertex(&self, p: &Point) -> Result<Point, RigidityError> {
        if p.coords().len() != 1 {
            return Err(RigidityError::Internal(
                "cubical maps are defined on single-factor complexes".into(),
            ));
        }
        match p.coord(0) {
            Coord::Core(v) => self.core_map.get(v).cloned().ok_or_else(|| {
                RigidityError::Internal(format!("no image recorded for core vertex {v}"))
            }),
            Coord::Ray { ray, depth } => {
                let info = self.ray_info.get(ray).ok_or_else(|| {
                    RigidityError::Internal(format!("no image recorded for ray {ray}"))
                })?;
                let position = info.source_prefix_len + *depth as usize;
                if position <= info.target_prefix.len() {
                    Ok(Point::single(Coord::Core(
                        info.target_prefix[position - 1].clone(),
                    )))
                } else {
                    Ok(Point::single(Coord::Ray {
                        ray: info.target_ray.clone(),
                        depth: (position - info.target_prefix.len()) as u32,
                    }))
                }
            }
            Coord::End(ray) => {
                let image = self.apply_boundary(ray)?;
                Ok(Point::single(Coord::End(image.to_string())))
            }
        }
    }

    /// Image of a boundary point by id.
    pub fn apply_boundary(&self, id: &str) -> Result<&str, RigidityError> {
        self.boundary_map
            .get(id)
            .map(String::as_str)
            .ok_or_else(|| RigidityError::UnknownId(id.to_string()))
    }

    pub fn core_map(&self) -> &BTreeMap<String, Point> {
        &self.core_map
    }

    pub fn boundary_map(&self) -> &BTreeMap<String, String> {
        &self.boundary_map
    }

    pub fn fat_map(&self) -> &BTreeMap<String, String> {
        &self.fat_map
    }
}

fn boundary_ids(complex: &ComplexDescription) -> Vec<String> {
    complex
        .enumerate_boundary(1)
        .points
        .into_iter()
        .map(|(id, _)| id)
        .collect()
}

/// All opposite triples of boundary points with a vertex median, grouped by
/// the median's core vertex id.
fn opposite_triples_by_median(
    complex: &ComplexDescription,
) -> Result<BTreeMap<String, Vec<[String; 3]>>, RigidityError> {
    let ids = boundary_ids(complex);
    let point_of: BTreeMap<&str, Point> = ids
        .iter()
        .map(|id| (id.as_str(), Point::single(Coord::End(id.clone()))))
        .collect();
    let mut grouped: BTreeMap<String, Vec<[String; 3]>> = BTreeMap::new();
    for (i, a) in ids.iter().enumerate() {
        for b in &ids[i + 1..] {
            for c in &ids {
                if c == a || c == b {
                    continue;
                }
                let (pa, pb, pc) = (&point_of[a.as_str()], &point_of[b.as_str()], &point_of[c.as_str()]);
                let m = median_bar(complex, pa, pb, pc)?;
                if !m.is_vertex() {
                    continue;
                }
                if !is_opposite_direct(complex, pa, pb, pc)? {
                    continue;
                }
                let core_id = match m.coord(0) {
                    Coord::Core(v) => v.clone(),
                    Coord::Ray { .. } => continue, // medians at skinny ray vertices are not fat
                    Coord::End(_) => unreachable!("vertex median"),
                };
                grouped
                    .entry(core_id)
                    .or_default()
                    .push([a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    Ok(grouped)
}

/// Extends a Moebius bijection to the cubical isomorphism it determines.
/// Refusals (product complexes, ineligible complexes, id mismatches) are
/// distinguished from verification failures, which would contradict the
/// rigidity theorem and therefore signal a bug.
pub fn extend_isomorphism(
    f: &MobiusMap,
    source: &ComplexDescription,
    target: &ComplexDescription,
) -> Result<CubicalMap, RigidityError> {
    if !source.is_single_factor() || !target.is_single_factor() {
        return Err(RigidityError::ExtensionRefused(
            "extension is supported for single-factor complexes only".into(),
        ));
    }
    for (complex, label) in [(source, "source"), (target, "target")] {
        if let Some(reason) = complex.eligibility().reason() {
            return Err(RigidityError::ExtensionRefused(format!(
                "{label} complex is not rigidity-eligible: {reason}"
            )));
        }
    }
    let source_boundary = boundary_ids(source);
    let target_boundary = boundary_ids(target);
    for id in &source_boundary {
        let image = f.image(id).ok_or_else(|| {
            RigidityError::ExtensionRefused(format!("map is undefined on {id}"))
        })?;
        if !target_boundary.iter().any(|t| t == image) {
            return Err(RigidityError::ExtensionRefused(format!(
                "image {image} is not a boundary point of the target"
            )));
        }
    }
    if f.forward().len() != source_boundary.len()
        || target_boundary
            .iter()
            .any(|t| f.preimage(t).is_none())
    {
        return Err(RigidityError::ExtensionRefused(
            "map is not a bijection of the two boundaries".into(),
        ));
    }

    let source_dec = classify_vertices(source)?;
    let target_dec = classify_vertices(target)?;

    // fat vertices via image medians of opposite triples, checked
    // well-defined across every representing triple
    let grouped = opposite_triples_by_median(source)?;
    let mut fat_map: BTreeMap<String, String> = BTreeMap::new();
    for fat in &source_dec.fat {
        let triples = grouped.get(fat).ok_or_else(|| {
            RigidityError::ExtensionFailed(format!(
                "fat vertex {fat} is the median of no opposite triple"
            ))
        })?;
        let mut image: Option<String> = None;
        for [a, b, c] in triples {
            let fp = |id: &str| -> Result<Point, RigidityError> {
                Ok(Point::single(Coord::End(
                    f.image(id)
                        .ok_or_else(|| RigidityError::UnknownId(id.to_string()))?
                        .to_string(),
                )))
            };
            let m = median_bar(target, &fp(a)?, &fp(b)?, &fp(c)?)?;
            let id = match (m.is_vertex(), m.coord(0)) {
                (true, Coord::Core(v)) => v.clone(),
                _ => {
                    return Err(RigidityError::ExtensionFailed(format!(
                        "image median of ({a} {b} | {c}) is not a fat vertex"
                    )))
                }
            };
            match &image {
                None => image = Some(id),
                Some(prior) if *prior != id => {
                    return Err(RigidityError::ExtensionFailed(format!(
                        "image of {fat} is ambiguous: {prior} vs {id}"
                    )))
                }
                Some(_) => {}
            }
        }
        fat_map.insert(fat.clone(), image.expect("triples is nonempty"));
    }

    // the fat map must be a label-preserving bijection
    let source_skeleton = FatSkeleton::from_decomposition(&source_dec)?;
    let target_skeleton = FatSkeleton::from_decomposition(&target_dec)?;
    if source_skeleton.vertex_count() != target_skeleton.vertex_count() {
        return Err(RigidityError::ExtensionFailed(
            "fat parts have different sizes".into(),
        ));
    }
    let target_index: BTreeMap<&str, usize> = target_skeleton
        .names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let mut image_of: Vec<usize> = Vec::new();
    for name in &source_skeleton.names {
        let image = fat_map.get(name).expect("fat map is total");
        image_of.push(*target_index.get(image.as_str()).ok_or_else(|| {
            RigidityError::ExtensionFailed(format!("{image} is not fat in the target"))
        })?);
    }
    {
        let mut used = vec![false; image_of.len()];
        for &j in &image_of {
            if used[j] {
                return Err(RigidityError::ExtensionFailed(
                    "fat map is not injective".into(),
                ));
            }
            used[j] = true;
        }
    }
    for i in 0..image_of.len() {
        for j in 0..image_of.len() {
            if source_skeleton.label[i][j] != target_skeleton.label[image_of[i]][image_of[j]] {
                return Err(RigidityError::ExtensionFailed(format!(
                    "connection between {} and {} is not preserved",
                    source_skeleton.names[i], source_skeleton.names[j]
                )));
            }
        }
    }

    // skinny rays must transport along f
    for (i, rays) in source_skeleton.rays.iter().enumerate() {
        let mut image_rays: Vec<String> = rays
            .iter()
            .map(|r| {
                f.image(r)
                    .map(str::to_string)
                    .ok_or_else(|| RigidityError::UnknownId(r.clone()))
            })
            .collect::<Result<_, _>>()?;
        image_rays.sort();
        if image_rays != target_skeleton.rays[image_of[i]] {
            return Err(RigidityError::ExtensionFailed(format!(
                "rays at {} do not transport onto rays at {}",
                source_skeleton.names[i], target_skeleton.names[image_of[i]]
            )));
        }
    }

    // assemble the full core map: fat vertices, segment interiors, and the
    // skinny core vertices along each ray
    let mut core_map: BTreeMap<String, Point> = fat_map
        .iter()
        .map(|(k, v)| (k.clone(), Point::single(Coord::Core(v.clone()))))
        .collect();
    let target_segment = |a: &str, b: &str| -> Option<&crate::roller::SkinnySegment> {
        target_dec
            .segments
            .iter()
            .find(|s| (s.ends.0 == a && s.ends.1 == b) || (s.ends.0 == b && s.ends.1 == a))
    };
    for seg in &source_dec.segments {
        let ia = fat_map[&seg.ends.0].as_str();
        let ib = fat_map[&seg.ends.1].as_str();
        let image = target_segment(ia, ib).ok_or_else(|| {
            RigidityError::ExtensionFailed(format!(
                "no target segment between {ia} and {ib}"
            ))
        })?;
        if image.length != seg.length {
            return Err(RigidityError::ExtensionFailed(format!(
                "segment between {ia} and {ib} has length {} instead of {}",
                image.length, seg.length
            )));
        }
        let oriented: Vec<&String> = if image.ends.0 == ia {
            image.interior.iter().collect()
        } else {
            image.interior.iter().rev().collect()
        };
        for (k, v) in seg.interior.iter().enumerate() {
            core_map.insert(
                v.clone(),
                Point::single(Coord::Core(oriented[k].clone())),
            );
        }
    }
    let mut boundary_map: BTreeMap<String, String> = BTreeMap::new();
    let mut ray_info: BTreeMap<String, RayImage> = BTreeMap::new();
    for ray in &source_dec.rays {
        let image_id = f
            .image(&ray.ray_id)
            .ok_or_else(|| RigidityError::UnknownId(ray.ray_id.clone()))?
            .to_string();
        boundary_map.insert(ray.ray_id.clone(), image_id.clone());
        let target_ray = target_dec
            .rays
            .iter()
            .find(|r| r.ray_id == image_id)
            .ok_or_else(|| {
                RigidityError::ExtensionFailed(format!(
                    "target has no skinny ray toward {image_id}"
                ))
            })?;
        // positions along the two skinny rays correspond one to one
        for (k, v) in ray.core_prefix.iter().enumerate() {
            let image_point = if k < target_ray.core_prefix.len() {
                Point::single(Coord::Core(target_ray.core_prefix[k].clone()))
            } else {
                Point::single(Coord::Ray {
                    ray: image_id.clone(),
                    depth: (k - target_ray.core_prefix.len() + 1) as u32,
                })
            };
            core_map.insert(v.clone(), image_point);
        }
        ray_info.insert(
            ray.ray_id.clone(),
            RayImage {
                source_prefix_len: ray.core_prefix.len(),
                target_ray: image_id,
                target_prefix: target_ray.core_prefix.clone(),
            },
        );
    }

    let map = CubicalMap {
        core_map,
        boundary_map,
        fat_map,
        ray_info,
    };
    verify_isometry(&map, source, target)?;
    Ok(map)
}

/// Verifies the assembled map on a finite window: injective, distance
/// preserving, and covering the whole target core.
fn verify_isometry(
    map: &CubicalMap,
    source: &ComplexDescription,
    target: &ComplexDescription,
) -> Result<(), RigidityError> {
    let target_prefix_max = map
        .ray_info
        .values()
        .map(|info| info.target_prefix.len() as u32)
        .max()
        .unwrap_or(0);
    let depth = target_prefix_max + 2;
    let window = source.truncation(depth);
    let mut images = Vec::new();
    for p in window.points() {
        images.push(map.apply_vertex(p)?);
    }
    let mut seen = std::collections::BTreeSet::new();
    for q in &images {
        if !seen.insert(q.render()) {
            return Err(RigidityError::ExtensionFailed(format!(
                "image vertex {} repeats",
                q.render()
            )));
        }
    }
    for (i, p) in window.points().iter().enumerate() {
        for (j, q) in window.points().iter().enumerate().skip(i + 1) {
            let d_source = source.vertex_distance(p, q)?;
            let d_target = target.vertex_distance(&images[i], &images[j])?;
            if d_source != d_target {
                return Err(RigidityError::ExtensionFailed(format!(
                    "distance {d_source} between {} and {} maps to {d_target}",
                    p.render(),
                    q.render()
                )));
            }
        }
    }
    let covered: std::collections::BTreeSet<&str> = images
        .iter()
        .filter_map(|p| match p.coord(0) {
            Coord::Core(v) => Some(v.as_str()),
            _ => None,
        })
        .collect();
    for id in target.factor(0).core().ids() {
        if !covered.contains(id.as_str()) {
            return Err(RigidityError::ExtensionFailed(format!(
                "target core vertex {id} is not covered"
            )));
        }
    }
    Ok(())
}

/// Outcome of the uniqueness enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessReport {
    /// All 1-skeleton isomorphisms respecting the ray structure.
    pub total_isomorphisms: u64,
    /// Those whose boundary extension equals the given map.
    pub extensions_of_map: u64,
    /// Exactly one extension exists and its fat part is the given one.
    pub unique_and_matches: bool,
}

/// Enumerates all cubical isomorphisms between the complexes and checks
/// that exactly one extends the boundary map `f`, namely `map`.
pub fn verify_uniqueness(
    f: &MobiusMap,
    source: &ComplexDescription,
    target: &ComplexDescription,
    map: &CubicalMap,
) -> Result<UniquenessReport, RigidityError> {
    let source_skeleton = FatSkeleton::from_decomposition(&classify_vertices(source)?)?;
    let target_skeleton = FatSkeleton::from_decomposition(&classify_vertices(target)?)?;
    let isos = source_skeleton.isomorphisms(&target_skeleton);
    let total = source_skeleton.isomorphism_count(&target_skeleton);
    let mut extensions = 0u64;
    let mut matches_map = false;
    for iso in &isos {
        let compatible = source_skeleton.rays.iter().enumerate().all(|(i, rays)| {
            let mut image_rays: Vec<&str> = rays
                .iter()
                .filter_map(|r| f.image(r))
                .collect();
            image_rays.sort_unstable();
            image_rays.len() == rays.len()
                && image_rays
                    == target_skeleton.rays[iso[i]]
                        .iter()
                        .map(String::as_str)
                        .collect::<Vec<_>>()
        });
        if !compatible {
            continue;
        }
        extensions += 1;
        let same_fat = source_skeleton.names.iter().enumerate().all(|(i, name)| {
            map.fat_map
                .get(name)
                .map(|img| img == &target_skeleton.names[iso[i]])
                .unwrap_or(false)
        });
        if same_fat {
            matches_map = true;
        }
    }
    Ok(UniquenessReport {
        total_isomorphisms: total,
        extensions_of_map: extensions,
        unique_and_matches: extensions == 1 && matches_map,
    })
}
