//! Rebuilding a complex from a cross ratio oracle.
//!
//! The pipeline: find the straight boundary points; collect all opposite
//! triples among them; cluster triples whose medians coincide (distance
//! zero) into fat vertices; join fat vertices at distance one by edges and
//! distance-`d` pairs with no intermediate vertex by skinny segments; and
//! attach a skinny ray for each boundary point at the cluster its witness
//! triple selects. Every quantity is derived from admissibility flags and
//! cross ratio triples alone.

use std::collections::BTreeMap;

use crate::median::MedianGraph;
use crate::roller::{ComplexDescription, Coord};

use super::characterize::{skinny_ray_witness, straight_points};
use super::oracle::CrossRatioOracle;
use super::recovery::{median_class_distance, OppositeTriple};
use super::RigidityError;

/// The output of reconstruction: fat vertices with exact pairwise
/// distances, edges, skinny segments, and skinny rays labelled by boundary
/// ids.
#[derive(Debug, Clone)]
pub struct ReconstructedComplex {
    /// Deterministic synthetic names, `f0, f1, ...` in order of discovery
    /// (lexicographic by clustering triple).
    pub fat_names: Vec<String>,
    /// Exact distances between fat vertices.
    pub distances: Vec<Vec<u64>>,
    /// Fat pairs at distance 1.
    pub edges: Vec<(usize, usize)>,
    /// Fat pairs at distance >= 2 with no fat vertex between them.
    pub segments: Vec<(usize, usize, u64)>,
    /// `(fat vertex, boundary id)` for each skinny ray.
    pub rays: Vec<(usize, String)>,
}

impl ReconstructedComplex {
    /// Realizes the reconstruction as a loadable complex: the fat graph
    /// plus segment interior vertices, with one ray per boundary id.
    /// Segment interiors are named `f<i>_f<j>_<k>`.
    pub fn to_description(&self) -> Result<ComplexDescription, RigidityError> {
        let mut vertices: Vec<String> = self.fat_names.clone();
        let mut edges: Vec<(String, String)> = Vec::new();
        for &(a, b) in &self.edges {
            edges.push((self.fat_names[a].clone(), self.fat_names[b].clone()));
        }
        for &(a, b, len) in &self.segments {
            let mut previous = self.fat_names[a].clone();
            for k in 1..len {
                let id = format!("{}_{}_{k}", self.fat_names[a], self.fat_names[b]);
                vertices.push(id.clone());
                edges.push((previous, id.clone()));
                previous = id;
            }
            edges.push((previous, self.fat_names[b].clone()));
        }
        let core = MedianGraph::new(vertices, edges).map_err(|e| {
            RigidityError::CorruptOracle(format!("reconstructed core is malformed: {e}"))
        })?;
        let rays: Vec<(String, String)> = self
            .rays
            .iter()
            .map(|(at, boundary)| (boundary.clone(), self.fat_names[*at].clone()))
            .collect();
        let named = self
            .rays
            .iter()
            .map(|(_, boundary)| (boundary.clone(), vec![Coord::End(boundary.clone())]))
            .collect();
        ComplexDescription::load("reconstructed", vec![(core, rays)], named).map_err(|e| {
            RigidityError::CorruptOracle(format!("reconstructed complex fails to load: {e}"))
        })
    }
}

/// Reconstructs the fat graph, segments and rays of the complex behind the
/// oracle. Exact for oracles of rigidity-eligible single-factor complexes.
pub fn reconstruct(o: &CrossRatioOracle) -> Result<ReconstructedComplex, RigidityError> {
    let straight = straight_points(o)?;
    if straight.is_empty() {
        return Err(RigidityError::CorruptOracle(
            "no straight boundary points".into(),
        ));
    }

    // all opposite triples among straight points, lexicographic, with the
    // unordered pair normalized
    let mut triples: Vec<OppositeTriple> = Vec::new();
    let mut triple_index: BTreeMap<(String, String, String), usize> = BTreeMap::new();
    for (i, x1) in straight.iter().enumerate() {
        for x2 in &straight[i + 1..] {
            for pivot in &straight {
                if pivot == x1 || pivot == x2 {
                    continue;
                }
                let pairwise_ok = [(x1, x2), (x2, pivot), (pivot, x1)]
                    .into_iter()
                    .try_fold(true, |acc, (a, b)| -> Result<bool, RigidityError> {
                        Ok(acc && o.admissible([a, a, b, b])?)
                    })?;
                if !pairwise_ok {
                    continue;
                }
                match OppositeTriple::new(o, x1, x2, pivot) {
                    Ok(t) => {
                        triple_index.insert(
                            (x1.clone(), x2.clone(), pivot.clone()),
                            triples.len(),
                        );
                        triples.push(t);
                    }
                    Err(RigidityError::PreconditionFailed(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    if triples.is_empty() {
        return Err(RigidityError::CorruptOracle(
            "no opposite triples among straight points".into(),
        ));
    }

    // cluster by vanishing median distance; the first member of each class
    // acts as representative, with retries over members when the distance
    // hypotheses fail for a particular pair
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of: Vec<usize> = vec![usize::MAX; triples.len()];
    for (ti, triple) in triples.iter().enumerate() {
        let mut home = None;
        for (ci, members) in classes.iter().enumerate() {
            let d = distance_with_retry(o, &triples, members, ti)?;
            if d == 0 {
                if let Some(prior) = home {
                    return Err(RigidityError::CorruptOracle(format!(
                        "triple ({} {} | {}) is at distance zero from two clusters \
                         ({prior} and {ci})",
                        triple.x1(),
                        triple.x2(),
                        triple.pivot()
                    )));
                }
                home = Some(ci);
            }
        }
        match home {
            Some(ci) => {
                classes[ci].push(ti);
                class_of[ti] = ci;
            }
            None => {
                class_of[ti] = classes.len();
                classes.push(vec![ti]);
            }
        }
    }

    // exact distances between clusters, verified consistent across every
    // representative pair the hypotheses admit
    let k = classes.len();
    let mut distances = vec![vec![0u64; k]; k];
    for a in 0..k {
        for b in (a + 1)..k {
            let mut value: Option<u64> = None;
            for &ta in &classes[a] {
                for &tb in &classes[b] {
                    match median_class_distance(o, &triples[ta], &triples[tb]) {
                        Ok(d) => match value {
                            None => value = Some(d),
                            Some(prior) if prior != d => {
                                return Err(RigidityError::CorruptOracle(format!(
                                    "cluster distance between {a} and {b} is ambiguous: \
                                     {prior} vs {d}"
                                )))
                            }
                            Some(_) => {}
                        },
                        Err(RigidityError::HypothesisFailed(_))
                        | Err(RigidityError::NotAdmissibleTuple(..)) => continue,
                        Err(e) => return Err(e),
                    }
                }
            }
            let d = value.ok_or_else(|| {
                RigidityError::CorruptOracle(format!(
                    "no representative pair admits the distance between clusters {a} and {b}"
                ))
            })?;
            if d == 0 {
                return Err(RigidityError::CorruptOracle(format!(
                    "distinct clusters {a} and {b} at distance zero"
                )));
            }
            distances[a][b] = d;
            distances[b][a] = d;
        }
    }
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                if distances[x][z] > distances[x][y] + distances[y][z] {
                    return Err(RigidityError::CorruptOracle(format!(
                        "triangle inequality fails on clusters {x}, {y}, {z}"
                    )));
                }
            }
        }
    }

    let edges: Vec<(usize, usize)> = (0..k)
        .flat_map(|a| ((a + 1)..k).map(move |b| (a, b)))
        .filter(|&(a, b)| distances[a][b] == 1)
        .collect();
    let segments: Vec<(usize, usize, u64)> = (0..k)
        .flat_map(|a| ((a + 1)..k).map(move |b| (a, b)))
        .filter(|&(a, b)| distances[a][b] >= 2)
        .filter(|&(a, b)| {
            !(0..k).any(|via| {
                via != a
                    && via != b
                    && distances[a][via] + distances[via][b] == distances[a][b]
            })
        })
        .map(|(a, b)| (a, b, distances[a][b]))
        .collect();

    // each boundary point attaches at the cluster of its witness triples
    let mut rays = Vec::new();
    for x in o.ids() {
        let witnesses = skinny_ray_witness(o, x, &straight)?;
        if witnesses.is_empty() {
            return Err(RigidityError::CorruptOracle(format!(
                "boundary point {x} is not detected as a skinny ray end"
            )));
        }
        let mut cluster = None;
        for (y, z) in &witnesses {
            let (lo, hi) = if x.as_str() < y.as_str() {
                (x.clone(), y.clone())
            } else {
                (y.clone(), x.clone())
            };
            let ti = *triple_index.get(&(lo, hi, z.clone())).ok_or_else(|| {
                RigidityError::Internal(format!(
                    "witness triple ({x} {y} | {z}) was not collected"
                ))
            })?;
            let ci = class_of[ti];
            match cluster {
                None => cluster = Some(ci),
                Some(prior) if prior != ci => {
                    return Err(RigidityError::CorruptOracle(format!(
                        "skinny-ray witnesses for {x} select different clusters \
                         ({prior} and {ci})"
                    )))
                }
                Some(_) => {}
            }
        }
        rays.push((cluster.expect("witness list is nonempty"), x.clone()));
    }

    let fat_names: Vec<String> = (0..k).map(|i| format!("f{i}")).collect();
    Ok(ReconstructedComplex {
        fat_names,
        distances,
        edges,
        segments,
        rays,
    })
}

/// Distance from a candidate triple to a cluster, retrying over the
/// cluster's members (in insertion order) when the corollary's hypotheses
/// fail for a particular representative pair.
fn distance_with_retry(
    o: &CrossRatioOracle,
    triples: &[OppositeTriple],
    members: &[usize],
    candidate: usize,
) -> Result<u64, RigidityError> {
    let mut last_failure = None;
    for &m in members {
        match median_class_distance(o, &triples[m], &triples[candidate]) {
            Ok(d) => return Ok(d),
            Err(RigidityError::HypothesisFailed(msg))
            | Err(RigidityError::NotAdmissibleTuple(_, _, _, msg)) => {
                last_failure = Some(msg);
            }
            Err(e) => return Err(e),
        }
    }
    Err(RigidityError::CorruptOracle(format!(
        "no representative admits the distance to a cluster ({})",
        last_failure.unwrap_or_default()
    )))
}
