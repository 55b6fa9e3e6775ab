//! Test support: seeded generation of random rigidity-eligible complexes
//! and random relabelings of them.
//!
//! Cores are grown as connected subsets of small hypercubes and closed
//! under the coordinatewise majority (the hypercube median), which makes
//! them median graphs whenever the closure stays connected; the builder
//! validates and retries otherwise. Rays are then attached until no
//! extremal vertex remains.

use std::collections::{BTreeMap, BTreeSet};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use cubecross::median::MedianGraph;
use cubecross::roller::ComplexDescription;

pub fn random_eligible_complex(seed: u64) -> ComplexDescription {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..500 {
        if let Some(complex) = try_generate(&mut rng) {
            return complex;
        }
    }
    panic!("no eligible complex for seed {seed} after 500 attempts");
}

fn try_generate(rng: &mut ChaCha8Rng) -> Option<ComplexDescription> {
    let dim: u32 = rng.gen_range(2..=4);
    let target: usize = rng.gen_range(1..=10);
    let mut masks: BTreeSet<u32> = BTreeSet::new();
    masks.insert(rng.gen_range(0..(1u32 << dim)));
    while masks.len() < target {
        let pick = rng.gen_range(0..masks.len());
        let &base = masks.iter().nth(pick).expect("pick in range");
        masks.insert(base ^ (1 << rng.gen_range(0..dim)));
    }
    // close under coordinatewise majority
    loop {
        let members: Vec<u32> = masks.iter().copied().collect();
        let mut added = false;
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate().skip(i + 1) {
                let _ = j;
                for &c in &members {
                    let median = (a & b) | (b & c) | (c & a);
                    if masks.insert(median) {
                        added = true;
                    }
                }
            }
        }
        if masks.len() > 16 {
            return None;
        }
        if !added {
            break;
        }
    }
    let width = dim as usize;
    let id_of = |m: u32| format!("v{m:0width$b}");
    let ids: Vec<String> = masks.iter().map(|&m| id_of(m)).collect();
    let mut edges: Vec<(String, String)> = Vec::new();
    for &a in &masks {
        for &b in &masks {
            if a < b && (a ^ b).count_ones() == 1 {
                edges.push((id_of(a), id_of(b)));
            }
        }
    }
    {
        let core = MedianGraph::new(ids.clone(), edges.clone()).ok()?;
        if !core.is_connected() || !core.validate().is_ok() {
            return None;
        }
    }
    // attach rays until eligible
    let mut rays: Vec<(String, String)> = Vec::new();
    for _ in 0..32 {
        let core = MedianGraph::new(ids.clone(), edges.clone()).expect("validated above");
        let complex =
            ComplexDescription::load("random", vec![(core, rays.clone())], BTreeMap::new())
                .ok()?;
        let report = complex.eligibility();
        if report.eligible() {
            if rays.len() < 3 || rays.len() > 8 {
                return None;
            }
            return Some(complex);
        }
        let next_ray = format!("r{}", rays.len());
        if report.is_point {
            let at = ids[0].clone();
            rays.push((next_ray, at.clone()));
            rays.push((format!("r{}", rays.len()), at.clone()));
            rays.push((format!("r{}", rays.len()), at));
        } else if report.is_line {
            rays.push((next_ray, ids[0].clone()));
        } else {
            let extremal = &report.extremal_vertices[0];
            let at = match extremal.coord(0) {
                cubecross::roller::Coord::Core(v) => v.clone(),
                _ => return None,
            };
            rays.push((next_ray, at));
        }
        if rays.len() > 8 {
            return None;
        }
    }
    None
}

/// A relabeled copy of a single-factor complex together with the induced
/// boundary bijection (old ray id to new ray id).
pub fn relabel(
    complex: &ComplexDescription,
    seed: u64,
) -> (ComplexDescription, BTreeMap<String, String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factor = complex.factor(0);
    let core = factor.core();
    let mut vertex_names: Vec<String> = (0..core.vertex_count())
        .map(|i| format!("w{i:02}"))
        .collect();
    vertex_names.shuffle(&mut rng);
    let vertex_map: BTreeMap<&str, &str> = core
        .ids()
        .iter()
        .enumerate()
        .map(|(i, old)| (old.as_str(), vertex_names[i].as_str()))
        .collect();
    let mut ray_names: Vec<String> = (0..factor.rays().len())
        .map(|i| format!("q{i}"))
        .collect();
    ray_names.shuffle(&mut rng);
    let ray_map: BTreeMap<String, String> = factor
        .rays()
        .iter()
        .enumerate()
        .map(|(i, ray)| (ray.id.clone(), ray_names[i].clone()))
        .collect();
    let ids: Vec<String> = core.ids().iter().map(|v| vertex_map[v.as_str()].to_string()).collect();
    let edges: Vec<(String, String)> = core
        .edges()
        .iter()
        .map(|&(u, v)| {
            (
                vertex_map[core.id_of(u)].to_string(),
                vertex_map[core.id_of(v)].to_string(),
            )
        })
        .collect();
    let rays: Vec<(String, String)> = factor
        .rays()
        .iter()
        .map(|ray| {
            (
                ray_map[&ray.id].clone(),
                vertex_map[ray.base.as_str()].to_string(),
            )
        })
        .collect();
    let rebuilt = ComplexDescription::load(
        format!("{}_relabeled", complex.name()),
        vec![(MedianGraph::new(ids, edges).expect("relabeling preserves validity"), rays)],
        BTreeMap::new(),
    )
    .expect("relabeling preserves validity");
    (rebuilt, ray_map)
}
