//! Checking whether a boundary map preserves admissibility and cross
//! ratios, by exhaustive sweep over all ordered 4-tuples of the finite
//! boundary.

use std::collections::BTreeMap;

use crate::roller::CrtTriple;

use super::oracle::CrossRatioOracle;
use super::RigidityError;

/// A 4-tuple on which preservation fails, with both sides' data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusCounterexample {
    pub tuple: [String; 4],
    pub source_crt: CrtTriple,
    pub image_admissible: bool,
    pub image_crt: CrtTriple,
}

/// Result of one direction of the sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapCheck {
    pub preserved: bool,
    pub counterexample: Option<MobiusCounterexample>,
}

/// Verdict of the Moebius check, with injectivity and surjectivity flags so
/// embeddings are distinguishable from bijections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusVerdict {
    pub injective: bool,
    /// The image covers every id the target oracle lists.
    pub surjective_onto_ids: bool,
    /// The target oracle lists its complex's entire boundary.
    pub target_complete: bool,
    pub forward: MapCheck,
    /// Present when the map is a bijection of the id sets.
    pub inverse: Option<MapCheck>,
}

impl MobiusVerdict {
    /// Moebius in the definition's sense: admissible tuples map to
    /// admissible tuples with equal triples, in every checkable direction.
    pub fn is_mobius(&self) -> bool {
        self.forward.preserved
            && self.inverse.as_ref().map_or(true, |c| c.preserved)
    }

    /// Surjectivity onto the target's actual boundary, not merely onto the
    /// ids a partial oracle happens to list.
    pub fn surjective_onto_boundary(&self) -> bool {
        self.surjective_onto_ids && self.target_complete
    }

    pub fn bijective(&self) -> bool {
        self.injective && self.surjective_onto_ids
    }
}

fn sweep(
    map: &BTreeMap<String, String>,
    source: &CrossRatioOracle,
    target: &CrossRatioOracle,
) -> Result<MapCheck, RigidityError> {
    let ids = source.ids();
    let n = ids.len();
    let image: Vec<&str> = ids.iter().map(|id| map[id].as_str()).collect();
    let mut indices = [0usize; 4];
    loop {
        let tuple = [
            ids[indices[0]].as_str(),
            ids[indices[1]].as_str(),
            ids[indices[2]].as_str(),
            ids[indices[3]].as_str(),
        ];
        if source.admissible(tuple)? {
            let mapped = [
                image[indices[0]],
                image[indices[1]],
                image[indices[2]],
                image[indices[3]],
            ];
            let source_crt = source.crt(tuple)?;
            let image_admissible = target.admissible(mapped)?;
            let image_crt = target.crt(mapped)?;
            if !image_admissible || image_crt != source_crt {
                return Ok(MapCheck {
                    preserved: false,
                    counterexample: Some(MobiusCounterexample {
                        tuple: tuple.map(str::to_string),
                        source_crt,
                        image_admissible,
                        image_crt,
                    }),
                });
            }
        }
        let mut slot = 3;
        loop {
            indices[slot] += 1;
            if indices[slot] < n {
                break;
            }
            indices[slot] = 0;
            if slot == 0 {
                return Ok(MapCheck {
                    preserved: true,
                    counterexample: None,
                });
            }
            slot -= 1;
        }
    }
}

/// Exhaustive Moebius check of a candidate boundary map between two
/// oracles. The map must be total on the source ids and land in the target
/// ids; the inverse direction is checked whenever the map is a bijection.
pub fn is_mobius(
    map: &BTreeMap<String, String>,
    source: &CrossRatioOracle,
    target: &CrossRatioOracle,
) -> Result<MobiusVerdict, RigidityError> {
    for id in source.ids() {
        let to = map
            .get(id)
            .ok_or_else(|| RigidityError::NotTotal(id.clone()))?;
        if !target.contains(to) {
            return Err(RigidityError::UnknownId(to.clone()));
        }
    }
    for from in map.keys() {
        if !source.contains(from) {
            return Err(RigidityError::UnknownId(from.clone()));
        }
    }
    let mut seen = BTreeMap::new();
    let mut injective = true;
    for (from, to) in map {
        if let Some(prior) = seen.insert(to.clone(), from.clone()) {
            let _ = prior;
            injective = false;
        }
    }
    let surjective_onto_ids = target.ids().iter().all(|id| seen.contains_key(id));
    let forward = sweep(map, source, target)?;
    let inverse = if injective && surjective_onto_ids {
        let inverted: BTreeMap<String, String> =
            map.iter().map(|(k, v)| (v.clone(), k.clone())).collect();
        Some(sweep(&inverted, target, source)?)
    } else {
        None
    };
    Ok(MobiusVerdict {
        injective,
        surjective_onto_ids,
        target_complete: target.is_complete(),
        forward,
        inverse,
    })
}

/// A verified Moebius bijection between two oracles' boundaries.
#[derive(Debug, Clone)]
pub struct MobiusMap {
    forward: BTreeMap<String, String>,
    backward: BTreeMap<String, String>,
}

impl MobiusMap {
    /// Runs the full check and keeps the map only if it is a Moebius
    /// bijection in both directions.
    pub fn verify(
        map: BTreeMap<String, String>,
        source: &CrossRatioOracle,
        target: &CrossRatioOracle,
    ) -> Result<MobiusMap, RigidityError> {
        let verdict = is_mobius(&map, source, target)?;
        if !verdict.bijective() {
            return Err(RigidityError::NotBijective(format!(
                "injective: {}, surjective onto listed ids: {}",
                verdict.injective, verdict.surjective_onto_ids
            )));
        }
        if let Some(ce) = verdict
            .forward
            .counterexample
            .as_ref()
            .or(verdict.inverse.as_ref().and_then(|c| c.counterexample.as_ref()))
        {
            let [a, b, c, d] = ce.tuple.clone();
            return Err(RigidityError::NotMobius(a, b, c, d));
        }
        let backward = map.iter().map(|(k, v)| (v.clone(), k.clone())).collect();
        Ok(MobiusMap {
            forward: map,
            backward,
        })
    }

    pub fn image(&self, id: &str) -> Option<&str> {
        self.forward.get(id).map(String::as_str)
    }

    pub fn preimage(&self, id: &str) -> Option<&str> {
        self.backward.get(id).map(String::as_str)
    }

    pub fn forward(&self) -> &BTreeMap<String, String> {
        &self.forward
    }

    pub fn inverted(&self) -> MobiusMap {
        MobiusMap {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }
}
