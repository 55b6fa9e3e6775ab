//! Cross ratio oracles: a boundary point set with an admissibility predicate
//! and a cross ratio triple function, and nothing else.
//!
//! The oracle stores one record per unordered 4-multiset of boundary ids;
//! queries for ordered tuples permute the stored entries along the pairing
//! structure. An oracle realized from a live complex and one loaded from a
//! recorded table answer queries identically, which is what makes the
//! reconstruction provably boundary-only.

use std::collections::BTreeMap;

use crate::roller::{crt, is_admissible, ComplexDescription, Count, CrtTriple, Point};

use super::RigidityError;

/// Where the oracle's table came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Computed from a live complex of the given name.
    Live(String),
    /// Loaded from a recorded table.
    Recorded,
}

/// Stored data for one unordered 4-multiset, in sorted-id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleRecord {
    pub admissible: bool,
    pub crt: CrtTriple,
}

/// The pairing shape of an ordered 4-tuple: its three splittings into two
/// unordered pairs, as canonical keys.
fn pairing_shapes(t: [&str; 4]) -> [(String, String); 3] {
    let pair = |a: &str, b: &str| -> String {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        format!("{lo}\u{1}{hi}")
    };
    let shape = |p: String, q: String| -> (String, String) {
        if p <= q {
            (p, q)
        } else {
            (q, p)
        }
    };
    [
        shape(pair(t[0], t[1]), pair(t[2], t[3])),
        shape(pair(t[0], t[2]), pair(t[1], t[3])),
        shape(pair(t[0], t[3]), pair(t[1], t[2])),
    ]
}

#[derive(Debug)]
pub struct CrossRatioOracle {
    ids: Vec<String>,
    records: BTreeMap<[String; 4], OracleRecord>,
    complete: bool,
    provenance: Provenance,
}

impl CrossRatioOracle {
    /// Realizes the oracle from a live complex. Single-factor complexes
    /// contribute their whole (finite) boundary and the oracle is complete;
    /// product complexes contribute their named boundary points only and
    /// the oracle is flagged partial.
    pub fn from_complex(complex: &ComplexDescription) -> Result<CrossRatioOracle, RigidityError> {
        let (mut points, complete): (Vec<(String, Point)>, bool) = if complex.is_single_factor() {
            let e = complex.enumerate_boundary(1);
            (e.points, e.complete)
        } else {
            let named: Vec<(String, Point)> = complex
                .named_points()
                .iter()
                .filter(|(_, p)| p.is_boundary())
                .map(|(n, p)| (n.clone(), p.clone()))
                .collect();
            (named, false)
        };
        points.sort();
        let ids: Vec<String> = points.iter().map(|(n, _)| n.clone()).collect();
        let by_id: BTreeMap<&str, &Point> =
            points.iter().map(|(n, p)| (n.as_str(), p)).collect();
        let mut records = BTreeMap::new();
        for key in multisets(&ids) {
            let tuple = [
                by_id[key[0].as_str()],
                by_id[key[1].as_str()],
                by_id[key[2].as_str()],
                by_id[key[3].as_str()],
            ];
            let record = OracleRecord {
                admissible: is_admissible(complex, tuple),
                crt: crt(complex, tuple)?,
            };
            records.insert(key, record);
        }
        let oracle = CrossRatioOracle {
            ids,
            records,
            complete,
            provenance: Provenance::Live(complex.name().to_string()),
        };
        oracle.validate()?;
        Ok(oracle)
    }

    /// Loads a recorded table: one `(sorted multiset, admissible, entries)`
    /// row per multiset. The table must be complete over all multisets,
    /// canonical, symmetric under pairing-preserving permutations, and its
    /// admissibility flags must match the infinite-entry pattern.
    pub fn from_records(
        ids: Vec<String>,
        complete: bool,
        rows: Vec<([String; 4], bool, [Count; 3])>,
    ) -> Result<CrossRatioOracle, RigidityError> {
        let mut sorted_ids = ids;
        sorted_ids.sort();
        sorted_ids.dedup();
        let mut records = BTreeMap::new();
        for (key, admissible, entries) in rows {
            let mut sorted_key = key.clone();
            sorted_key.sort();
            if sorted_key != key {
                return Err(RigidityError::CorruptOracle(format!(
                    "record ids are not sorted: {}",
                    key.join(" ")
                )));
            }
            for id in &key {
                if sorted_ids.binary_search(id).is_err() {
                    return Err(RigidityError::UnknownId(id.clone()));
                }
            }
            let triple = CrtTriple::new(entries[0], entries[1], entries[2]);
            if triple.entries() != entries {
                return Err(RigidityError::CorruptOracle(format!(
                    "entries for {} are not in canonical form",
                    key.join(" ")
                )));
            }
            if records
                .insert(key.clone(), OracleRecord {
                    admissible,
                    crt: triple,
                })
                .is_some()
            {
                return Err(RigidityError::CorruptOracle(format!(
                    "duplicate record for {}",
                    key.join(" ")
                )));
            }
        }
        let oracle = CrossRatioOracle {
            ids: sorted_ids,
            records,
            complete,
            provenance: Provenance::Recorded,
        };
        oracle.validate()?;
        Ok(oracle)
    }

    fn validate(&self) -> Result<(), RigidityError> {
        let expected = multisets(&self.ids);
        if self.records.len() != expected.len()
            || expected.iter().any(|k| !self.records.contains_key(k))
        {
            return Err(RigidityError::CorruptOracle(format!(
                "table has {} records but {} multisets exist",
                self.records.len(),
                expected.len()
            )));
        }
        for (key, record) in &self.records {
            let infinite = record
                .crt
                .entries()
                .iter()
                .filter(|e| !e.is_finite())
                .count();
            if record.admissible != (infinite <= 1) {
                return Err(RigidityError::CorruptOracle(format!(
                    "admissibility flag for {} disagrees with the infinite-entry \
                     pattern of {}",
                    key.join(" "),
                    record.crt
                )));
            }
            // permutations fixing the pairing structure must fix the entries
            let shapes = pairing_shapes([
                key[0].as_str(),
                key[1].as_str(),
                key[2].as_str(),
                key[3].as_str(),
            ]);
            let entries = record.crt.entries();
            for i in 0..3 {
                for j in (i + 1)..3 {
                    if shapes[i] == shapes[j] && entries[i] != entries[j] {
                        return Err(RigidityError::CorruptOracle(format!(
                            "entries {i} and {j} of {} must agree (equal pairings) \
                             but are {} and {}",
                            key.join(" "),
                            entries[i],
                            entries[j]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn contains(&self, id: &str) -> bool {
        self.ids.binary_search_by(|probe| probe.as_str().cmp(id)).is_ok()
    }

    /// Iterates the stored records in sorted multiset order.
    pub fn records(&self) -> impl Iterator<Item = (&[String; 4], &OracleRecord)> {
        self.records.iter()
    }

    fn record_for(&self, tuple: [&str; 4]) -> Result<&OracleRecord, RigidityError> {
        for id in tuple {
            if !self.contains(id) {
                return Err(RigidityError::UnknownId(id.to_string()));
            }
        }
        let mut key = tuple.map(str::to_string);
        key.sort();
        self.records
            .get(&key)
            .ok_or_else(|| RigidityError::Internal(format!("missing record {}", key.join(" "))))
    }

    /// Admissibility of an ordered 4-tuple (a permutation-invariant notion).
    pub fn admissible(&self, tuple: [&str; 4]) -> Result<bool, RigidityError> {
        Ok(self.record_for(tuple)?.admissible)
    }

    /// The cross ratio triple of an ordered 4-tuple: the stored entries of
    /// the sorted representative, permuted along the pairing structure.
    pub fn crt(&self, tuple: [&str; 4]) -> Result<CrtTriple, RigidityError> {
        let record = self.record_for(tuple)?;
        let mut key = tuple.map(str::to_string);
        key.sort();
        let canonical_shapes = pairing_shapes([
            key[0].as_str(),
            key[1].as_str(),
            key[2].as_str(),
            key[3].as_str(),
        ]);
        let query_shapes = pairing_shapes(tuple);
        let entries = record.crt.entries();
        let mut out = [Count::Finite(0); 3];
        for (slot, shape) in query_shapes.iter().enumerate() {
            let position = canonical_shapes
                .iter()
                .position(|s| s == shape)
                .ok_or_else(|| {
                    RigidityError::Internal(format!(
                        "pairing shape of ({}) missing from its own multiset",
                        tuple.join(" ")
                    ))
                })?;
            out[slot] = entries[position];
        }
        Ok(CrtTriple::new(out[0], out[1], out[2]))
    }
}

/// All sorted 4-multisets over the given sorted id list.
fn multisets(ids: &[String]) -> Vec<[String; 4]> {
    let n = ids.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                for d in c..n {
                    out.push([
                        ids[a].clone(),
                        ids[b].clone(),
                        ids[c].clone(),
                        ids[d].clone(),
                    ]);
                }
            }
        }
    }
    out
}
