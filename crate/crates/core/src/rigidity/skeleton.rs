//! Decorated fat graphs and exhaustive isomorphism enumeration.
//!
//! A single-factor complex is determined by its fat vertices, the labelled
//! connections between them (label 1 for an edge, the length for a skinny
//! segment) and the boundary ids of the skinny rays at each fat vertex.
//! Cubical isomorphisms correspond to label-preserving bijections of the
//! fat vertices together with a pairing of the rays at matched vertices, so
//! enumerating them is feasible for the small complexes under test.

use std::collections::BTreeMap;

use crate::roller::Decomposition;

use super::reconstruct::ReconstructedComplex;
use super::RigidityError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FatSkeleton {
    /// Fat vertex names, sorted.
    pub names: Vec<String>,
    /// `label[i][j]`: 0 for no connection, 1 for an edge, the length for a
    /// skinny segment.
    pub label: Vec<Vec<u64>>,
    /// Sorted boundary ids of the skinny rays at each fat vertex.
    pub rays: Vec<Vec<String>>,
}

impl FatSkeleton {
    pub fn from_decomposition(d: &Decomposition) -> Result<FatSkeleton, RigidityError> {
        let names = d.fat.clone();
        let index: BTreeMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let n = names.len();
        let mut label = vec![vec![0u64; n]; n];
        let mut set = |a: usize, b: usize, value: u64| -> Result<(), RigidityError> {
            if label[a][b] != 0 {
                return Err(RigidityError::Internal(format!(
                    "parallel connections between {} and {}",
                    names[a], names[b]
                )));
            }
            label[a][b] = value;
            label[b][a] = value;
            Ok(())
        };
        for (a, b) in &d.fat_edges {
            set(index[a.as_str()], index[b.as_str()], 1)?;
        }
        for seg in &d.segments {
            set(
                index[seg.ends.0.as_str()],
                index[seg.ends.1.as_str()],
                seg.length as u64,
            )?;
        }
        let mut rays = vec![Vec::new(); n];
        for ray in &d.rays {
            rays[index[ray.base.as_str()]].push(ray.ray_id.clone());
        }
        for list in &mut rays {
            list.sort();
        }
        Ok(FatSkeleton { names, label, rays })
    }

    pub fn from_reconstruction(r: &ReconstructedComplex) -> Result<FatSkeleton, RigidityError> {
        let n = r.fat_names.len();
        let mut label = vec![vec![0u64; n]; n];
        for &(a, b) in &r.edges {
            label[a][b] = 1;
            label[b][a] = 1;
        }
        for &(a, b, len) in &r.segments {
            if label[a][b] != 0 {
                return Err(RigidityError::CorruptOracle(format!(
                    "parallel connections between {} and {}",
                    r.fat_names[a], r.fat_names[b]
                )));
            }
            label[a][b] = len;
            label[b][a] = len;
        }
        let mut rays = vec![Vec::new(); n];
        for (at, boundary) in &r.rays {
            rays[*at].push(boundary.clone());
        }
        for list in &mut rays {
            list.sort();
        }
        Ok(FatSkeleton {
            names: r.fat_names.clone(),
            label,
            rays,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    fn compatible(&self, other: &FatSkeleton, i: usize, j: usize) -> bool {
        if self.rays[i].len() != other.rays[j].len() {
            return false;
        }
        let mut mine: Vec<u64> = self.label[i].iter().copied().filter(|&l| l != 0).collect();
        let mut theirs: Vec<u64> = other.label[j].iter().copied().filter(|&l| l != 0).collect();
        mine.sort();
        theirs.sort();
        mine == theirs
    }

    /// All label- and ray-count-preserving bijections onto `other`, as
    /// vectors `image[i] = j`.
    pub fn isomorphisms(&self, other: &FatSkeleton) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        if n != other.vertex_count() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.search(other, 0, &mut image, &mut used, &mut out);
        out
    }

    fn search(
        &self,
        other: &FatSkeleton,
        position: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = self.vertex_count();
        if position == n {
            out.push(image.clone());
            return;
        }
        for candidate in 0..n {
            if used[candidate] || !self.compatible(other, position, candidate) {
                continue;
            }
            let consistent = (0..position).all(|earlier| {
                self.label[position][earlier] == other.label[candidate][image[earlier]]
            });
            if !consistent {
                continue;
            }
            image[position] = candidate;
            used[candidate] = true;
            self.search(other, position + 1, image, used, out);
            used[candidate] = false;
            image[position] = usize::MAX;
        }
    }

    /// Whether some isomorphism exists; cheaper than collecting all.
    pub fn isomorphic(&self, other: &FatSkeleton) -> bool {
        !self.isomorphisms(other).is_empty()
    }

    /// Number of full 1-skeleton isomorphisms: each fat bijection extends by
    /// independently pairing the rays at matched vertices.
    pub fn isomorphism_count(&self, other: &FatSkeleton) -> u64 {
        let mut total = 0u64;
        for iso in self.isomorphisms(other) {
            let mut ways = 1u64;
            for (i, _) in iso.iter().enumerate() {
                ways = ways.saturating_mul(factorial(self.rays[i].len() as u64));
            }
            total = total.saturating_add(ways);
        }
        total
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product::<u64>().max(1)
}
