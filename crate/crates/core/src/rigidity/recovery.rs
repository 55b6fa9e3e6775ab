//! Recovering Gromov products at the median of an opposite triple from
//! oracle data alone, and from them exact distances between medians.
//!
//! For an opposite triple `(x1, x2 | x)` with median `m`, the triple
//! `crt(x1, x2, x, u)` equals `⟪(x.u)_m : (x2.u)_m : (x1.u)_m⟫`, and one of
//! the last two entries vanishes because the gate projection of `u` lands on
//! one side of `m`. The canonical representative therefore reads off the
//! three products directly. Products of two further points are recovered by
//! shifting `crt(x1, x2, u, v)` until its known entries match.

use std::collections::BTreeMap;

use crate::roller::Count;

use super::characterize::is_opposite_oracle;
use super::oracle::CrossRatioOracle;
use super::RigidityError;

/// A triple `(x1, x2 | pivot)` of boundary points with `x1` and `x2`
/// opposite with respect to `pivot`, plus the products recovered at its
/// median for every admissible fourth point.
#[derive(Debug, Clone)]
pub struct OppositeTriple {
    x1: String,
    x2: String,
    pivot: String,
    /// `u -> ((pivot.u)_m, (x2.u)_m, (x1.u)_m)`; absent for points whose
    /// 4-tuple with the triple is inadmissible.
    products: BTreeMap<String, [Count; 3]>,
}

impl OppositeTriple {
    /// Validates admissibility of the pairwise sub-tuples and the oracle
    /// opposition test, then recovers products for every boundary point.
    pub fn new(
        o: &CrossRatioOracle,
        x1: &str,
        x2: &str,
        pivot: &str,
    ) -> Result<OppositeTriple, RigidityError> {
        if !is_opposite_oracle(o, x1, x2, pivot)? {
            return Err(RigidityError::PreconditionFailed(format!(
                "{x1} and {x2} are not opposite with respect to {pivot}"
            )));
        }
        let mut triple = OppositeTriple {
            x1: x1.to_string(),
            x2: x2.to_string(),
            pivot: pivot.to_string(),
            products: BTreeMap::new(),
        };
        for u in o.ids() {
            if !o.admissible([x1, x2, pivot, u])? {
                continue;
            }
            let products = recover_products_fresh(o, &triple, u)?;
            triple.products.insert(u.clone(), products);
        }
        Ok(triple)
    }

    pub fn x1(&self) -> &str {
        &self.x1
    }

    pub fn x2(&self) -> &str {
        &self.x2
    }

    pub fn pivot(&self) -> &str {
        &self.pivot
    }

    pub fn members(&self) -> [&str; 3] {
        [&self.x1, &self.x2, &self.pivot]
    }

    /// Cached `((pivot.u)_m, (x2.u)_m, (x1.u)_m)`.
    pub fn products_at_median(&self, u: &str) -> Result<[Count; 3], RigidityError> {
        self.products.get(u).copied().ok_or_else(|| {
            RigidityError::NotAdmissibleTuple(
                self.x1.clone(),
                self.x2.clone(),
                self.pivot.clone(),
                u.to_string(),
            )
        })
    }
}

fn recover_products_fresh(
    o: &CrossRatioOracle,
    t: &OppositeTriple,
    u: &str,
) -> Result<[Count; 3], RigidityError> {
    let triple = o.crt([t.x1(), t.x2(), t.pivot(), u])?;
    let entries = triple.entries();
    // opposition forces min((x1.u)_m, (x2.u)_m) = 0, so the canonical
    // representative's vanishing entry is the true zero and the entries are
    // the true products
    if entries[1].min(entries[2]) != Count::Finite(0) {
        return Err(RigidityError::CorruptOracle(format!(
            "triple ({} {} {} {u}) = {triple} violates the vanishing-product rule \
             of an opposite triple",
            t.x1(),
            t.x2(),
            t.pivot()
        )));
    }
    Ok(entries)
}

/// `((pivot.u)_m, (x2.u)_m, (x1.u)_m)` at the median of the triple, read
/// from the canonical cross ratio triple.
pub fn recover_products_at_median(
    o: &CrossRatioOracle,
    t: &OppositeTriple,
    u: &str,
) -> Result<[Count; 3], RigidityError> {
    if !o.admissible([t.x1(), t.x2(), t.pivot(), u])? {
        return Err(RigidityError::NotAdmissibleTuple(
            t.x1().to_string(),
            t.x2().to_string(),
            t.pivot().to_string(),
            u.to_string(),
        ));
    }
    recover_products_fresh(o, t, u)
}

/// `(u . v)` at the median of the triple: the canonical
/// `crt(x1, x2, u, v)` is shifted by the amount that realigns its second
/// and third entries with the products already recovered for `u` and `v`;
/// the two shifts must agree.
pub fn recover_pair_product(
    o: &CrossRatioOracle,
    t: &OppositeTriple,
    u: &str,
    v: &str,
) -> Result<Count, RigidityError> {
    for (a, b) in [(t.pivot(), u), (t.pivot(), v), (u, v)] {
        if !o.admissible([t.x1(), t.x2(), a, b])? {
            return Err(RigidityError::NotAdmissibleTuple(
                t.x1().to_string(),
                t.x2().to_string(),
                a.to_string(),
                b.to_string(),
            ));
        }
    }
    let pu = t.products_at_median(u)?;
    let pv = t.products_at_median(v)?;
    // crt(x1, x2, u, v) at the median is
    //   << (u.v) : (x1.u) + (x2.v) : (x1.v) + (x2.u) >>
    let b_true = pu[2] + pv[1];
    let c_true = pv[2] + pu[1];
    let canonical = o.crt([t.x1(), t.x2(), u, v])?.entries();
    let shift_from = |truth: Count, canon: Count| -> Result<Option<u64>, RigidityError> {
        match (truth, canon) {
            (Count::Finite(t), Count::Finite(c)) => {
                if t < c {
                    Err(RigidityError::ShiftMismatch(format!(
                        "negative shift from entry {c} above its true value {t}"
                    )))
                } else {
                    Ok(Some(t - c))
                }
            }
            (Count::Infinite, Count::Infinite) => Ok(None),
            _ => Err(RigidityError::ShiftMismatch(format!(
                "entry finiteness mismatch: true {truth}, canonical {canon}"
            ))),
        }
    };
    let shift_b = shift_from(b_true, canonical[1])?;
    let shift_c = shift_from(c_true, canonical[2])?;
    let shift = match (shift_b, shift_c) {
        (Some(b), Some(c)) => {
            if b != c {
                return Err(RigidityError::ShiftMismatch(format!(
                    "shifts {b} and {c} disagree for ({} {} {u} {v})",
                    t.x1(),
                    t.x2()
                )));
            }
            b
        }
        (Some(b), None) => b,
        (None, Some(c)) => c,
        (None, None) => {
            return Err(RigidityError::Internal(
                "admissible tuple with two infinite pairing entries".into(),
            ))
        }
    };
    Ok(canonical[0] + Count::Finite(shift))
}

/// Exact distance between the medians of two opposite triples, computed
/// from oracle data only:
/// `d(m1, m2) = (y1.y2)_{m1} + |(y1.y)_{m1} - (y2.y)_{m1}|`
/// where `t2 = (y1, y2 | y)`.
pub fn median_class_distance(
    o: &CrossRatioOracle,
    t1: &OppositeTriple,
    t2: &OppositeTriple,
) -> Result<u64, RigidityError> {
    let (y1, y2, y) = (t2.x1(), t2.x2(), t2.pivot());
    let finite = |label: &str, value: Count| -> Result<u64, RigidityError> {
        value.finite().ok_or_else(|| {
            RigidityError::HypothesisFailed(format!(
                "{label} is infinite for triples ({} {} | {}) and ({y1} {y2} | {y})",
                t1.x1(),
                t1.x2(),
                t1.pivot()
            ))
        })
    };
    let d12 = finite("(y1.y2)", recover_pair_product(o, t1, y1, y2)?)?;
    let d1 = finite("(y1.y)", recover_pair_product(o, t1, y1, y)?)?;
    let d2 = finite("(y2.y)", recover_pair_product(o, t1, y2, y)?)?;
    Ok(d12 + d1.abs_diff(d2))
}
