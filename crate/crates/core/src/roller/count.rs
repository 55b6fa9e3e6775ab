//! Extended counting values: exact wall counts, signed cross ratios, and the
//! cross ratio triple `⟪a:b:c⟫`.

use std::fmt;
use std::ops::Add;

/// An exact wall count: a finite natural number or infinity. Finite values
/// are never saturated approximations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Count {
    Finite(u64),
    Infinite,
}

impl Count {
    pub fn is_finite(self) -> bool {
        matches!(self, Count::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Count::Finite(n) => Some(n),
            Count::Infinite => None,
        }
    }

    pub fn expect_finite(self, what: &str) -> u64 {
        match self {
            Count::Finite(n) => n,
            Count::Infinite => panic!("expected finite count for {what}"),
        }
    }
}

impl Add for Count {
    type Output = Count;
    fn add(self, rhs: Count) -> Count {
        match (self, rhs) {
            (Count::Finite(a), Count::Finite(b)) => Count::Finite(a + b),
            _ => Count::Infinite,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => write!(f, "inf"),
        }
    }
}

/// A cross ratio value: an integer or a signed infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrossRatio {
    Finite(i64),
    PlusInfinity,
    MinusInfinity,
}

impl CrossRatio {
    /// `a - b` for two counts; `None` when both are infinite.
    pub fn difference(a: Count, b: Count) -> Option<CrossRatio> {
        match (a, b) {
            (Count::Finite(a), Count::Finite(b)) => {
                Some(CrossRatio::Finite(a as i64 - b as i64))
            }
            (Count::Infinite, Count::Finite(_)) => Some(CrossRatio::PlusInfinity),
            (Count::Finite(_), Count::Infinite) => Some(CrossRatio::MinusInfinity),
            (Count::Infinite, Count::Infinite) => None,
        }
    }

    pub fn negate(self) -> CrossRatio {
        match self {
            CrossRatio::Finite(n) => CrossRatio::Finite(-n),
            CrossRatio::PlusInfinity => CrossRatio::MinusInfinity,
            CrossRatio::MinusInfinity => CrossRatio::PlusInfinity,
        }
    }

    /// Extended sum; `None` for `+inf + -inf`.
    pub fn checked_add(self, rhs: CrossRatio) -> Option<CrossRatio> {
        use CrossRatio::*;
        match (self, rhs) {
            (Finite(a), Finite(b)) => Some(Finite(a + b)),
            (PlusInfinity, MinusInfinity) | (MinusInfinity, PlusInfinity) => None,
            (PlusInfinity, _) | (_, PlusInfinity) => Some(PlusInfinity),
            (MinusInfinity, _) | (_, MinusInfinity) => Some(MinusInfinity),
        }
    }
}

impl fmt::Display for CrossRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossRatio::Finite(n) => write!(f, "{n}"),
            CrossRatio::PlusInfinity => write!(f, "+inf"),
            CrossRatio::MinusInfinity => write!(f, "-inf"),
        }
    }
}

/// The equivalence class `⟪a:b:c⟫` of a triple of extended naturals under a
/// common additive shift, stored in canonical form: either all entries are
/// infinite, or the smallest finite entry is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CrtTriple {
    entries: [Count; 3],
}

impl CrtTriple {
    /// Canonicalizes by subtracting the minimum finite entry.
    pub fn new(a: Count, b: Count, c: Count) -> CrtTriple {
        let raw = [a, b, c];
        let min = raw.iter().filter_map(|e| e.finite()).min();
        let entries = match min {
            None => raw,
            Some(m) => raw.map(|e| match e {
                Count::Finite(n) => Count::Finite(n - m),
                Count::Infinite => Count::Infinite,
            }),
        };
        CrtTriple { entries }
    }

    pub fn entries(&self) -> [Count; 3] {
        self.entries
    }

    /// True for `⟪+inf:+inf:+inf⟫`, the only class with a single member.
    pub fn all_infinite(&self) -> bool {
        self.entries.iter().all(|e| !e.is_finite())
    }

    /// Difference of two entries as a cross ratio (`None` for `inf - inf`).
    pub fn entry_difference(&self, i: usize, j: usize) -> Option<CrossRatio> {
        CrossRatio::difference(self.entries[i], self.entries[j])
    }

    /// Recovers `cr(x,y,z,w)` from `crt(x,y,z,w)`: second entry minus third.
    pub fn cross_ratio(&self) -> Option<CrossRatio> {
        self.entry_difference(1, 2)
    }
}

impl fmt::Display for CrtTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.entries[0], self.entries[1], self.entries[2])
    }
}
