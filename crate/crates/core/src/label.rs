//! Component numbers and critical labels.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("component number must have at least one entry")]
    EmptyComponentNumber,
    #[error("component number entries must be at least 1")]
    ZeroEntry,
    #[error("local degree must be at least 2, got {0}")]
    BadLocalDegree(u32),
}

/// Compound address `{k1, ..., kl}` of a preimage component.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct ComponentNumber(Vec<u32>);

impl ComponentNumber {
    pub fn new(entries: Vec<u32>) -> Result<Self, LabelError> {
        if entries.is_empty() {
            return Err(LabelError::EmptyComponentNumber);
        }
        if entries.contains(&0) {
            return Err(LabelError::ZeroEntry);
        }
        Ok(Self(entries))
    }

    /// `{1}`, the number of the first critical point.
    pub fn first() -> Self {
        Self(vec![1])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl TryFrom<Vec<u32>> for ComponentNumber {
    type Error = LabelError;

    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<ComponentNumber> for Vec<u32> {
    fn from(c: ComponentNumber) -> Self {
        c.0
    }
}

impl fmt::Display for ComponentNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Unordered pair `C C̄`. Stored sorted, so derived equality and hashing
/// already treat `{A,B}` and `{B,A}` as the same value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[ComponentNumber; 2]", into = "[ComponentNumber; 2]")]
pub struct ComponentPair {
    lo: ComponentNumber,
    hi: ComponentNumber,
}

impl ComponentPair {
    pub fn new(a: ComponentNumber, b: ComponentNumber) -> Self {
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn first() -> Self {
        Self::new(ComponentNumber::first(), ComponentNumber::first())
    }

    pub fn members(&self) -> (&ComponentNumber, &ComponentNumber) {
        (&self.lo, &self.hi)
    }

    pub fn contains(&self, c: &ComponentNumber) -> bool {
        &self.lo == c || &self.hi == c
    }
}

impl From<[ComponentNumber; 2]> for ComponentPair {
    fn from([a, b]: [ComponentNumber; 2]) -> Self {
        Self::new(a, b)
    }
}

impl From<ComponentPair> for [ComponentNumber; 2] {
    fn from(p: ComponentPair) -> Self {
        [p.lo, p.hi]
    }
}

/// `(d, n, C C̄)`: local degree, depth and component pair of a critical point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLabel", into = "RawLabel")]
pub struct CriticalLabel {
    local_degree: u32,
    depth: u32,
    pair: ComponentPair,
}

impl CriticalLabel {
    pub fn new(local_degree: u32, depth: u32, pair: ComponentPair) -> Result<Self, LabelError> {
        if local_degree < 2 {
            return Err(LabelError::BadLocalDegree(local_degree));
        }
        Ok(Self {
            local_degree,
            depth,
            pair,
        })
    }

    pub fn local_degree(&self) -> u32 {
        self.local_degree
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn pair(&self) -> &ComponentPair {
        &self.pair
    }

    /// True for the label every non-empty graph carries at position 0.
    pub fn is_anchor(&self) -> bool {
        self.depth == 0 && self.pair == ComponentPair::first()
    }
}

impl fmt::Display for CriticalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{}{})",
            self.local_degree, self.depth, self.pair.lo, self.pair.hi
        )
    }
}

/// Equality of labels: degrees and depths as numbers, pairs as unordered
/// pairs of sequences.
pub fn label_eq(a: &CriticalLabel, b: &CriticalLabel) -> bool {
    a == b
}

#[derive(Serialize, Deserialize)]
struct RawLabel {
    d: u32,
    n: u32,
    pair: ComponentPair,
}

impl TryFrom<RawLabel> for CriticalLabel {
    type Error = LabelError;

    fn try_from(r: RawLabel) -> Result<Self, Self::Error> {
        Self::new(r.d, r.n, r.pair)
    }
}

impl From<CriticalLabel> for RawLabel {
    fn from(l: CriticalLabel) -> Self {
        RawLabel {
            d: l.local_degree,
            n: l.depth,
            pair: l.pair,
        }
    }
}
