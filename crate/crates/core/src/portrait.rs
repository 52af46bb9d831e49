//! Symbolic critical portraits.
//!
//! A portrait lists the escaping critical points of a degree-`m` map by
//! local degree, timeline coordinate `n + y'` and the co-angles whose
//! external rays crash together at the critical point.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angle::Angle;

/// Tolerance for every angular comparison on floating inputs.
pub const EPS_ANGLE: f64 = 1e-6;
/// Two timeline coordinates closer than this are the same fiber.
pub const EPS_LEVEL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalSpec {
    pub d: u32,
    pub n: u32,
    pub y_frac: f64,
    pub co_angles: Vec<Angle>,
}

impl CriticalSpec {
    pub fn timeline(&self) -> f64 {
        self.n as f64 + self.y_frac
    }

    /// Smallest co-angle by value.
    pub fn representative(&self) -> Option<Angle> {
        self.co_angles
            .iter()
            .copied()
            .min_by(|a, b| a.cmp_value(b))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalPortrait {
    pub degree: u32,
    pub base_angle: Angle,
    pub criticals: Vec<CriticalSpec>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PortraitError {
    #[error("portrait fails validation: {0}")]
    Invalid(PortraitReport),
    #[error("malformed portrait JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum PortraitViolation {
    BadDegree(u32),
    BadLocalDegree { index: usize, d: u32 },
    FractionOutOfRange { index: usize, y_frac: f64 },
    FirstNotAnchored,
    Unsorted { index: usize },
    Genericity { first: usize, second: usize },
    CoAngleCount { index: usize, expected: u32, found: usize },
    RepeatedCoAngle { index: usize },
    CoAngleSpacing { index: usize },
    BranchingBound { total: u32, bound: u32 },
    BaseAngleMismatch,
}

impl fmt::Display for PortraitViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PortraitViolation::*;
        match self {
            BadDegree(m) => write!(f, "map degree {m} is below 2"),
            BadLocalDegree { index, d } => write!(f, "critical {index}: local degree {d} is below 2"),
            FractionOutOfRange { index, y_frac } => {
                write!(f, "critical {index}: y_frac {y_frac} outside [0, 1)")
            }
            FirstNotAnchored => f.write_str("first critical is not at timeline 0"),
            Unsorted { index } => write!(f, "critical {index} is out of timeline order"),
            Genericity { first, second } => {
                write!(f, "genericity violated: criticals {first} and {second} share a fiber")
            }
            CoAngleCount { index, expected, found } => {
                write!(f, "critical {index}: expected {expected} co-angles, found {found}")
            }
            RepeatedCoAngle { index } => write!(f, "critical {index}: repeated co-angle"),
            CoAngleSpacing { index } => {
                write!(f, "critical {index}: co-angles are not spaced by multiples of 1/m")
            }
            BranchingBound { total, bound } => {
                write!(f, "total branching {total} exceeds {bound}")
            }
            BaseAngleMismatch => f.write_str("first critical co-angles are not preimages of the base angle"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PortraitReport {
    pub violations: Vec<PortraitViolation>,
}

impl PortraitReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for PortraitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("OK");
        }
        let v: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&v.join("; "))
    }
}

/// `m * a == b` on the circle, exactly or within [`EPS_ANGLE`].
fn maps_to(a: &Angle, m: u64, b: &Angle) -> bool {
    let image = a.times(m);
    if image.is_exact() && b.is_exact() {
        image.same_point(b)
    } else {
        image.circle_distance(b) <= EPS_ANGLE * m as f64
    }
}

pub fn portrait_validate(p: &CriticalPortrait) -> PortraitReport {
    use PortraitViolation::*;
    let mut v = Vec::new();
    let m = p.degree;
    if m < 2 {
        v.push(BadDegree(m));
    }
    for (i, c) in p.criticals.iter().enumerate() {
        if c.d < 2 {
            v.push(BadLocalDegree { index: i, d: c.d });
        }
        if !(0.0..1.0).contains(&c.y_frac) {
            v.push(FractionOutOfRange {
                index: i,
                y_frac: c.y_frac,
            });
        }
        if c.co_angles.len() != c.d as usize {
            v.push(CoAngleCount {
                index: i,
                expected: c.d,
                found: c.co_angles.len(),
            });
        }
        let mut repeated = false;
        let mut misspaced = false;
        for (a_i, a) in c.co_angles.iter().enumerate() {
            for b in &c.co_angles[a_i + 1..] {
                let exact = a.is_exact() && b.is_exact();
                if (exact && a.same_point(b)) || (!exact && a.circle_distance(b) <= EPS_ANGLE) {
                    repeated = true;
                }
                let scaled = a.ccw_to(b).to_f64() * m as f64;
                let off = (scaled - scaled.round()).abs();
                let spaced = if exact {
                    a.times(m as u64).same_point(&b.times(m as u64))
                } else {
                    off <= EPS_ANGLE * m as f64
                };
                if !spaced {
                    misspaced = true;
                }
            }
        }
        if repeated {
            v.push(RepeatedCoAngle { index: i });
        }
        if misspaced {
            v.push(CoAngleSpacing { index: i });
        }
    }
    if let Some(first) = p.criticals.first() {
        if first.n != 0 || first.y_frac != 0.0 {
            v.push(FirstNotAnchored);
        }
        if m >= 2 && !first.co_angles.iter().all(|a| maps_to(a, m as u64, &p.base_angle)) {
            v.push(BaseAngleMismatch);
        }
    }
    for (i, w) in p.criticals.windows(2).enumerate() {
        if w[1].timeline() < w[0].timeline() - EPS_LEVEL {
            v.push(Unsorted { index: i + 1 });
        }
    }
    for i in 0..p.criticals.len() {
        for j in i + 1..p.criticals.len() {
            let (a, b) = (&p.criticals[i], &p.criticals[j]);
            if a.n == b.n && (a.y_frac - b.y_frac).abs() <= EPS_LEVEL {
                v.push(Genericity { first: i, second: j });
            }
        }
    }
    let total: u32 = p.criticals.iter().map(|c| c.d.saturating_sub(1)).sum();
    if m >= 1 && total > m - 1 {
        v.push(BranchingBound {
            total,
            bound: m - 1,
        });
    }
    PortraitReport { violations: v }
}

impl CriticalPortrait {
    pub fn from_json(s: &str) -> Result<Self, PortraitError> {
        serde_json::from_str(s).map_err(|e| PortraitError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("portrait serialization is infallible")
    }

    pub fn validated(self) -> Result<Self, PortraitError> {
        let r = portrait_validate(&self);
        if r.is_ok() {
            Ok(self)
        } else {
            Err(PortraitError::Invalid(r))
        }
    }
}
