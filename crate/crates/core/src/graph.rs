//! Distinguishing graphs, certificates and the equivalence decision.
//!
//! A distinguishing graph is the semi-interval `[0, 1)` with finitely many
//! labelled points. Every self-homeomorphism of `[0, 1)` fixes `0` and is
//! increasing, so two graphs are equivalent exactly when their labels, read
//! in ascending order, agree one by one. Positions only matter through
//! their order.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::label::CriticalLabel;

/// Positions closer than this are reported as [`Warning::AmbiguousOrder`].
pub const ORDER_RESOLUTION: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    InvalidGraph(ValidationReport),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("malformed certificate JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelledPoint {
    pub position: f64,
    pub label: CriticalLabel,
}

impl LabelledPoint {
    pub fn new(position: f64, label: CriticalLabel) -> Self {
        Self { position, label }
    }

    fn order_key(&self, other: &Self) -> Ordering {
        self.position
            .total_cmp(&other.position)
            .then(self.label.depth().cmp(&other.label.depth()))
    }
}

/// Labelled points kept sorted by `(position, depth)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<LabelledPoint>", into = "Vec<LabelledPoint>")]
pub struct DistinguishingGraph {
    points: Vec<LabelledPoint>,
}

impl DistinguishingGraph {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(mut points: Vec<LabelledPoint>) -> Self {
        points.sort_by(|a, b| a.order_key(b));
        Self { points }
    }

    pub fn points(&self) -> &[LabelledPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Apply `f` to every position and re-sort.
    pub fn reparametrized(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::new(
            self.points
                .iter()
                .map(|p| LabelledPoint::new(f(p.position), p.label.clone()))
                .collect(),
        )
    }
}

impl From<Vec<LabelledPoint>> for DistinguishingGraph {
    fn from(points: Vec<LabelledPoint>) -> Self {
        Self::new(points)
    }
}

impl From<DistinguishingGraph> for Vec<LabelledPoint> {
    fn from(g: DistinguishingGraph) -> Self {
        g.points
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Non-empty graph without a point at 0.
    Unanchored,
    /// Points at 0 exist but none carries `(.., 0, {1}{1})`.
    WrongAnchorLabel(CriticalLabel),
    DuplicatePoint { position: f64, depth: u32 },
    PositionOutOfRange(f64),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Unanchored => f.write_str("0 unlabelled"),
            Violation::WrongAnchorLabel(l) => write!(f, "wrong anchor label {l} at 0"),
            Violation::DuplicatePoint { position, depth } => {
                write!(f, "duplicate point at position {position} depth {depth}")
            }
            Violation::PositionOutOfRange(p) => write!(f, "position {p} outside [0, 1)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    AmbiguousOrder { left: f64, right: f64 },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("OK");
        }
        let msgs: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&msgs.join("; "))
    }
}

pub fn graph_validate(g: &DistinguishingGraph) -> ValidationReport {
    let mut report = ValidationReport::default();
    if g.is_empty() {
        return report;
    }
    for p in &g.points {
        if !(0.0..1.0).contains(&p.position) {
            report.violations.push(Violation::PositionOutOfRange(p.position));
        }
    }
    let at_zero: Vec<&LabelledPoint> = g.points.iter().filter(|p| p.position == 0.0).collect();
    if at_zero.is_empty() {
        report.violations.push(Violation::Unanchored);
    } else if !at_zero.iter().any(|p| p.label.is_anchor()) {
        report
            .violations
            .push(Violation::WrongAnchorLabel(at_zero[0].label.clone()));
    }
    for w in g.points.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a.position == b.position && a.label.depth() == b.label.depth() {
            report.violations.push(Violation::DuplicatePoint {
                position: a.position,
                depth: a.label.depth(),
            });
        } else if a.position != b.position && (b.position - a.position) < ORDER_RESOLUTION {
            report.warnings.push(Warning::AmbiguousOrder {
                left: a.position,
                right: b.position,
            });
        }
    }
    report
}

fn require_valid(g: &DistinguishingGraph) -> Result<(), GraphError> {
    let report = graph_validate(g);
    if report.is_ok() {
        Ok(())
    } else {
        Err(GraphError::InvalidGraph(report))
    }
}

/// Labels in ascending `(position, depth)` order, positions dropped.
pub fn canonical_sequence(g: &DistinguishingGraph) -> Result<Vec<CriticalLabel>, GraphError> {
    require_valid(g)?;
    Ok(g.points.iter().map(|p| p.label.clone()).collect())
}

/// Outcome of comparing two graphs or certificates, with the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    Equivalent { both_empty: bool },
    DegreeMismatch(u32, u32),
    LengthMismatch(usize, usize),
    LabelMismatch(usize),
}

impl Comparison {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Comparison::Equivalent { .. })
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Equivalent { both_empty: true } => f.write_str("both empty"),
            Comparison::Equivalent { both_empty: false } => f.write_str("label sequences agree"),
            Comparison::DegreeMismatch(a, b) => write!(f, "degree mismatch ({a} vs {b})"),
            Comparison::LengthMismatch(a, b) => {
                write!(f, "label sequence length {a} vs {b}")
            }
            Comparison::LabelMismatch(i) => write!(f, "label sequence differs at index {i}"),
        }
    }
}

pub fn compare_graphs(
    a: &DistinguishingGraph,
    b: &DistinguishingGraph,
) -> Result<Comparison, GraphError> {
    let sa = canonical_sequence(a)?;
    let sb = canonical_sequence(b)?;
    if sa.len() != sb.len() {
        return Ok(Comparison::LengthMismatch(sa.len(), sb.len()));
    }
    if let Some(i) = sa.iter().zip(&sb).position(|(x, y)| x != y) {
        return Ok(Comparison::LabelMismatch(i));
    }
    Ok(Comparison::Equivalent {
        both_empty: sa.is_empty(),
    })
}

pub fn graphs_equivalent(
    a: &DistinguishingGraph,
    b: &DistinguishingGraph,
) -> Result<bool, GraphError> {
    Ok(compare_graphs(a, b)?.is_equivalent())
}

/// A map degree together with its distinguishing graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantCertificate {
    pub degree: u32,
    pub graph: DistinguishingGraph,
}

impl InvariantCertificate {
    pub fn new(degree: u32, graph: DistinguishingGraph) -> Result<Self, GraphError> {
        let c = Self { degree, graph };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        if self.degree < 2 {
            return Err(GraphError::InvalidCertificate(format!(
                "degree {} is below 2",
                self.degree
            )));
        }
        let report = graph_validate(&self.graph);
        if !report.is_ok() {
            return Err(GraphError::InvalidCertificate(report.to_string()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialization is infallible")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self, GraphError> {
        let c: Self = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }
}

pub fn compare_certificates(
    a: &InvariantCertificate,
    b: &InvariantCertificate,
) -> Result<Comparison, GraphError> {
    a.validate()?;
    b.validate()?;
    if a.degree != b.degree {
        return Ok(Comparison::DegreeMismatch(a.degree, b.degree));
    }
    compare_graphs(&a.graph, &b.graph)
}

pub fn certificates_equivalent(
    a: &InvariantCertificate,
    b: &InvariantCertificate,
) -> Result<bool, GraphError> {
    Ok(compare_certificates(a, b)?.is_equivalent())
}
