//! Component numbers from a critical portrait.
//!
//! Below a critical point of local degree `d` the neutral foliation splits
//! into `d` lobes. On the circle of external angles the lobes correspond to
//! the `d` arcs between consecutive co-angles; an arc spanning `l/m` turns
//! belongs to a lobe that the map covers with degree `l`.
//!
//! Arcs are numbered from an entry co-angle chosen intrinsically: reading
//! the arc lengths in the walk direction, the entry is where the cyclic
//! length sequence is lexicographically smallest. Symmetric sequences are
//! broken by the first co-angle met from the base angle.

use std::cmp::Ordering;

use thiserror::Error;

use crate::angle::Angle;
use crate::graph::{DistinguishingGraph, InvariantCertificate, LabelledPoint};
use crate::label::{ComponentNumber, ComponentPair, CriticalLabel};
use crate::portrait::{portrait_validate, CriticalPortrait, CriticalSpec, PortraitError, EPS_ANGLE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
        }
    }

    /// Distance travelled from `from` to `to` walking in this direction.
    pub fn distance(self, from: &Angle, to: &Angle) -> Angle {
        match self {
            Orientation::Ccw => from.ccw_to(to),
            Orientation::Cw => to.ccw_to(from),
        }
    }
}

impl std::str::FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ccw" => Ok(Orientation::Ccw),
            "cw" => Ok(Orientation::Cw),
            other => Err(format!("unknown orientation {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoveringError {
    #[error("critical point has no co-angles")]
    EmptySpec,
    #[error("angle {0} lies on an arc boundary")]
    OnBoundary(Angle),
    #[error("criticals {0} and {1} share a timeline coordinate")]
    GenericityViolation(usize, usize),
    #[error("critical index {0} out of range")]
    NoSuchCritical(usize),
    #[error(transparent)]
    Portrait(#[from] PortraitError),
}

/// The circle minus the co-angles, as arcs `1..=d` in walk order.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcPartition {
    orientation: Orientation,
    /// Co-angles in walk order, starting at the entry.
    boundaries: Vec<Angle>,
}

impl ArcPartition {
    pub fn entry(&self) -> &Angle {
        &self.boundaries[0]
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn len(&self) -> usize {
        self.boundaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundaries.is_empty()
    }

    /// Arc `index` (1-based) as `(start, end)` in walk order.
    pub fn arc(&self, index: usize) -> (Angle, Angle) {
        let d = self.boundaries.len();
        (self.boundaries[index - 1], self.boundaries[index % d])
    }
}

fn walk_order(a: &Angle, b: &Angle, reference: &Angle, o: Orientation) -> Ordering {
    o.distance(reference, a)
        .cmp_value(&o.distance(reference, b))
        .then_with(|| a.cmp_value(b))
}

pub fn arc_partition(
    spec: &CriticalSpec,
    reference: &Angle,
    orientation: Orientation,
) -> Result<ArcPartition, CoveringError> {
    if spec.co_angles.is_empty() {
        return Err(CoveringError::EmptySpec);
    }
    let mut boundaries = spec.co_angles.clone();
    boundaries.sort_by(|a, b| walk_order(a, b, reference, orientation));
    Ok(ArcPartition {
        orientation,
        boundaries,
    })
}

pub fn locate_in_partition(partition: &ArcPartition, angle: &Angle) -> Result<usize, CoveringError> {
    let exact = angle.is_exact() && partition.boundaries.iter().all(Angle::is_exact);
    for (k, b) in partition.boundaries.iter().enumerate() {
        if exact {
            if b.same_point(angle) {
                // exact hits attach to the arc that starts at the co-angle
                return Ok(k + 1);
            }
        } else if b.circle_distance(angle) <= EPS_ANGLE {
            return Err(CoveringError::OnBoundary(*angle));
        }
    }
    let o = partition.orientation;
    let entry = partition.entry();
    let target = o.distance(entry, angle);
    let d = partition.boundaries.len();
    for k in 1..d {
        let next = o.distance(entry, &partition.boundaries[k]);
        if target.cmp_value(&next) == Ordering::Less {
            return Ok(k);
        }
    }
    Ok(d)
}

/// Arc lengths in units of `1/m`, read in walk order from `start`.
fn length_sequence(sorted: &[Angle], start: usize, m: u32, o: Orientation) -> Vec<i64> {
    let d = sorted.len();
    (0..d)
        .map(|i| {
            let a = &sorted[(start + i) % d];
            let b = &sorted[(start + i + 1) % d];
            let mut len = o.distance(a, b).to_f64();
            if d == 1 {
                len = 1.0;
            }
            (len * m as f64).round() as i64
        })
        .collect()
}

/// Entry co-angle of `spec` for the given walk direction.
pub fn canonical_entry(
    spec: &CriticalSpec,
    degree: u32,
    base_angle: &Angle,
    orientation: Orientation,
) -> Result<Angle, CoveringError> {
    if spec.co_angles.is_empty() {
        return Err(CoveringError::EmptySpec);
    }
    let sorted = arc_partition(spec, base_angle, orientation)?.boundaries;
    let candidates: Vec<Vec<i64>> = (0..sorted.len())
        .map(|s| length_sequence(&sorted, s, degree, orientation))
        .collect();
    let best = candidates.iter().min().expect("non-empty");
    // sorted is in walk order from the base angle, so the first minimiser wins ties
    let start = candidates.iter().position(|c| c == best).expect("present");
    Ok(sorted[start])
}

/// Number of forward iterations that carry a critical point at timeline
/// `t_deep` into the band just below the fiber at `t_shallow`.
pub fn lift_iterations(t_deep: f64, t_shallow: f64) -> u32 {
    let gap = t_deep - t_shallow;
    (gap.ceil() as i64 - 1).max(0) as u32
}

pub fn component_number(
    p: &CriticalPortrait,
    i: usize,
    orientation: Orientation,
) -> Result<ComponentNumber, CoveringError> {
    let own = p.criticals.get(i).ok_or(CoveringError::NoSuchCritical(i))?;
    let theta = own.representative().ok_or(CoveringError::EmptySpec)?;
    let mut sorted_own = own.co_angles.clone();
    sorted_own.sort_by(|a, b| a.cmp_value(b));
    let t_own = own.timeline();
    let mut entries = Vec::with_capacity(i + 1);
    for (j, shallow) in p.criticals.iter().enumerate() {
        if j == i {
            continue;
        }
        let same_fiber = shallow.n == own.n
            && (shallow.y_frac - own.y_frac).abs() <= crate::portrait::EPS_LEVEL;
        if same_fiber {
            return Err(CoveringError::GenericityViolation(j.min(i), j.max(i)));
        }
        if shallow.timeline() > t_own {
            continue;
        }
        let gap = (own.n as f64 - shallow.n as f64) + (own.y_frac - shallow.y_frac);
        let s = lift_iterations(gap, 0.0);
        let entry = canonical_entry(shallow, p.degree, &p.base_angle, orientation)?;
        let partition = arc_partition(shallow, &entry, orientation)?;
        // every co-angle of the critical point lies in the same arc; one that
        // shares a ray with the shallow critical point is skipped
        let mut found = locate_in_partition(&partition, &theta.times_pow(p.degree as u64, s));
        for other in &sorted_own {
            if found.is_ok() {
                break;
            }
            if let Ok(k) = locate_in_partition(&partition, &other.times_pow(p.degree as u64, s)) {
                found = Ok(k);
            }
        }
        entries.push(found? as u32);
    }
    entries.push(1);
    Ok(ComponentNumber::new(entries).expect("entries are 1-based"))
}

pub fn build_certificate(p: &CriticalPortrait) -> Result<InvariantCertificate, CoveringError> {
    build_certificate_oriented(p, Orientation::Ccw)
}

/// Certificate with `primary` as the reference orientation of `Q`. The label
/// pairs are unordered, so the result does not depend on `primary`.
pub fn build_certificate_oriented(
    p: &CriticalPortrait,
    primary: Orientation,
) -> Result<InvariantCertificate, CoveringError> {
    let report = portrait_validate(p);
    if !report.is_ok() {
        return Err(PortraitError::Invalid(report).into());
    }
    let mut points = Vec::with_capacity(p.criticals.len());
    for (i, c) in p.criticals.iter().enumerate() {
        let a = component_number(p, i, primary)?;
        let b = component_number(p, i, primary.flip())?;
        let label = CriticalLabel::new(c.d, c.n, ComponentPair::new(a, b))
            .expect("validated local degree");
        points.push(LabelledPoint::new(c.y_frac, label));
    }
    let cert = InvariantCertificate {
        degree: p.degree,
        graph: DistinguishingGraph::new(points),
    };
    debug_assert!(cert.validate().is_ok());
    Ok(cert)
}
