//! From a polynomial to its critical portrait and certificate.

use num_complex::Complex64;
use serde::Serialize;

use super::{co_angles, critical_points, green, ComplexPolynomial, GreenEstimate, PolyError, Tolerances};
use crate::angle::Angle;
use crate::covering::{build_certificate_oriented, Orientation};
use crate::graph::{certificates_equivalent, InvariantCertificate};
use crate::portrait::{CriticalPortrait, CriticalSpec, EPS_LEVEL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EscapeStatus {
    Escaping { green: GreenEstimate },
    Bounded,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalOrbitRecord {
    pub point: [f64; 2],
    pub local_degree: u32,
    pub green_level: GreenEstimate,
    pub timeline: f64,
    pub external_angle: f64,
    pub co_angles: Vec<f64>,
}

/// A portrait together with the numerical data it was read from.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyPortrait {
    pub portrait: CriticalPortrait,
    pub records: Vec<CriticalOrbitRecord>,
    /// Largest critical Green value, absent when no critical point escapes.
    pub g_star: Option<f64>,
}

/// Escape status of every critical point, in root-finder order.
pub fn escape_report(
    p: &ComplexPolynomial,
    t: &Tolerances,
) -> Result<Vec<(Complex64, u32, EscapeStatus)>, PolyError> {
    critical_points(p)?
        .into_iter()
        .map(|(c, d)| match green(p, c, t) {
            Ok(g) => Ok((c, d, EscapeStatus::Escaping { green: g })),
            Err(PolyError::NonEscaping(_)) => Ok((c, d, EscapeStatus::Bounded)),
            Err(e) => Err(e),
        })
        .collect()
}

pub fn portrait_of(p: &ComplexPolynomial, t: &Tolerances) -> Result<PolyPortrait, PolyError> {
    let m = p.degree();
    let mut escaping: Vec<(Complex64, u32, GreenEstimate)> = escape_report(p, t)?
        .into_iter()
        .filter_map(|(c, d, s)| match s {
            EscapeStatus::Escaping { green } => Some((c, d, green)),
            EscapeStatus::Bounded => None,
        })
        .collect();
    if escaping.is_empty() {
        return Ok(PolyPortrait {
            portrait: CriticalPortrait {
                degree: m,
                base_angle: Angle::zero(),
                criticals: Vec::new(),
            },
            records: Vec::new(),
            g_star: None,
        });
    }
    escaping.sort_by(|a, b| b.2.value.total_cmp(&a.2.value));
    let g_star = escaping[0].2.value;
    let log_m = (m as f64).ln();
    let timeline: Vec<f64> = escaping
        .iter()
        .map(|(_, _, g)| (g_star.ln() - g.value.ln()) / log_m)
        .collect();
    for i in 0..escaping.len() {
        for j in i + 1..escaping.len() {
            if (timeline[i] - timeline[j]).abs() <= EPS_LEVEL {
                return Err(PolyError::GenericityViolation(
                    escaping[i].0,
                    escaping[j].0,
                    escaping[i].2.value,
                ));
            }
        }
    }
    let mut records = Vec::with_capacity(escaping.len());
    let mut specs = Vec::with_capacity(escaping.len());
    let mut base_angle = 0.0;
    for (i, &(c, d, g)) in escaping.iter().enumerate() {
        let (co, theta_v) = co_angles(p, c, d, t)?;
        if i == 0 {
            base_angle = theta_v;
        }
        let tl = timeline[i];
        let n = tl.floor();
        specs.push(CriticalSpec {
            d,
            n: n as u32,
            y_frac: tl - n,
            co_angles: co.iter().map(|&a| Angle::real(a).expect("finite angle")).collect(),
        });
        records.push(CriticalOrbitRecord {
            point: [c.re, c.im],
            local_degree: d,
            green_level: g,
            timeline: tl,
            external_angle: theta_v,
            co_angles: co,
        });
    }
    Ok(PolyPortrait {
        portrait: CriticalPortrait {
            degree: m,
            base_angle: Angle::real(base_angle).expect("finite angle"),
            criticals: specs,
        },
        records,
        g_star: Some(g_star),
    })
}

pub fn invariant_of(p: &ComplexPolynomial, t: &Tolerances) -> Result<InvariantCertificate, PolyError> {
    invariant_of_oriented(p, t, Orientation::Ccw)
}

pub fn invariant_of_oriented(
    p: &ComplexPolynomial,
    t: &Tolerances,
    orientation: Orientation,
) -> Result<InvariantCertificate, PolyError> {
    let pp = portrait_of(p, t)?;
    Ok(build_certificate_oriented(&pp.portrait, orientation)?)
}

pub fn polys_equivalent(
    p: &ComplexPolynomial,
    q: &ComplexPolynomial,
    t: &Tolerances,
) -> Result<bool, PolyError> {
    Ok(certificates_equivalent(&invariant_of(p, t)?, &invariant_of(q, t)?)?)
}
