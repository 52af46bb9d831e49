//! Brute-force cross-check of the combinatorics on a pixel grid.
//!
//! The depth-`k` band is `{ m^{1-k} G* <= G < m^{2-k} G* }`: depth 0 is the
//! fundamental annulus between the first and second images of the top
//! critical level, and each deeper band is the preimage of the previous one.
//! Bands are flood-filled (4-connectivity) and their complements counted
//! (8-connectivity), so the count patterns and the lobe containing each
//! lifted critical point can be compared with a certificate.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{DistinguishingGraph, InvariantCertificate, LabelledPoint};
use crate::label::{ComponentNumber, ComponentPair, CriticalLabel};
use crate::poly::{
    critical_points, escape_radius, portrait_of, preimages, trace_ray, ComplexPolynomial,
    PolyError, PolyPortrait, Tolerances,
};

/// Pixels of this radius around a pinch point are forced in or out of a band.
const PINCH_RADIUS: f64 = 2.5;
const MIN_RESOLUTION: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resolution {resolution} too coarse at depth {depth}")]
    ResolutionTooCoarse { depth: usize, resolution: usize },
    #[error("point is outside the band")]
    OutsideBand,
    #[error("point is within two pixels of a component boundary")]
    NearBoundary,
    #[error("inconsistent combinatorics at depth {depth} for criticals {first} and {second}: {detail}")]
    InconsistentCombinatorics {
        first: usize,
        second: usize,
        depth: usize,
        detail: String,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Square window `center ± half_width` in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridBox {
    pub center: [f64; 2],
    pub half_width: f64,
}

impl GridBox {
    pub fn new(center: Complex64, half_width: f64) -> Self {
        Self {
            center: [center.re, center.im],
            half_width,
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z.re - self.center[0]).abs() <= self.half_width
            && (z.im - self.center[1]).abs() <= self.half_width
    }

    pub fn pixel_size(&self, resolution: usize) -> f64 {
        2.0 * self.half_width / resolution as f64
    }

    /// Centre of pixel `(col, row)`; row 0 is the top edge.
    pub fn point(&self, col: usize, row: usize, resolution: usize) -> Complex64 {
        let px = self.pixel_size(resolution);
        Complex64::new(
            self.center[0] - self.half_width + (col as f64 + 0.5) * px,
            self.center[1] + self.half_width - (row as f64 + 0.5) * px,
        )
    }

    pub fn pixel_of(&self, z: Complex64, resolution: usize) -> Option<(usize, usize)> {
        let px = self.pixel_size(resolution);
        let x = (z.re - (self.center[0] - self.half_width)) / px;
        let y = ((self.center[1] + self.half_width) - z.im) / px;
        let n = resolution as f64;
        (x >= 0.0 && y >= 0.0 && x < n && y < n).then_some((x as usize, y as usize))
    }
}

/// Green values on a grid. Pixels whose value is below `floor` (bounded
/// orbits included) carry no value.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    pub bx: GridBox,
    pub resolution: usize,
    pub floor: f64,
    values: Vec<f64>,
}

impl GridField {
    pub fn value(&self, col: usize, row: usize) -> Option<f64> {
        let v = self.values[row * self.resolution + col];
        (!v.is_nan()).then_some(v)
    }

    pub fn value_at(&self, z: Complex64) -> Option<f64> {
        let (c, r) = self.bx.pixel_of(z, self.resolution)?;
        self.value(c, r)
    }
}

/// Green values on a grid, skipping the pixels provably below `floor`.
pub fn field_with_floor(
    p: &ComplexPolynomial,
    bx: GridBox,
    resolution: usize,
    floor: f64,
    t: &Tolerances,
) -> GridField {
    let mut values = vec![f64::NAN; resolution * resolution];
    values
        .par_chunks_mut(resolution)
        .enumerate()
        .for_each(|(row, out)| {
            for (col, v) in out.iter_mut().enumerate() {
                let z = bx.point(col, row, resolution);
                if let Some(g) = crate::poly::green_above(p, z, floor, 1e-10, t) {
                    *v = g;
                }
            }
        });
    GridField {
        bx,
        resolution,
        floor,
        values,
    }
}

/// Green field over `bx`. The box must contain every critical point.
pub fn green_grid(
    p: &ComplexPolynomial,
    bx: GridBox,
    resolution: usize,
    t: &Tolerances,
) -> Result<GridField, OracleError> {
    if resolution < MIN_RESOLUTION {
        return Err(OracleError::Precondition(format!(
            "resolution {resolution} is below {MIN_RESOLUTION}"
        )));
    }
    if !(bx.half_width > 0.0) {
        return Err(OracleError::Precondition("empty box".into()));
    }
    for (c, _) in critical_points(p)? {
        if !bx.contains(c) {
            return Err(OracleError::Precondition(format!(
                "box does not contain critical point {c}"
            )));
        }
    }
    Ok(field_with_floor(p, bx, resolution, f64::MIN_POSITIVE, t))
}

/// Level interval of one depth and the pinch points on its edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Band {
    pub depth: usize,
    pub lo: f64,
    pub hi: f64,
    /// Singular points of the `lo` level; the band keeps a disk around them.
    pub low_pinches: Vec<Complex64>,
    /// Singular points of the `hi` level; the band loses a disk around them.
    pub high_pinches: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DepthSummary {
    pub depth: usize,
    pub regions: usize,
    pub boundaries: usize,
}

/// Flood-fill result for one band.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentMap {
    pub depth: usize,
    pub bx: GridBox,
    pub resolution: usize,
    pub region_count: usize,
    pub boundary_count: usize,
    /// Region id per pixel, `-1` off the band.
    labels: Vec<i32>,
    /// Complement component id per pixel, `-1` on the band.
    gaps: Vec<i32>,
}

impl ComponentMap {
    pub fn label(&self, col: usize, row: usize) -> Option<usize> {
        let v = self.labels[row * self.resolution + col];
        (v >= 0).then_some(v as usize)
    }

    pub fn summary(&self) -> DepthSummary {
        DepthSummary {
            depth: self.depth,
            regions: self.region_count,
            boundaries: self.boundary_count,
        }
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string(&self.summary()).expect("summary serialization is infallible")
    }

    /// Region ids as rows of comma-separated integers (`-1` off the band).
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.labels.len() * 3);
        for row in self.labels.chunks(self.resolution) {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(","));
            out.push_str("\r\n");
        }
        out
    }

    /// Region id of `z`, if `z` sits well inside one region.
    pub fn region_near(&self, z: Complex64) -> Result<usize, OracleError> {
        component_of(z, self)
    }
}

fn flood(mask: &[bool], n: usize, diagonal: bool) -> (Vec<i32>, usize) {
    let mut labels = vec![-1i32; mask.len()];
    let mut count = 0usize;
    let mut stack = Vec::new();
    for start in 0..mask.len() {
        if !mask[start] || labels[start] >= 0 {
            continue;
        }
        let id = count as i32;
        count += 1;
        labels[start] = id;
        stack.push(start);
        while let Some(idx) = stack.pop() {
            let (r, c) = ((idx / n) as i64, (idx % n) as i64);
            for dr in -1i64..=1 {
                for dc in -1i64..=1 {
                    if (dr == 0 && dc == 0) || (!diagonal && dr != 0 && dc != 0) {
                        continue;
                    }
                    let (rr, cc) = (r + dr, c + dc);
                    if rr < 0 || cc < 0 || rr >= n as i64 || cc >= n as i64 {
                        continue;
                    }
                    let j = rr as usize * n + cc as usize;
                    if mask[j] && labels[j] < 0 {
                        labels[j] = id;
                        stack.push(j);
                    }
                }
            }
        }
    }
    (labels, count)
}

/// Whether every component keeps at least one pixel after a one-pixel
/// erosion (pixels outside the grid do not erode).
fn survives_erosion(labels: &[i32], count: usize, n: usize) -> bool {
    let mut core = vec![false; count];
    for r in 0..n {
        for c in 0..n {
            let id = labels[r * n + c];
            if id < 0 || core[id as usize] {
                continue;
            }
            let same = |rr: i64, cc: i64| {
                rr < 0 || cc < 0 || rr >= n as i64 || cc >= n as i64 || labels[rr as usize * n + cc as usize] == id
            };
            let (ri, ci) = (r as i64, c as i64);
            if same(ri - 1, ci) && same(ri + 1, ci) && same(ri, ci - 1) && same(ri, ci + 1) {
                core[id as usize] = true;
            }
        }
    }
    core.into_iter().all(|x| x)
}

fn stamp(mask: &mut [bool], bx: &GridBox, n: usize, z: Complex64, value: bool) {
    let px = bx.pixel_size(n);
    let rad = PINCH_RADIUS * px;
    let lo = bx.pixel_of(z - Complex64::new(rad, -rad), n);
    let (c0, r0) = match lo {
        Some(v) => v,
        None => {
            let x = ((z.re - rad - (bx.center[0] - bx.half_width)) / px).max(0.0) as usize;
            let y = (((bx.center[1] + bx.half_width) - (z.im + rad)) / px).max(0.0) as usize;
            (x, y)
        }
    };
    let span = (2.0 * PINCH_RADIUS).ceil() as usize + 2;
    for r in r0..(r0 + span).min(n) {
        for c in c0..(c0 + span).min(n) {
            if (bx.point(c, r, n) - z).norm() <= rad {
                mask[r * n + c] = value;
            }
        }
    }
}

/// Flood-fill the band `band` on `field`.
pub fn components_of_band(band: &Band, field: &GridField) -> Result<ComponentMap, OracleError> {
    let n = field.resolution;
    let mut mask: Vec<bool> = field
        .values
        .iter()
        .map(|&g| !g.is_nan() && g >= band.lo && g < band.hi)
        .collect();
    for &z in &band.low_pinches {
        stamp(&mut mask, &field.bx, n, z, true);
    }
    for &z in &band.high_pinches {
        stamp(&mut mask, &field.bx, n, z, false);
    }
    let (labels, region_count) = flood(&mask, n, false);
    let inverse: Vec<bool> = mask.iter().map(|b| !b).collect();
    let (gaps, boundary_count) = flood(&inverse, n, true);
    if !survives_erosion(&labels, region_count, n) || !survives_erosion(&gaps, boundary_count, n) {
        return Err(OracleError::ResolutionTooCoarse {
            depth: band.depth,
            resolution: n,
        });
    }
    Ok(ComponentMap {
        depth: band.depth,
        bx: field.bx,
        resolution: n,
        region_count,
        boundary_count,
        labels,
        gaps,
    })
}

/// Region containing `z`; the whole 5x5 pixel neighbourhood must agree.
pub fn component_of(z: Complex64, map: &ComponentMap) -> Result<usize, OracleError> {
    let n = map.resolution;
    let (c, r) = map.bx.pixel_of(z, n).ok_or(OracleError::OutsideBand)?;
    let id = map.labels[r * n + c];
    if id < 0 {
        return Err(OracleError::OutsideBand);
    }
    for dr in -2i64..=2 {
        for dc in -2i64..=2 {
            let (rr, cc) = (r as i64 + dr, c as i64 + dc);
            if rr < 0 || cc < 0 || rr >= n as i64 || cc >= n as i64 {
                return Err(OracleError::NearBoundary);
            }
            if map.labels[rr as usize * n + cc as usize] != id {
                return Err(OracleError::NearBoundary);
            }
        }
    }
    Ok(id as usize)
}

/// Polynomial data shared by every depth.
#[derive(Debug, Clone)]
pub struct LevelOracle {
    p: ComplexPolynomial,
    t: Tolerances,
    portrait: PolyPortrait,
    g_star: f64,
    critical_points: Vec<(Complex64, u32)>,
}

impl LevelOracle {
    pub fn new(p: &ComplexPolynomial, t: &Tolerances) -> Result<Self, OracleError> {
        let portrait = portrait_of(p, t)?;
        let g_star = portrait.g_star.ok_or_else(|| {
            OracleError::Precondition("no critical point escapes; the bands are undefined".into())
        })?;
        let critical_points = portrait
            .records
            .iter()
            .map(|r| (Complex64::new(r.point[0], r.point[1]), r.local_degree))
            .collect();
        Ok(Self {
            p: p.clone(),
            t: *t,
            portrait,
            g_star,
            critical_points,
        })
    }

    pub fn polynomial(&self) -> &ComplexPolynomial {
        &self.p
    }

    pub fn portrait(&self) -> &PolyPortrait {
        &self.portrait
    }

    pub fn g_star(&self) -> f64 {
        self.g_star
    }

    fn m(&self) -> f64 {
        self.p.degree() as f64
    }

    pub fn band(&self, depth: usize) -> Result<Band, OracleError> {
        let m = self.m();
        let lo = self.g_star * m.powi(1 - depth as i32);
        let hi = lo * m;
        let mut low_pinches = Vec::new();
        let mut high_pinches = Vec::new();
        for (rec, &(c, _)) in self.portrait.records.iter().zip(&self.critical_points) {
            for (edge, low) in [(depth as f64 - 1.0, true), (depth as f64 - 2.0, false)] {
                let r = edge - rec.timeline;
                if r < -1e-9 || (r - r.round()).abs() > 1e-9 {
                    continue;
                }
                let mut pts = vec![c];
                for _ in 0..r.round() as usize {
                    let mut next = Vec::new();
                    for z in pts {
                        next.extend(preimages(&self.p, z)?);
                    }
                    pts = next;
                }
                if low {
                    low_pinches.extend(pts);
                } else {
                    high_pinches.extend(pts);
                }
            }
        }
        Ok(Band {
            depth,
            lo,
            hi,
            low_pinches,
            high_pinches,
        })
    }

    /// Window for depth 0: the sublevel set of the band's upper level, with
    /// a 10% margin.
    pub fn outer_box(&self) -> GridBox {
        let m = self.m();
        let log_c = self.p.leading().norm().ln() / (m - 1.0);
        let level = m * m * self.g_star;
        let r = escape_radius(&self.p, self.t.esc_radius_factor).max((level - log_c + 1.0).exp());
        let coarse = field_with_floor(&self.p, GridBox::new(Complex64::new(0.0, 0.0), r), 256, level, &self.t);
        below_box(&coarse, level).unwrap_or(GridBox::new(Complex64::new(0.0, 0.0), r))
    }

    /// Fields for depths `0..=max_depth`; each window is the sublevel set of
    /// its band's upper level as seen on the previous field.
    pub fn fields(&self, max_depth: usize, resolution: usize) -> Result<Vec<GridField>, OracleError> {
        if resolution < MIN_RESOLUTION {
            return Err(OracleError::Precondition(format!(
                "resolution {resolution} is below {MIN_RESOLUTION}"
            )));
        }
        let mut out: Vec<GridField> = Vec::with_capacity(max_depth + 1);
        let mut bx = self.outer_box();
        for depth in 0..=max_depth {
            let band = self.band(depth)?;
            if let Some(prev) = out.last() {
                bx = below_box(prev, band.hi).ok_or(OracleError::ResolutionTooCoarse { depth, resolution })?;
            }
            out.push(field_with_floor(&self.p, bx, resolution, band.lo, &self.t));
        }
        Ok(out)
    }

    pub fn components(&self, depth: usize, field: &GridField) -> Result<ComponentMap, OracleError> {
        components_of_band(&self.band(depth)?, field)
    }

    /// Component maps for depths `0..=max_depth`, doubling the resolution
    /// once if it proves too coarse.
    pub fn survey(&self, max_depth: usize, resolution: usize) -> Result<Survey, OracleError> {
        match self.survey_at(max_depth, resolution) {
            Err(OracleError::ResolutionTooCoarse { .. }) => self.survey_at(max_depth, 2 * resolution),
            other => other,
        }
    }

    fn survey_at(&self, max_depth: usize, resolution: usize) -> Result<Survey, OracleError> {
        let fields = self.fields(max_depth, resolution)?;
        let maps = fields
            .iter()
            .enumerate()
            .map(|(k, f)| self.components(k, f))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Survey { resolution, maps })
    }
}

/// Square window around the pixels of `field` below `level`.
fn below_box(field: &GridField, level: f64) -> Option<GridBox> {
    let n = field.resolution;
    let (mut c0, mut c1, mut r0, mut r1) = (usize::MAX, 0usize, usize::MAX, 0usize);
    for r in 0..n {
        for c in 0..n {
            if field.value(c, r).is_none_or(|g| g < level) {
                c0 = c0.min(c);
                c1 = c1.max(c);
                r0 = r0.min(r);
                r1 = r1.max(r);
            }
        }
    }
    if c0 > c1 {
        return None;
    }
    let a = field.bx.point(c0, r1, n);
    let b = field.bx.point(c1, r0, n);
    let px = field.bx.pixel_size(n);
    let center = (a + b) / 2.0;
    let half = 0.5 * (b.re - a.re).max(b.im - a.im) + px;
    Some(GridBox::new(center, half * 1.1 + 2.0 * px))
}

/// Component maps of consecutive depths at one resolution.
#[derive(Debug, Clone)]
pub struct Survey {
    pub resolution: usize,
    pub maps: Vec<ComponentMap>,
}

impl Survey {
    pub fn summaries(&self) -> Vec<DepthSummary> {
        self.maps.iter().map(ComponentMap::summary).collect()
    }
}

/// Band components of `p` at `depth` on a caller-supplied field.
pub fn band_components(
    p: &ComplexPolynomial,
    depth: usize,
    field: &GridField,
    t: &Tolerances,
) -> Result<ComponentMap, OracleError> {
    LevelOracle::new(p, t)?.components(depth, field)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pair: (usize, usize),
    #[serde(skip)]
    depth: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub resolution: usize,
    pub depths: Vec<DepthSummary>,
    pub checks: Vec<Check>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The first failed check as an error.
    pub fn into_result(self) -> Result<Self, OracleError> {
        match self.checks.iter().find(|c| !c.passed) {
            None => Ok(self),
            Some(c) => Err(OracleError::InconsistentCombinatorics {
                first: c.pair.0,
                second: c.pair.1,
                depth: c.depth,
                detail: format!("{}: {}", c.name, c.detail),
            }),
        }
    }
}

impl fmt::Display for ConsistencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "resolution {}", self.resolution)?;
        for d in &self.depths {
            writeln!(f, "depth {}: {} regions, {} boundaries", d.depth, d.regions, d.boundaries)?;
        }
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail)?;
        }
        write!(f, "{}", if self.is_consistent() { "CONSISTENT" } else { "INCONSISTENT" })
    }
}

/// Lobes of the top critical level: the components of `{G < G*}` that meet
/// at the top critical point, in counterclockwise order, with the degree of
/// `p` on each.
#[derive(Debug, Clone, PartialEq)]
pub struct LobeCycle {
    pub regions: Vec<usize>,
    pub degrees: Vec<u32>,
}

impl LobeCycle {
    /// 1-based positions of `region` counted from every lexicographically
    /// smallest rotation of the degree sequence, read in the given direction.
    fn indices(&self, region: usize, ccw: bool) -> BTreeSet<u32> {
        let d = self.regions.len();
        let order: Vec<usize> = if ccw { (0..d).collect() } else { (0..d).rev().collect() };
        let seq = |start: usize| -> Vec<u32> { (0..d).map(|i| self.degrees[order[(start + i) % d]]).collect() };
        let best = (0..d).map(seq).min().unwrap_or_default();
        let pos = match order.iter().position(|&i| self.regions[i] == region) {
            Some(p) => p,
            None => return BTreeSet::new(),
        };
        (0..d)
            .filter(|&s| seq(s) == best)
            .map(|s| ((pos + d - s) % d) as u32 + 1)
            .collect()
    }
}

impl LevelOracle {
    /// Read the lobe cycle off the depth-2 map.
    pub fn lobe_cycle(&self, depth2: &ComponentMap) -> Result<LobeCycle, OracleError> {
        let (c0, d0) = self.critical_points[0];
        let px = depth2.bx.pixel_size(depth2.resolution);
        let mut regions: Vec<usize> = Vec::new();
        let samples = 1440;
        for k in 0..samples {
            let z = c0 + Complex64::from_polar(8.0 * px, std::f64::consts::TAU * k as f64 / samples as f64);
            let id = match depth2.bx.pixel_of(z, depth2.resolution) {
                Some((c, r)) => depth2.label(c, r),
                None => None,
            };
            if let Some(id) = id {
                if regions.last() != Some(&id) {
                    regions.push(id);
                }
            }
        }
        while regions.len() > 1 && regions.first() == regions.last() {
            regions.pop();
        }
        let distinct: BTreeSet<usize> = regions.iter().copied().collect();
        if regions.len() != d0 as usize || distinct.len() != regions.len() {
            return Err(OracleError::ResolutionTooCoarse {
                depth: 2,
                resolution: depth2.resolution,
            });
        }
        // count preimages of a point between the first two critical images
        let m = self.m();
        let mid = self.g_star * m.sqrt();
        let mut degrees = None;
        for probe in [0.137, 0.411, 0.763, 0.929] {
            let ray = trace_ray(&self.p, probe, mid, &self.t)?;
            let tau = *ray.points.last().expect("non-empty ray");
            let mut counts = vec![0u32; regions.len()];
            let mut clean = true;
            for z in preimages(&self.p, tau)? {
                match component_of(z, depth2) {
                    Ok(id) => match regions.iter().position(|&r| r == id) {
                        Some(i) => counts[i] += 1,
                        None => clean = false,
                    },
                    Err(_) => clean = false,
                }
            }
            if clean {
                degrees = Some(counts);
                break;
            }
        }
        let degrees = degrees.ok_or(OracleError::ResolutionTooCoarse {
            depth: 2,
            resolution: depth2.resolution,
        })?;
        Ok(LobeCycle { regions, degrees })
    }

    /// The lobe containing the image of critical `i` that lies in the depth-2
    /// band, read at the middle level of the band.
    pub fn lifted_region(&self, i: usize, depth2: &ComponentMap) -> Result<usize, OracleError> {
        let rec = &self.portrait.records[i];
        let (c, d) = self.critical_points[i];
        let s = crate::covering::lift_iterations(rec.timeline, 0.0);
        let target = self.g_star / self.m().sqrt();
        let mut w = c;
        for _ in 0..s {
            w = self.p.eval(w);
        }
        let g = crate::poly::green(&self.p, w, &self.t)?.value;
        if s == 0 {
            w = crate::poly::angles::leave_critical(&self.p, c, d, g < target, &self.t)?;
        }
        let w = crate::poly::angles::flow_to_level(&self.p, w, target, &self.t)?;
        component_of(w, depth2)
    }

    /// Compare the certificate with the maps of `survey` (depths 0..=2 at
    /// least).
    pub fn consistency(&self, cert: &InvariantCertificate, survey: &Survey) -> Result<ConsistencyReport, OracleError> {
        let mut checks = Vec::new();
        let mut push = |name: &str, passed: bool, detail: String, pair: (usize, usize), depth: usize| {
            checks.push(Check {
                name: name.into(),
                passed,
                detail,
                pair,
                depth,
            })
        };
        let maps = &survey.maps;
        if maps.len() < 3 {
            return Err(OracleError::Precondition("consistency needs depths 0 to 2".into()));
        }
        let d0 = self.critical_points[0].1 as usize;
        push(
            "degree",
            cert.degree == self.p.degree(),
            format!("certificate {} vs polynomial {}", cert.degree, self.p.degree()),
            (0, 0),
            0,
        );
        push(
            "critical count",
            cert.graph.len() == self.critical_points.len(),
            format!("{} labels for {} escaping critical points", cert.graph.len(), self.critical_points.len()),
            (0, 0),
            0,
        );
        let s0 = maps[0].summary();
        push(
            "fundamental annulus",
            s0.regions == 1 && s0.boundaries == 2,
            format!("{} regions, {} boundaries", s0.regions, s0.boundaries),
            (0, 0),
            0,
        );
        let s1 = maps[1].summary();
        push(
            "first preimage",
            s1.regions == 1 && s1.boundaries == d0 + 1,
            format!("{} regions, {} boundaries, expected 1 and {}", s1.regions, s1.boundaries, d0 + 1),
            (0, 0),
            1,
        );
        let s2 = maps[2].summary();
        push(
            "lobes",
            s2.regions == d0,
            format!("{} regions at depth 2, top critical has local degree {d0}", s2.regions),
            (0, 0),
            2,
        );
        for k in 1..maps.len() {
            let (a, b) = (maps[k - 1].region_count, maps[k].region_count);
            push(
                "monotone counts",
                b >= a,
                format!("depth {}: {a} regions, depth {k}: {b}", k - 1),
                (0, 0),
                k,
            );
        }
        if cert.graph.len() != self.critical_points.len() {
            return Ok(ConsistencyReport {
                resolution: survey.resolution,
                depths: survey.summaries(),
                checks,
            });
        }
        let cycle = self.lobe_cycle(&maps[2])?;
        let mut lifted = Vec::new();
        for i in 1..self.critical_points.len() {
            let region = self.lifted_region(i, &maps[2])?;
            let spec = &self.portrait.portrait.criticals[i];
            let point = cert.graph.points().iter().find(|pt| {
                pt.label.depth() == spec.n && (pt.position - spec.y_frac).abs() <= 1e-9
            });
            let label = match point {
                Some(pt) => &pt.label,
                None => {
                    push(
                        "lobe of lifted critical",
                        false,
                        format!("critical {i}: no label at depth {} position {}", spec.n, spec.y_frac),
                        (0, i),
                        2,
                    );
                    continue;
                }
            };
            let (a, b) = label.pair().members();
            let claimed = {
                let mut v = [a.entries()[0], b.entries()[0]];
                v.sort_unstable();
                v
            };
            let ccw = cycle.indices(region, true);
            let cw = cycle.indices(region, false);
            let matches = ccw.iter().any(|&x| {
                cw.iter().any(|&y| {
                    let mut v = [x, y];
                    v.sort_unstable();
                    v == claimed
                })
            });
            push(
                "lobe of lifted critical",
                matches,
                format!(
                    "critical {i}: oracle lobe indices ccw {ccw:?} cw {cw:?}, certificate {claimed:?} (lobe degrees {:?})",
                    cycle.degrees
                ),
                (0, i),
                2,
            );
            lifted.push((i, region, claimed));
        }
        for x in 0..lifted.len() {
            for y in x + 1..lifted.len() {
                let (i, ri, ci) = lifted[x];
                let (j, rj, cj) = lifted[y];
                push(
                    "shared lobe",
                    (ri == rj) == (ci == cj),
                    format!("criticals {i} and {j}: same region {}, same first entries {}", ri == rj, ci == cj),
                    (i, j),
                    2,
                );
            }
        }
        for k in 1..maps.len() {
            let (ok, detail) = refinement(&self.p, &maps[k], &maps[k - 1]);
            push("refinement", ok, detail, (0, 0), k);
        }
        Ok(ConsistencyReport {
            resolution: survey.resolution,
            depths: survey.summaries(),
            checks,
        })
    }
}

/// Every region of `deep` maps into a single region of `shallow` under `p`,
/// checked on a sample of interior pixels.
pub fn refinement(p: &ComplexPolynomial, deep: &ComponentMap, shallow: &ComponentMap) -> (bool, String) {
    let n = deep.resolution;
    let mut image: Vec<Option<usize>> = vec![None; deep.region_count];
    let mut sampled = vec![0usize; deep.region_count];
    let stride = (n / 128).max(1);
    for r in (2..n.saturating_sub(2)).step_by(stride) {
        for c in (2..n.saturating_sub(2)).step_by(stride) {
            let z = deep.bx.point(c, r, n);
            let id = match component_of(z, deep) {
                Ok(id) => id,
                Err(_) => continue,
            };
            let target = match component_of(p.eval(z), shallow) {
                Ok(t) => t,
                Err(_) => continue,
            };
            sampled[id] += 1;
            match image[id] {
                None => image[id] = Some(target),
                Some(prev) if prev != target => {
                    return (false, format!("depth {} region {id} meets two regions of depth {}", deep.depth, shallow.depth));
                }
                _ => {}
            }
        }
    }
    let unsampled = sampled.iter().filter(|&&s| s == 0).count();
    (
        true,
        format!(
            "depth {} into depth {}: {} regions checked, {unsampled} too thin to sample",
            deep.depth,
            shallow.depth,
            deep.region_count - unsampled
        ),
    )
}

/// Survey `p` down to `max(depth, 2)` and compare with `cert`.
pub fn consistency_report(
    p: &ComplexPolynomial,
    cert: &InvariantCertificate,
    depth: usize,
    resolution: usize,
    t: &Tolerances,
) -> Result<ConsistencyReport, OracleError> {
    let oracle = LevelOracle::new(p, t)?;
    let survey = oracle.survey(depth.max(2), resolution)?;
    oracle.consistency(cert, &survey)
}

/// A copy of `cert` whose first non-anchor label names a different lobe:
/// the leading entries of its pair are shifted cyclically. A negative
/// control for [`consistency_report`]. `None` when there is nothing to move.
pub fn corrupted(cert: &InvariantCertificate) -> Option<InvariantCertificate> {
    let points = cert.graph.points();
    let lobes = points.first()?.label.local_degree();
    if lobes < 2 {
        return None;
    }
    let mut out: Vec<LabelledPoint> = points.to_vec();
    let victim = out.get_mut(1)?;
    let shift = |c: &ComponentNumber| {
        let mut e = c.entries().to_vec();
        e[0] = e[0] % lobes + 1;
        ComponentNumber::new(e).ok()
    };
    let (a, b) = victim.label.pair().members();
    let pair = ComponentPair::new(shift(a)?, shift(b)?);
    victim.label = CriticalLabel::new(victim.label.local_degree(), victim.label.depth(), pair).ok()?;
    InvariantCertificate::new(cert.degree, DistinguishingGraph::new(out)).ok()
}
