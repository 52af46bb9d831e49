//! Static SVG pictures of level curves, rays and band components.
//!
//! Level curves come from marching squares on pixel centres. Saddle cells
//! join the sublevel side, matching the 8-connected complements of the
//! oracle, and the cell holding a critical point is pushed below its own
//! level so that a critical curve comes out as one pinched loop.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::oracle::{field_with_floor, ComponentMap, GridBox, GridField, LevelOracle, OracleError};
use crate::poly::{trace_ray, ComplexPolynomial, Tolerances};

const CANVAS: f64 = 800.0;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

/// One polyline of a level curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    pub level: f64,
    pub points: Vec<Complex64>,
    pub closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Edge {
    /// Between pixel centres `(c, r)` and `(c + 1, r)`.
    H(usize, usize),
    /// Between pixel centres `(c, r)` and `(c, r + 1)`.
    V(usize, usize),
}

/// Level curves of `field` at `level`. Corners listed in `pinned` count as
/// below the level.
pub fn contours(field: &GridField, level: f64, pinned: &[(usize, usize)]) -> Vec<Contour> {
    let n = field.resolution;
    let value = |c: usize, r: usize| field.value(c, r).unwrap_or(field.floor.min(level));
    let below = |c: usize, r: usize| pinned.contains(&(c, r)) || value(c, r) < level;
    let crossing = |e: Edge| -> Complex64 {
        let ((c0, r0), (c1, r1)) = match e {
            Edge::H(c, r) => ((c, r), (c + 1, r)),
            Edge::V(c, r) => ((c, r), (c, r + 1)),
        };
        let (a, b) = (field.bx.point(c0, r0, n), field.bx.point(c1, r1, n));
        let (va, vb) = (value(c0, r0), value(c1, r1));
        let free = !pinned.contains(&(c0, r0)) && !pinned.contains(&(c1, r1));
        let s = if free && vb != va { ((level - va) / (vb - va)).clamp(0.0, 1.0) } else { 0.5 };
        a + (b - a) * s
    };
    let mut links: BTreeMap<Edge, Vec<Edge>> = BTreeMap::new();
    let mut link = |a: Edge, b: Edge| {
        links.entry(a).or_default().push(b);
        links.entry(b).or_default().push(a);
    };
    for r in 0..n.saturating_sub(1) {
        for c in 0..n.saturating_sub(1) {
            let (tl, tr, br, bl) = (below(c, r), below(c + 1, r), below(c + 1, r + 1), below(c, r + 1));
            let (top, right, bottom, left) = (Edge::H(c, r), Edge::V(c + 1, r), Edge::H(c, r + 1), Edge::V(c, r));
            let cut: Vec<Edge> = [(tl != tr, top), (tr != br, right), (bl != br, bottom), (tl != bl, left)]
                .into_iter()
                .filter_map(|(x, e)| x.then_some(e))
                .collect();
            match cut.len() {
                2 => link(cut[0], cut[1]),
                4 if tl => {
                    // tl and br below and joined; cut off tr and bl
                    link(top, right);
                    link(bottom, left);
                }
                4 => {
                    link(top, left);
                    link(right, bottom);
                }
                _ => {}
            }
        }
    }
    let mut out = Vec::new();
    let mut seen: BTreeMap<Edge, bool> = links.keys().map(|&e| (e, false)).collect();
    // open curves first start at the window edge
    let mut starts: Vec<Edge> = links.iter().filter(|(_, v)| v.len() == 1).map(|(&e, _)| e).collect();
    starts.extend(links.keys().copied());
    for start in starts {
        if seen[&start] {
            continue;
        }
        let mut chain = vec![start];
        seen.insert(start, true);
        let mut current = start;
        let closed = loop {
            match links[&current].iter().copied().find(|e| !seen[e]) {
                Some(e) => {
                    seen.insert(e, true);
                    chain.push(e);
                    current = e;
                }
                None => break chain.len() > 2 && links[&current].contains(&start),
            }
        };
        out.push(Contour {
            level,
            points: chain.into_iter().map(crossing).collect(),
            closed,
        });
    }
    out
}

struct Canvas {
    bx: GridBox,
    body: String,
}

impl Canvas {
    fn new(bx: GridBox) -> Self {
        Self { bx, body: String::new() }
    }

    fn xy(&self, z: Complex64) -> (f64, f64) {
        let s = CANVAS / (2.0 * self.bx.half_width);
        (
            (z.re - (self.bx.center[0] - self.bx.half_width)) * s,
            ((self.bx.center[1] + self.bx.half_width) - z.im) * s,
        )
    }

    fn path(&mut self, points: &[Complex64], closed: bool, stroke: &str, class: &str) {
        if points.len() < 2 {
            return;
        }
        let mut d = String::new();
        for (i, &z) in points.iter().enumerate() {
            let (x, y) = self.xy(z);
            let _ = write!(d, "{}{:.3},{:.3}", if i == 0 { "M" } else { " L" }, x, y);
        }
        if closed {
            d.push_str(" Z");
        }
        let _ = writeln!(
            self.body,
            r#"<path class="{class}" d="{d}" fill="none" stroke="{stroke}" stroke-width="1.5"/>"#
        );
    }

    fn dot(&mut self, z: Complex64, fill: &str) {
        let (x, y) = self.xy(z);
        let _ = writeln!(self.body, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="{fill}"/>"#);
    }

    fn finish(self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

/// Levels drawn by [`equipotentials_svg`]: `G*`, `m G*`, `m^2 G*` and the
/// levels of the other escaping critical points, each with the critical
/// points lying on it.
pub fn equipotential_levels(oracle: &LevelOracle) -> Vec<(f64, Vec<Complex64>)> {
    let g = oracle.g_star();
    let m = oracle.polynomial().degree() as f64;
    let records = &oracle.portrait().records;
    let on_level = |level: f64| -> Vec<Complex64> {
        records
            .iter()
            .filter(|r| (r.green_level.value - level).abs() <= 1e-9 * level)
            .map(|r| Complex64::new(r.point[0], r.point[1]))
            .collect()
    };
    let mut levels = vec![(g, on_level(g)), (m * g, Vec::new()), (m * m * g, Vec::new())];
    for r in records.iter().skip(1) {
        let v = r.green_level.value;
        levels.push((v, on_level(v)));
    }
    levels
}

/// Level curves of the fundamental annulus and of every critical level.
pub fn equipotentials(
    p: &ComplexPolynomial,
    resolution: usize,
    t: &Tolerances,
) -> Result<(GridBox, Vec<Contour>), OracleError> {
    let oracle = LevelOracle::new(p, t)?;
    let bx = oracle.outer_box();
    let levels = equipotential_levels(&oracle);
    let floor = levels.iter().map(|l| l.0).fold(f64::INFINITY, f64::min) / 2.0;
    let field = field_with_floor(p, bx, resolution, floor, t);
    let mut out = Vec::new();
    for (level, criticals) in levels {
        let pinned: Vec<(usize, usize)> = criticals
            .iter()
            .flat_map(|&c| cell_corners(&bx, resolution, c))
            .collect();
        out.extend(contours(&field, level, &pinned));
    }
    Ok((bx, out))
}

/// The four pixel centres around `z`.
fn cell_corners(bx: &GridBox, n: usize, z: Complex64) -> Vec<(usize, usize)> {
    let px = bx.pixel_size(n);
    let x = (z.re - (bx.center[0] - bx.half_width)) / px - 0.5;
    let y = ((bx.center[1] + bx.half_width) - z.im) / px - 0.5;
    if x < 0.0 || y < 0.0 || x >= (n - 1) as f64 || y >= (n - 1) as f64 {
        return Vec::new();
    }
    let (c, r) = (x as usize, y as usize);
    vec![(c, r), (c + 1, r), (c, r + 1), (c + 1, r + 1)]
}

pub fn equipotentials_svg(p: &ComplexPolynomial, resolution: usize, t: &Tolerances) -> Result<String, OracleError> {
    let (bx, curves) = equipotentials(p, resolution, t)?;
    let mut levels: Vec<f64> = curves.iter().map(|c| c.level).collect();
    levels.dedup();
    let mut canvas = Canvas::new(bx);
    for curve in &curves {
        let k = levels.iter().position(|&l| l == curve.level).unwrap_or(0);
        canvas.path(&curve.points, curve.closed, PALETTE[k % PALETTE.len()], "level");
    }
    Ok(canvas.finish())
}

/// Points of one ray, tagged with the index of its critical point.
pub type CriticalRay = (usize, Vec<Complex64>);

/// Rays at the co-angles of every escaping critical point, traced down to
/// its level, where they meet at the critical point.
pub fn critical_rays(p: &ComplexPolynomial, t: &Tolerances) -> Result<(GridBox, Vec<CriticalRay>), OracleError> {
    let oracle = LevelOracle::new(p, t)?;
    let bx = oracle.outer_box();
    let mut rays = Vec::new();
    for (i, rec) in oracle.portrait().records.iter().enumerate() {
        for &theta in &rec.co_angles {
            let trace = trace_ray(p, theta, rec.green_level.value, t)?;
            let inside: Vec<Complex64> = trace.points.into_iter().filter(|&z| bx.contains(z)).collect();
            rays.push((i, inside));
        }
    }
    Ok((bx, rays))
}

pub fn rays_svg(p: &ComplexPolynomial, t: &Tolerances) -> Result<String, OracleError> {
    let (bx, rays) = critical_rays(p, t)?;
    let oracle = LevelOracle::new(p, t)?;
    let mut canvas = Canvas::new(bx);
    for (i, points) in &rays {
        canvas.path(points, false, PALETTE[i % PALETTE.len()], "ray");
    }
    for rec in &oracle.portrait().records {
        canvas.dot(Complex64::new(rec.point[0], rec.point[1]), "black");
    }
    Ok(canvas.finish())
}

/// Band components as horizontal runs of coloured pixels.
pub fn regions_svg(map: &ComponentMap) -> String {
    let n = map.resolution;
    let mut canvas = Canvas::new(map.bx);
    let cell = CANVAS / n as f64;
    for r in 0..n {
        let mut c = 0;
        while c < n {
            let id = map.label(c, r);
            let start = c;
            while c < n && map.label(c, r) == id {
                c += 1;
            }
            if let Some(id) = id {
                let _ = writeln!(
                    canvas.body,
                    r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{}"/>"#,
                    start as f64 * cell,
                    r as f64 * cell,
                    (c - start) as f64 * cell,
                    cell,
                    PALETTE[id % PALETTE.len()]
                );
            }
        }
    }
    canvas.finish()
}
