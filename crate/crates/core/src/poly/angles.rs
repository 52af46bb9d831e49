//! External angles (arguments of the Böttcher coordinate).
//!
//! Outside the escape radius the angle is summed directly from the
//! Böttcher product. Deeper points are handled one iterate at a time: the
//! angle of `z_{k+1}` is known, so the angle of `z_k` is one of the `m`
//! candidates `(theta_{k+1} + j) / m`, and a coarse ascent along the
//! gradient line of `G` through `z_k` picks the right one.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::green::{escape, escape_radius};
use super::{green, log_derivative, ComplexPolynomial, PolyError, Tolerances};
use crate::angle::wrap;

const HUGE: f64 = 1e100;
const MAX_STEPS: usize = 200_000;

/// Angle in turns of a point with `|w| >= R`.
pub(crate) fn series_angle(p: &ComplexPolynomial, w: Complex64) -> f64 {
    let a = p.leading();
    let m = p.degree();
    let delta_scale = p.lower_norm() / a.norm();
    let mut theta = (a.arg() / (m as f64 - 1.0) + w.arg()) / TAU;
    let mut z = w;
    let mut scale = 1.0 / m as f64;
    for _ in 0..400 {
        if z.norm() > HUGE || scale * delta_scale / z.norm() < 1e-18 {
            break;
        }
        let next = p.eval(z);
        let mut ratio = next / a;
        for _ in 0..m {
            ratio /= z;
        }
        theta += scale * ratio.arg() / TAU;
        z = next;
        scale /= m as f64;
    }
    wrap(theta)
}

/// Principal-branch `log phi(w)` for `|w| >= R`.
pub(crate) fn series_log(p: &ComplexPolynomial, w: Complex64, t: &Tolerances) -> Result<Complex64, PolyError> {
    let g = green(p, w, t)?.value;
    let theta = series_angle(p, w);
    Ok(Complex64::new(g, TAU * theta))
}

/// `j` such that `(image + j) / m` is closest to `approx`, with the residual
/// in units of `1/m`.
fn snap(approx: f64, image: f64, m: u32) -> (f64, f64) {
    let x = m as f64 * approx - image;
    let j = x.round();
    (wrap((image + j) / m as f64), (x - j).abs())
}

fn flow(p: &ComplexPolynomial, z: Complex64, t: &Tolerances) -> Result<(Complex64, f64), PolyError> {
    let e = escape(p, z, 1e-13, t)?;
    let l = e.scaled_derivative / e.zk;
    let g = e.estimate.value;
    if l.norm() == 0.0 || g <= 0.0 {
        return Err(PolyError::BranchAmbiguity(z));
    }
    Ok((g / l, g))
}

/// Follow the gradient line of `G` from `z` out to radius `r` and report the
/// angle there. `dz/ds = G / L` with `s = log G` keeps `arg phi` constant.
fn ascend(p: &ComplexPolynomial, z: Complex64, r: f64, t: &Tolerances) -> Result<f64, PolyError> {
    let mut z = z;
    let (_, g0) = flow(p, z, t)?;
    let mut s = g0.ln();
    let mut h = 0.05;
    for _ in 0..MAX_STEPS {
        if z.norm() >= r {
            return Ok(series_angle(p, z));
        }
        if h < 1e-12 {
            break;
        }
        let full = rk4(p, z, h, t);
        let half = rk4(p, z, h / 2.0, t).and_then(|mid| rk4(p, mid, h / 2.0, t));
        let (full, half) = match (full, half) {
            (Ok(a), Ok(b)) => (a, b),
            _ => {
                h /= 4.0;
                continue;
            }
        };
        let err = (full - half).norm();
        let size = (half - z).norm();
        if err > 1e-7 * size + 1e-14 * (1.0 + z.norm()) {
            h /= 2.0;
            continue;
        }
        // the path must climb as the flow says; a crash into a critical
        // point shows up as a mismatch here
        let (_, g) = flow(p, half, t)?;
        if (g.ln() - (s + h)).abs() > 0.05 {
            break;
        }
        z = half;
        s = g.ln();
        if err < 1e-9 * size {
            h = (h * 1.5).min(0.5);
        }
    }
    Err(PolyError::BranchAmbiguity(z))
}

/// Move `z` along its gradient line until `G = target` (up or down).
pub(crate) fn flow_to_level(
    p: &ComplexPolynomial,
    z: Complex64,
    target: f64,
    t: &Tolerances,
) -> Result<Complex64, PolyError> {
    let (_, g0) = flow(p, z, t)?;
    let goal = target.ln();
    let mut s = g0.ln();
    let dir = (goal - s).signum();
    let mut h = 1e-3f64;
    let mut z = z;
    for _ in 0..MAX_STEPS {
        let left = (goal - s) * dir;
        if left <= 1e-12 {
            return Ok(z);
        }
        if h < 1e-14 {
            break;
        }
        let step = dir * h.min(left);
        let full = rk4(p, z, step, t);
        let half = rk4(p, z, step / 2.0, t).and_then(|mid| rk4(p, mid, step / 2.0, t));
        let (full, half) = match (full, half) {
            (Ok(a), Ok(b)) => (a, b),
            _ => {
                h /= 4.0;
                continue;
            }
        };
        let err = (full - half).norm();
        let size = (half - z).norm();
        if err > 1e-8 * size + 1e-14 * (1.0 + z.norm()) {
            h /= 2.0;
            continue;
        }
        let (_, g) = flow(p, half, t)?;
        if (g.ln() - (s + step)).abs() > 1e-3 {
            h /= 2.0;
            continue;
        }
        z = half;
        s += step;
        if err < 1e-10 * size {
            h = (h * 1.5).min(0.05);
        }
    }
    Err(PolyError::BranchAmbiguity(z))
}

fn rk4(p: &ComplexPolynomial, z: Complex64, h: f64, t: &Tolerances) -> Result<Complex64, PolyError> {
    let k1 = flow(p, z, t)?.0;
    let k2 = flow(p, z + k1 * (h / 2.0), t)?.0;
    let k3 = flow(p, z + k2 * (h / 2.0), t)?.0;
    let k4 = flow(p, z + k3 * h, t)?.0;
    Ok(z + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0))
}

/// A point next to the critical point `c` from which `G` increases
/// (`uphill`) or decreases steepest.
pub(crate) fn leave_critical(
    p: &ComplexPolynomial,
    c: Complex64,
    d: u32,
    uphill: bool,
    t: &Tolerances,
) -> Result<Complex64, PolyError> {
    let v = p.eval(c);
    let lb = log_derivative(p, v, t)? * p.taylor_coefficient(c, d as usize);
    let gv = green(p, v, t)?.value;
    let eps = (1e-3 * gv / lb.norm()).powf(1.0 / d as f64);
    let turn = if uphill { 0.0 } else { PI };
    Ok(c + Complex64::from_polar(eps, (turn - lb.arg()) / d as f64))
}

/// External angle of an escaping point, in turns.
pub fn external_angle(p: &ComplexPolynomial, z: Complex64, t: &Tolerances) -> Result<f64, PolyError> {
    let r = escape_radius(p, t.esc_radius_factor);
    let m = p.degree();
    let mut orbit = vec![z];
    let mut w = z;
    while w.norm() < r {
        if orbit.len() > t.max_iter || !w.norm().is_finite() {
            return Err(PolyError::NonEscaping(z));
        }
        w = p.eval(w);
        orbit.push(w);
    }
    let mut theta = series_angle(p, w);
    for &zk in orbit.iter().rev().skip(1) {
        let approx = ascend(p, zk, r, t)?;
        let (snapped, residual) = snap(approx, theta, m);
        if residual > 0.25 {
            return Err(PolyError::BranchAmbiguity(zk));
        }
        theta = snapped;
    }
    Ok(theta)
}

/// The `d` external angles whose rays meet at the critical point `c` of
/// local degree `d`, ascending, together with the angle of `p(c)`.
pub fn co_angles(
    p: &ComplexPolynomial,
    c: Complex64,
    d: u32,
    t: &Tolerances,
) -> Result<(Vec<f64>, f64), PolyError> {
    let m = p.degree();
    let v = p.eval(c);
    let theta_v = external_angle(p, v, t)?;
    let lhat = log_derivative(p, v, t)?;
    let b = p.taylor_coefficient(c, d as usize);
    let gv = green(p, v, t)?.value;
    let lb = lhat * b;
    let eps = (1e-3 * gv / lb.norm()).powf(1.0 / d as f64);
    let mut out: Vec<f64> = Vec::with_capacity(d as usize);
    for h in 0..d {
        // directions in which Re(L b (z - c)^d) grows fastest
        let psi = (TAU * h as f64 - lb.arg()) / d as f64;
        let mut found = None;
        for off in [0.0, 0.05, -0.05, 0.15, -0.15] {
            let z0 = c + Complex64::from_polar(eps, psi + off * PI / d as f64);
            if let Ok(theta) = external_angle(p, z0, t) {
                let (snapped, residual) = snap(theta, theta_v, m);
                if residual <= 0.25 {
                    found = Some(snapped);
                    break;
                }
            }
        }
        out.push(found.ok_or(PolyError::BranchAmbiguity(c))?);
    }
    out.sort_by(f64::total_cmp);
    let distinct = out
        .windows(2)
        .all(|w| (w[1] - w[0]) * m as f64 > 0.5)
        && (d < 2 || (1.0 + out[0] - out[out.len() - 1]) * m as f64 > 0.5);
    if !distinct {
        return Err(PolyError::BranchAmbiguity(c));
    }
    Ok((out, theta_v))
}
