//! External rays by inward pullback.
//!
//! A point of the ray at level `g` is found by picking `k` with `m^k g`
//! above the escape radius, solving `phi(w) = exp(m^k (g + 2 pi i theta))`
//! out there, and pulling `w` back along `p^k` by Newton's method started at
//! the previous point of the ray.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use super::angles::series_log;
use super::green::escape_radius;
use super::{log_derivative, ComplexPolynomial, PolyError, Tolerances};
use crate::angle::wrap;

/// Levels per factor `m` of the potential.
const LEVELS_PER_STEP: usize = 24;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RayTrace {
    pub angle: f64,
    /// Ordered from the outermost point inward.
    #[serde(serialize_with = "as_pairs")]
    pub points: Vec<Complex64>,
    pub levels: Vec<f64>,
}

fn as_pairs<S: serde::Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|z| [z.re, z.im]))
}

fn wrap_pi(x: f64) -> f64 {
    let y = (x + std::f64::consts::PI).rem_euclid(TAU);
    y - std::f64::consts::PI
}

/// `w` outside the escape radius with `log phi(w) = target` (imaginary part
/// modulo `2 pi`).
fn inverse_bottcher(
    p: &ComplexPolynomial,
    target: Complex64,
    start: Complex64,
    t: &Tolerances,
) -> Result<Complex64, PolyError> {
    let mut w = start;
    let mut last = f64::INFINITY;
    for _ in 0..100 {
        let f = series_log(p, w, t)?;
        let mut diff = f - target;
        diff.im = wrap_pi(diff.im);
        let size = diff.norm();
        if size < 1e-14 || (size >= last && size < 1e-10) {
            return Ok(w);
        }
        last = size;
        let l = log_derivative(p, w, t)?;
        w -= diff / l;
    }
    Err(PolyError::RayTracing(target.im / TAU))
}

/// Newton for `p^k(z) = w` in logarithmic form, from `z`.
fn pull_back(
    p: &ComplexPolynomial,
    k: usize,
    w: Complex64,
    mut z: Complex64,
) -> Option<Complex64> {
    let residual = |z: Complex64| -> (Complex64, Complex64) {
        // (log(p^k(z) / w), (p^k)'(z) / p^k(z))
        let mut v = z;
        let mut ld = Complex64::new(1.0, 0.0) / z;
        for _ in 0..k {
            let (pv, pd) = p.eval_with_derivative(v);
            ld *= pd * v / pv;
            v = pv;
        }
        ((v / w).ln(), ld)
    };
    let (mut f, mut ld) = residual(z);
    for _ in 0..60 {
        if f.norm() < 1e-13 {
            return Some(z);
        }
        let step = f / ld;
        let mut lambda = 1.0;
        loop {
            let cand = z - step * lambda;
            let (cf, cld) = residual(cand);
            if cf.norm() < f.norm() && cf.re.is_finite() {
                z = cand;
                f = cf;
                ld = cld;
                break;
            }
            lambda /= 2.0;
            if lambda < 1e-6 {
                // rounding floor of the k-fold composition
                return (f.norm() < 1e-9).then_some(z);
            }
        }
    }
    (f.norm() < 1e-9).then_some(z)
}

/// The external ray of angle `theta` (turns) from far outside the escape
/// radius down to potential `g_min`.
pub fn trace_ray(
    p: &ComplexPolynomial,
    theta: f64,
    g_min: f64,
    t: &Tolerances,
) -> Result<RayTrace, PolyError> {
    let m = p.degree() as f64;
    let r = escape_radius(p, t.esc_radius_factor);
    let log_c = p.leading().norm().ln() / (m - 1.0);
    let g_top = r.max(1e6).ln() + log_c;
    if !(g_min > 0.0) || g_min > g_top {
        return Err(PolyError::RayTracing(theta));
    }
    let ratio = m.powf(-1.0 / LEVELS_PER_STEP as f64);
    let mut points = Vec::new();
    let mut levels = Vec::new();
    let mut g = g_top;
    let mut z = Complex64::new(0.0, 0.0);
    let mut s = 0usize;
    loop {
        let mut k = 0usize;
        let mut lifted_g = g;
        let mut lifted_theta = wrap(theta);
        while lifted_g < g_top {
            lifted_g *= m;
            lifted_theta = wrap(lifted_theta * m);
            k += 1;
        }
        let target = Complex64::new(lifted_g, TAU * lifted_theta);
        let guess = Complex64::from_polar((lifted_g - log_c).exp(), TAU * lifted_theta);
        let w = inverse_bottcher(p, target, guess, t)?;
        z = if s == 0 {
            w
        } else {
            pull_back(p, k, w, z).ok_or(PolyError::RayTracing(theta))?
        };
        points.push(z);
        levels.push(g);
        if g <= g_min {
            break;
        }
        g = (g * ratio).max(g_min);
        s += 1;
    }
    Ok(RayTrace {
        angle: wrap(theta),
        points,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{external_angle, green};

    #[test]
    fn ray_of_pure_power_is_radial() {
        let p = ComplexPolynomial::from_real(&[0.0, 0.0, 1.0]).unwrap();
        let tr = trace_ray(&p, 0.3, 0.01, &Tolerances::default()).unwrap();
        let last = *tr.points.last().unwrap();
        assert!((last - Complex64::from_polar(0.01f64.exp(), TAU * 0.3)).norm() < 1e-10);
    }

    #[test]
    fn ray_lands_on_traced_point() {
        let p = ComplexPolynomial::from_real(&[10.0, -3.0, 0.0, 1.0]).unwrap();
        let t = Tolerances::default();
        let z = Complex64::new(0.4, 0.9);
        let theta = external_angle(&p, z, &t).unwrap();
        let g = green(&p, z, &t).unwrap().value;
        let tr = trace_ray(&p, theta, g, &t).unwrap();
        assert!((tr.points.last().unwrap() - z).norm() < 1e-8);
    }
}
