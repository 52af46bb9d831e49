//! Escape-rate potential and its complex log-derivative.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ComplexPolynomial, PolyError, Tolerances};

/// Orbits are not followed past this modulus; the tail bound is already
/// far below any useful tolerance there.
const HUGE: f64 = 1e100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenEstimate {
    pub value: f64,
    pub error_bound: f64,
    pub iterations_used: usize,
}

/// Radius beyond which `|p(z)| >= 2|z|` and the Böttcher series converges.
pub fn escape_radius(p: &ComplexPolynomial, factor: f64) -> f64 {
    let a = p.leading().norm();
    let m = p.degree() as f64;
    let lower = p.lower_norm();
    let r = 2.0f64
        .max(2.0 * lower / a)
        .max((4.0 / a).powf(1.0 / (m - 1.0)));
    r * factor.max(1.0)
}

/// Orbit data at the first iterate where the tail of the telescoping series
/// is below tolerance.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Escape {
    pub zk: Complex64,
    /// `m^{-k} (p^k)'(z)`
    pub scaled_derivative: Complex64,
    pub estimate: GreenEstimate,
}

pub(crate) fn escape(
    p: &ComplexPolynomial,
    z: Complex64,
    tol: f64,
    t: &Tolerances,
) -> Result<Escape, PolyError> {
    let r = escape_radius(p, t.esc_radius_factor);
    let a = p.leading().norm();
    let lower = p.lower_norm();
    let m = p.degree() as f64;
    let log_c = a.ln() / (m - 1.0);
    let mut w = z;
    let mut q = Complex64::new(1.0, 0.0);
    let mut k = 0usize;
    let mut escaped_at: Option<usize> = None;
    loop {
        let nz = w.norm();
        if !nz.is_finite() {
            return Err(PolyError::NonEscaping(z));
        }
        if nz >= r {
            escaped_at.get_or_insert(k);
            let delta = lower / (a * nz);
            let bound = 4.0 * delta * m.powi(-(k as i32) - 1);
            if bound <= tol || nz > HUGE {
                let value = ((nz.ln() + log_c) * m.powi(-(k as i32))).max(0.0);
                return Ok(Escape {
                    zk: w,
                    scaled_derivative: q,
                    estimate: GreenEstimate {
                        value,
                        error_bound: bound,
                        iterations_used: k,
                    },
                });
            }
        }
        if escaped_at.is_none() && k >= t.max_iter {
            return Err(PolyError::NonEscaping(z));
        }
        let (v, d) = p.eval_with_derivative(w);
        q = q * d / m;
        w = v;
        k += 1;
    }
}

/// `G(z) = lim m^{-k} log|p^k(z)|`, normalized so that `G(z) - log|z|`
/// tends to `log|a_m| / (m - 1)` at infinity.
pub fn green(p: &ComplexPolynomial, z: Complex64, t: &Tolerances) -> Result<GreenEstimate, PolyError> {
    escape(p, z, t.tol_green, t).map(|e| e.estimate)
}

/// `phi'(z) / phi(z)` for the Böttcher coordinate `phi`; the gradient of `G`
/// is its complex conjugate.
pub fn log_derivative(p: &ComplexPolynomial, z: Complex64, t: &Tolerances) -> Result<Complex64, PolyError> {
    let e = escape(p, z, t.tol_green, t)?;
    Ok(e.scaled_derivative / e.zk)
}

/// Green value if it is at least `floor`, `None` otherwise (including every
/// bounded orbit). Stops as soon as the orbit provably stays below `floor`.
pub(crate) fn green_above(p: &ComplexPolynomial, z: Complex64, floor: f64, tol: f64, t: &Tolerances) -> Option<f64> {
    let r = escape_radius(p, t.esc_radius_factor);
    let a = p.leading().norm();
    let lower = p.lower_norm();
    let m = p.degree() as f64;
    let log_c = a.ln() / (m - 1.0);
    // maximum principle: inside the disk of radius r, G stays below this
    let cap = r.ln() + log_c + 1.0;
    let mut w = z;
    let mut scale = 1.0f64;
    for _ in 0..=t.max_iter {
        let nz = w.norm();
        if nz >= r {
            let delta = lower / (a * nz);
            if 4.0 * delta * scale / m <= tol || nz > HUGE {
                let g = (nz.ln() + log_c) * scale;
                return (g >= floor).then_some(g);
            }
        } else if cap * scale < floor {
            return None;
        }
        w = p.eval(w);
        scale /= m;
    }
    None
}
