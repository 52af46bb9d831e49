//! Helpers shared by the integration tests.
#![allow(dead_code)]

pub mod laws;

use dgraph::poly::{critical_points, escape_radius, external_angle, green, ComplexPolynomial, Tolerances};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn poly(coeffs: &[Complex64]) -> ComplexPolynomial {
    ComplexPolynomial::new(coeffs.to_vec()).unwrap()
}

pub fn real(coeffs: &[f64]) -> ComplexPolynomial {
    ComplexPolynomial::from_real(coeffs).unwrap()
}

pub fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Distance from `x` to the nearest integer.
pub fn mod_one(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Polynomials exercised by the kernel checks.
pub fn corpus() -> Vec<(&'static str, ComplexPolynomial)> {
    vec![
        ("z^2+3", real(&[3.0, 0.0, 1.0])),
        ("z^2+0.1", real(&[0.1, 0.0, 1.0])),
        ("z^2+i", poly(&[c(0.0, 1.0), c(0.0, 0.0), c(1.0, 0.0)])),
        ("z^3-3z+10", real(&[10.0, -3.0, 0.0, 1.0])),
        ("z^3-3z+8+3i", poly(&[c(8.0, 3.0), c(-3.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])),
        ("cubic_e", poly(&[c(5.0, -4.0), c(-2.0, -1.0), c(0.5, 0.0), c(1.0, 0.0)])),
        ("z^4-z+2i", poly(&[c(0.0, 2.0), c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])),
    ]
}

/// `n` random points of the basin. Half are drawn uniformly from a disk a
/// little larger than the escape disk, half from the disk around the
/// critical points where the Julia set lives.
pub fn escaping_seeds(p: &ComplexPolynomial, n: usize, seed: u64) -> Vec<Complex64> {
    let t = Tolerances::default();
    let outer = 1.5 * escape_radius(p, 1.0);
    let inner = critical_points(p).unwrap().iter().map(|(z, _)| z.norm()).fold(0.0, f64::max) + 2.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let r = if out.len() % 2 == 0 { outer } else { inner.min(outer) };
        let z = c(rng.gen_range(-r..r), rng.gen_range(-r..r));
        if z.norm() < r && green(p, z, &t).is_ok() {
            out.push(z);
        }
    }
    out
}

/// Worst deviations from `G(p(z)) = m G(z)` and `theta(p(z)) = m theta(z)`.
pub fn kernel_errors(p: &ComplexPolynomial, seeds: &[Complex64]) -> Result<(f64, f64), String> {
    let t = Tolerances::default();
    let m = p.degree() as f64;
    let (mut eg, mut ea) = (0.0f64, 0.0f64);
    for &z in seeds {
        let w = p.eval(z);
        let g = green(p, z, &t).map_err(|e| e.to_string())?.value;
        let gw = green(p, w, &t).map_err(|e| e.to_string())?.value;
        eg = eg.max((gw - m * g).abs());
        let a = external_angle(p, z, &t).map_err(|e| format!("angle at {z}: {e}"))?;
        let aw = external_angle(p, w, &t).map_err(|e| format!("angle at {w}: {e}"))?;
        ea = ea.max(mod_one(m * a - aw));
    }
    Ok((eg, ea))
}

/// Random `z^3 + a z + b` with `|a|, |b| <= size`.
pub fn random_cubic(rng: &mut ChaCha8Rng, size: f64) -> ComplexPolynomial {
    let mut pick = || c(rng.gen_range(-size..size), rng.gen_range(-size..size));
    let (a, b) = (pick(), pick());
    poly(&[b, a, c(0.0, 0.0), c(1.0, 0.0)])
}
