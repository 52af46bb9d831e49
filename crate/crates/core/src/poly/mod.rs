//! Complex polynomials acting on the basin of infinity.
//!
//! The invariant foliation of the basin is given by the level sets of the
//! Green function `G`, which satisfies `G(p(z)) = m G(z)`. External angles
//! (arguments of the Böttcher coordinate) give the transverse foliation.

pub(crate) mod angles;
mod green;
mod invariant;
mod rays;
mod roots;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::covering::CoveringError;
use crate::graph::GraphError;

pub use angles::{co_angles, external_angle};
pub use green::{escape_radius, green, log_derivative, GreenEstimate};
pub(crate) use green::green_above;
pub use invariant::{
    escape_report, invariant_of, invariant_of_oriented, polys_equivalent, portrait_of,
    CriticalOrbitRecord, EscapeStatus, PolyPortrait,
};
pub use rays::{trace_ray, RayTrace};
pub use roots::{critical_points, polynomial_roots, preimages};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("root finding did not converge")]
    RootFindingDiverged,
    #[error("critical points {0} and {1} are too close to separate or merge")]
    IllConditioned(Complex64, Complex64),
    #[error("orbit of {0} does not escape")]
    NonEscaping(Complex64),
    #[error("external angle of {0} is ambiguous")]
    BranchAmbiguity(Complex64),
    #[error("critical points {0} and {1} lie on the same level (Green {2})")]
    GenericityViolation(Complex64, Complex64, f64),
    #[error("ray tracing failed for angle {0}")]
    RayTracing(f64),
    #[error(transparent)]
    Covering(#[from] CoveringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

/// Numerical settings for the dynamics kernels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub tol_green: f64,
    pub tol_angle: f64,
    pub max_iter: usize,
    pub esc_radius_factor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol_green: 1e-12,
            tol_angle: 1e-10,
            max_iter: 10_000,
            esc_radius_factor: 1.0,
        }
    }
}

/// Polynomial with complex coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self, PolyError> {
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(PolyError::InvalidPolynomial("non-finite coefficient".into()));
        }
        match coeffs.last() {
            None => return Err(PolyError::InvalidPolynomial("no coefficients".into())),
            Some(a) if a.norm() == 0.0 => {
                return Err(PolyError::InvalidPolynomial(
                    "leading coefficient is zero".into(),
                ))
            }
            _ => {}
        }
        if coeffs.len() < 3 {
            return Err(PolyError::InvalidPolynomial(format!(
                "degree {} is below 2",
                coeffs.len() - 1
            )));
        }
        Ok(Self { coeffs })
    }

    /// Real coefficients, ascending.
    pub fn from_real(coeffs: &[f64]) -> Result<Self, PolyError> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().expect("non-empty")
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `(p(z), p'(z))` by Horner's scheme.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            d = d * z + v;
            v = v * z + c;
        }
        (v, d)
    }

    /// Coefficients of the derivative, ascending.
    pub fn derivative_coefficients(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * i as f64)
            .collect()
    }

    /// `p^{(k)}(z) / k!`, the Taylor coefficient of order `k` at `z`.
    pub fn taylor_coefficient(&self, z: Complex64, k: usize) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (i, &c) in self.coeffs.iter().enumerate().skip(k).rev() {
            sum = sum * z + c * binomial(i, k);
        }
        sum
    }

    /// `sum |a_i|` over the non-leading coefficients.
    pub fn lower_norm(&self) -> f64 {
        self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.norm())
            .sum()
    }

    /// `phi o p o phi^-1` for `phi(z) = scale * z + shift`.
    pub fn affine_conjugate(&self, scale: Complex64, shift: Complex64) -> Result<Self, PolyError> {
        if scale.norm() == 0.0 {
            return Err(PolyError::InvalidPolynomial("zero scale".into()));
        }
        // inner(w) = (w - shift) / scale
        let inner = [-shift / scale, Complex64::new(1.0, 0.0) / scale];
        let mut acc: Vec<Complex64> = vec![Complex64::new(0.0, 0.0)];
        for &c in self.coeffs.iter().rev() {
            let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + 1];
            for (i, &a) in acc.iter().enumerate() {
                next[i] += a * inner[0];
                next[i + 1] += a * inner[1];
            }
            next[0] += c;
            acc = next;
        }
        acc.truncate(self.coeffs.len());
        for a in acc.iter_mut() {
            *a *= scale;
        }
        acc[0] += shift;
        Self::new(acc)
    }

    pub fn from_json(s: &str) -> Result<Self, PolyError> {
        let raw: RawPolynomial = serde_json::from_str(s).map_err(|e| PolyError::Json(e.to_string()))?;
        Self::new(
            raw.coefficients
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&RawPolynomial {
            coefficients: self.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        })
        .expect("polynomial serialization is infallible")
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl fmt::Display for ComplexPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.norm() == 0.0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            match i {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawPolynomial {
    coefficients: Vec<[f64; 2]>,
}
