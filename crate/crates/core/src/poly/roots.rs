//! Simultaneous root finding (Aberth–Ehrlich) with multiplicity recovery.

use num_complex::Complex64;

use super::{ComplexPolynomial, PolyError};

const MAX_SWEEPS: usize = 2000;
/// Roots of the derivative closer than this are one critical point.
const MERGE_RADIUS: f64 = 1e-6;
/// Candidates up to this far apart are tested for being one multiple root.
const CLUSTER_RADIUS: f64 = 1e-3;

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// All roots of the polynomial with the given ascending coefficients,
/// repeated by multiplicity, sorted by real then imaginary part.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, PolyError> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() == 0.0) {
        coeffs.pop();
    }
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    if n == 1 {
        return Ok(vec![-coeffs[0] / lead]);
    }
    // Fujiwara-type bound for the initial circle
    let bound = (0..n)
        .map(|i| (coeffs[i] / lead).norm().powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let radius = 0.5 * bound;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let mut converged = vec![false; n];
    for _ in 0..MAX_SWEEPS {
        let mut all = true;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let (v, d) = horner(&coeffs, z[i]);
            if v.norm() == 0.0 {
                converged[i] = true;
                continue;
            }
            let ratio = v / d;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let diff = z[i] - z[j];
                    if diff.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::new(1.0, 0.0) / diff
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                // nudge off a stationary point
                let nudge = Complex64::new(1e-8, 1e-8) * (1.0 + z[i].norm());
                z[i] += nudge;
                all = false;
                continue;
            }
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * (1.0 + z[i].norm()) {
                converged[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    let residual_ok = z.iter().all(|&r| {
        let (v, _) = horner(&coeffs, r);
        let size: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.norm() * r.norm().powi(i as i32))
            .sum();
        v.norm() <= 1e-6 * size.max(scale)
    });
    if !residual_ok {
        return Err(PolyError::RootFindingDiverged);
    }
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(z)
}

/// Distinct roots with multiplicities, using the derivatives of the
/// polynomial to confirm clusters.
fn roots_with_multiplicity(coeffs: &[Complex64]) -> Result<Vec<(Complex64, u32)>, PolyError> {
    let roots = polynomial_roots(coeffs)?;
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() < CLUSTER_RADIUS * (1.0 + roots[i].norm()) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut clusters: Vec<Vec<Complex64>> = Vec::new();
    let mut ids: Vec<usize> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match ids.iter().position(|&x| x == r) {
            Some(k) => clusters[k].push(roots[i]),
            None => {
                ids.push(r);
                clusters.push(vec![roots[i]]);
            }
        }
    }
    let scale: f64 = coeffs.iter().map(|c| c.norm()).sum();
    let mut out = Vec::new();
    for cluster in clusters {
        let k = cluster.len();
        let center = cluster.iter().sum::<Complex64>() / k as f64;
        if k == 1 {
            out.push((center, 1));
            continue;
        }
        // a genuine k-fold root annihilates the first k-1 derivatives
        let genuine = (0..k).all(|order| {
            let t = taylor(coeffs, center, order);
            t.norm() <= 1e-7 * scale * (1.0 + center.norm()).powi(coeffs.len() as i32)
        });
        if genuine {
            out.push((center, k as u32));
            continue;
        }
        let spread = cluster
            .iter()
            .flat_map(|a| cluster.iter().map(move |b| (a - b).norm()))
            .fold(0.0f64, f64::max);
        if spread < MERGE_RADIUS {
            return Err(PolyError::IllConditioned(cluster[0], cluster[1]));
        }
        out.extend(cluster.into_iter().map(|r| (r, 1)));
    }
    out.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    Ok(out)
}

fn taylor(coeffs: &[Complex64], z: Complex64, k: usize) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for (i, &c) in coeffs.iter().enumerate().skip(k).rev() {
        let b = (0..k).fold(1.0, |acc, j| acc * (i - j) as f64 / (j + 1) as f64);
        sum = sum * z + c * b;
    }
    sum
}

/// Critical points with their local degrees (derivative multiplicity + 1).
pub fn critical_points(p: &ComplexPolynomial) -> Result<Vec<(Complex64, u32)>, PolyError> {
    let dcoeffs = p.derivative_coefficients();
    let found = roots_with_multiplicity(&dcoeffs)?;
    let total: u32 = found.iter().map(|(_, k)| k).sum();
    if total != p.degree() - 1 {
        return Err(PolyError::RootFindingDiverged);
    }
    Ok(found.into_iter().map(|(z, k)| (z, k + 1)).collect())
}

/// The `m` solutions of `p(z) = w`, repeated by multiplicity.
pub fn preimages(p: &ComplexPolynomial, w: Complex64) -> Result<Vec<Complex64>, PolyError> {
    let mut coeffs = p.coefficients().to_vec();
    coeffs[0] -= w;
    let mut roots = polynomial_roots(&coeffs)?;
    // one Newton polish each; simple roots gain the last few digits
    for r in roots.iter_mut() {
        let (v, d) = p.eval_with_derivative(*r);
        if d.norm() > 1e-8 {
            let next = *r - (v - w) / d;
            if next.re.is_finite() && next.im.is_finite() {
                *r = next;
            }
        }
    }
    Ok(roots)
}
