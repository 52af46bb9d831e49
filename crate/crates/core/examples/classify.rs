//! Classify a few polynomials and check that affine conjugates agree.

use dgraph::graph::compare_certificates;
use dgraph::poly::{invariant_of, ComplexPolynomial, Tolerances};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = Tolerances::default();
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let corpus = [
        ("z^2 + 3", ComplexPolynomial::from_real(&[3.0, 0.0, 1.0])?),
        ("z^2 + 5", ComplexPolynomial::from_real(&[5.0, 0.0, 1.0])?),
        ("z^2 + 0.1", ComplexPolynomial::from_real(&[0.1, 0.0, 1.0])?),
        ("z^3", ComplexPolynomial::from_real(&[0.0, 0.0, 0.0, 1.0])?),
        ("z^3 - 3z + 10", ComplexPolynomial::from_real(&[10.0, -3.0, 0.0, 1.0])?),
        ("z^3 - 3z + 8+3i", ComplexPolynomial::new(vec![c(8.0, 3.0), c(-3.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])?),
    ];
    let certs = corpus
        .iter()
        .map(|(name, p)| Ok((*name, invariant_of(p, &t)?)))
        .collect::<Result<Vec<_>, dgraph::poly::PolyError>>()?;
    for (name, cert) in &certs {
        println!("{name:>16}: {}", cert.to_json());
    }
    for (i, (a, ca)) in certs.iter().enumerate() {
        for (b, cb) in &certs[i + 1..] {
            println!("{a} vs {b}: {}", compare_certificates(ca, cb)?);
        }
    }

    let p = &corpus[4].1;
    let q = p.affine_conjugate(c(0.7, -1.3), c(2.0, 0.5))?;
    println!("conjugate {q}");
    println!("conjugate vs original: {}", compare_certificates(&invariant_of(p, &t)?, &invariant_of(&q, &t)?)?);
    Ok(())
}
