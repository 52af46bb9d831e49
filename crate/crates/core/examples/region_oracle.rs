//! Flood-fill the preimage bands of the fundamental annulus and compare the
//! lobes with the certificate.

use dgraph::oracle::{consistency_report, corrupted, LevelOracle};
use dgraph::poly::{invariant_of, ComplexPolynomial, Tolerances};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = Tolerances::default();
    let quad = ComplexPolynomial::from_real(&[3.0, 0.0, 1.0])?;
    let oracle = LevelOracle::new(&quad, &t)?;
    println!("z^2 + 3, G* = {:.12}", oracle.g_star());
    for res in [512, 1024] {
        let survey = oracle.survey(3, res)?;
        for s in survey.summaries() {
            println!("  res {:>4} depth {}: {} regions, {} boundaries", survey.resolution, s.depth, s.regions, s.boundaries);
        }
    }

    let cubic = ComplexPolynomial::from_real(&[10.0, -3.0, 0.0, 1.0])?;
    let cert = invariant_of(&cubic, &t)?;
    let report = consistency_report(&cubic, &cert, 2, 1024, &t)?;
    println!("z^3 - 3z + 10, certificate {}", cert.to_json());
    println!("{report}");

    let bad = corrupted(&cert).expect("the cubic has a second label");
    let report = consistency_report(&cubic, &bad, 2, 1024, &t)?;
    println!("corrupted certificate {}", bad.to_json());
    println!("{report}");
    Ok(())
}
