//! Exact building blocks: preimage fractions, critical labels and graphs.

use dgraph::fraction::{cyclic_between, frac_eq, PreimageFraction};
use dgraph::graph::{compare_graphs, graph_validate, DistinguishingGraph, InvariantCertificate, LabelledPoint};
use dgraph::label::{ComponentNumber, ComponentPair, CriticalLabel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let half = PreimageFraction::new(1, 2, 1)?;
    let two_quarters = PreimageFraction::new(2, 2, 2)?;
    let quarter = PreimageFraction::new(1, 2, 2)?;
    let zero = PreimageFraction::identity(2)?;
    println!("{half} == {two_quarters}: {}", frac_eq(&half, &two_quarters)?);
    println!("ccw from {zero}, {quarter} before {half}: {}", cyclic_between(&zero, &quarter, &half)?);

    let anchor = CriticalLabel::new(2, 0, ComponentPair::first())?;
    let deeper = CriticalLabel::new(
        2,
        1,
        ComponentPair::new(ComponentNumber::new(vec![2, 1])?, ComponentNumber::new(vec![1, 1])?),
    )?;
    println!("labels: {anchor} and {deeper}");

    let g = DistinguishingGraph::new(vec![
        LabelledPoint::new(0.0, anchor.clone()),
        LabelledPoint::new(0.4, deeper.clone()),
    ]);
    println!("validation: {}", graph_validate(&g));

    // moving labels monotonically along [0, 1) keeps the invariant
    let moved = g.reparametrized(|y| y * y);
    println!("after reparametrizing: {}", compare_graphs(&g, &moved)?);

    let cert = InvariantCertificate::new(3, g)?;
    let json = cert.to_json();
    println!("{json}");
    assert_eq!(InvariantCertificate::from_json(&json)?, cert);
    Ok(())
}
