//! Strategies and laws for the combinatorial core.

use dgraph::fraction::{cyclic_between, frac_eq, FractionError, PreimageFraction};
use dgraph::graph::{
    canonical_sequence, certificates_equivalent, graphs_equivalent, DistinguishingGraph, InvariantCertificate,
    LabelledPoint,
};
use dgraph::label::{label_eq, ComponentNumber, ComponentPair, CriticalLabel};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 10_000;

type Law = Result<(), TestCaseError>;

pub fn fraction() -> impl Strategy<Value = PreimageFraction> {
    (2u64..=4, 0u32..=5).prop_flat_map(|(m, n)| {
        let den = (m as u128).pow(n);
        (0..den).prop_map(move |k| PreimageFraction::new(k, m, n).unwrap())
    })
}

/// The same number written at a deeper level.
pub fn deepen(f: &PreimageFraction, extra: u32) -> PreimageFraction {
    let m = f.base();
    PreimageFraction::new(f.index() * (m as u128).pow(extra), m, f.depth() + extra).unwrap()
}

fn as_rational(f: &PreimageFraction) -> BigRational {
    BigRational::new(BigInt::from(f.index()), BigInt::from(f.denominator()))
}

/// Binary fractions with a handful of values so that equal pairs are common.
pub fn close_fraction() -> impl Strategy<Value = PreimageFraction> {
    (0u128..4, 0u32..3).prop_map(|(k, extra)| deepen(&PreimageFraction::new(k, 2, 2).unwrap(), extra))
}

/// Four fractions of one base and depth.
pub fn fraction_quad() -> impl Strategy<Value = [PreimageFraction; 4]> {
    (2u64..=3, 1u32..=4).prop_flat_map(|(m, n)| {
        let den = (m as u128).pow(n);
        prop::array::uniform4(0..den).prop_map(move |k| k.map(|k| PreimageFraction::new(k, m, n).unwrap()))
    })
}

fn component_number() -> impl Strategy<Value = ComponentNumber> {
    prop::collection::vec(1u32..=2, 1..=2).prop_map(|v| ComponentNumber::new(v).unwrap())
}

pub fn label() -> impl Strategy<Value = CriticalLabel> {
    (2u32..=3, 0u32..=1, component_number(), component_number())
        .prop_map(|(d, n, a, b)| CriticalLabel::new(d, n, ComponentPair::new(a, b)).unwrap())
}

/// Anchored graphs with up to two more points on a grid of [0, 1).
pub fn graph() -> impl Strategy<Value = DistinguishingGraph> {
    (prop::collection::btree_set(1u32..100, 0..=2), prop::collection::vec(label(), 2)).prop_map(|(cells, labels)| {
        let mut points = vec![LabelledPoint::new(0.0, CriticalLabel::new(2, 0, ComponentPair::first()).unwrap())];
        for (cell, l) in cells.into_iter().zip(labels) {
            points.push(LabelledPoint::new(cell as f64 / 100.0, l));
        }
        DistinguishingGraph::new(points)
    })
}

pub fn certificate() -> impl Strategy<Value = InvariantCertificate> {
    (2u32..=3, graph()).prop_map(|(m, g)| InvariantCertificate::new(m, g).unwrap())
}

/// Increasing self-maps of [0, 1) fixing 0, as `mix y + (1 - mix) y^power`.
pub fn reparametrization() -> impl Strategy<Value = (f64, f64)> {
    (0.3f64..3.0, 0.0f64..0.9)
}

fn apply((power, mix): (f64, f64), y: f64) -> f64 {
    mix * y + (1.0 - mix) * y.powf(power)
}

pub fn frac_eq_matches_rationals(a: &PreimageFraction, b: &PreimageFraction) -> Law {
    let same_base = a.base() == b.base();
    match frac_eq(a, b) {
        Ok(eq) => {
            prop_assert!(same_base);
            prop_assert_eq!(eq, as_rational(a) == as_rational(b));
        }
        Err(FractionError::MixedBase(..)) => prop_assert!(!same_base),
        Err(e) => prop_assert!(false, "unexpected {e}"),
    }
    Ok(())
}

pub fn frac_eq_laws(a: &PreimageFraction, b: &PreimageFraction, c: &PreimageFraction, extra: u32) -> Law {
    prop_assert!(frac_eq(a, a).unwrap());
    prop_assert!(frac_eq(a, &deepen(a, extra)).unwrap());
    prop_assert_eq!(frac_eq(a, b).unwrap(), frac_eq(b, a).unwrap());
    if frac_eq(a, b).unwrap() && frac_eq(b, c).unwrap() {
        prop_assert!(frac_eq(a, c).unwrap());
    }
    Ok(())
}

pub fn cyclic_between_rotation([a, b, c, r]: &[PreimageFraction; 4]) -> Law {
    let before = cyclic_between(a, b, c);
    let turned = cyclic_between(
        &a.add_mod_one(r).unwrap(),
        &b.add_mod_one(r).unwrap(),
        &c.add_mod_one(r).unwrap(),
    );
    prop_assert_eq!(before.clone(), turned);
    if let Ok(x) = before {
        // exactly one of the two cyclic orders holds
        prop_assert_ne!(x, cyclic_between(a, c, b).unwrap());
    }
    Ok(())
}

pub fn label_eq_laws(a: &CriticalLabel, b: &CriticalLabel, c: &CriticalLabel) -> Law {
    prop_assert!(label_eq(a, a));
    prop_assert_eq!(label_eq(a, b), label_eq(b, a));
    if label_eq(a, b) && label_eq(b, c) {
        prop_assert!(label_eq(a, c));
    }
    // the pair is unordered
    let (x, y) = a.pair().members();
    let swapped = CriticalLabel::new(a.local_degree(), a.depth(), ComponentPair::new(y.clone(), x.clone())).unwrap();
    prop_assert!(label_eq(a, &swapped));
    Ok(())
}

pub fn graphs_equivalent_laws(
    a: &DistinguishingGraph,
    b: &DistinguishingGraph,
    c: &DistinguishingGraph,
    f: (f64, f64),
) -> Law {
    prop_assert!(graphs_equivalent(a, a).unwrap());
    prop_assert!(graphs_equivalent(a, &a.reparametrized(|y| apply(f, y))).unwrap());
    prop_assert_eq!(graphs_equivalent(a, b).unwrap(), graphs_equivalent(b, a).unwrap());
    if graphs_equivalent(a, b).unwrap() && graphs_equivalent(b, c).unwrap() {
        prop_assert!(graphs_equivalent(a, c).unwrap());
    }
    Ok(())
}

pub fn canonical_sequence_reparametrized(g: &DistinguishingGraph, f: (f64, f64)) -> Law {
    let moved = g.reparametrized(|y| apply(f, y));
    prop_assert_eq!(canonical_sequence(g).unwrap(), canonical_sequence(&moved).unwrap());
    Ok(())
}

pub fn certificates_equivalent_laws(a: &InvariantCertificate, b: &InvariantCertificate, c: &InvariantCertificate) -> Law {
    prop_assert!(certificates_equivalent(a, a).unwrap());
    prop_assert_eq!(certificates_equivalent(a, b).unwrap(), certificates_equivalent(b, a).unwrap());
    if certificates_equivalent(a, b).unwrap() && certificates_equivalent(b, c).unwrap() {
        prop_assert!(certificates_equivalent(a, c).unwrap());
    }
    if a.degree != b.degree {
        prop_assert!(!certificates_equivalent(a, b).unwrap());
    }
    Ok(())
}

/// Every law above over `CASES` random cases, by name.
pub fn run_all() -> Vec<(&'static str, Result<(), String>)> {
    fn go<S: Strategy>(s: S, law: impl Fn(S::Value) -> Law) -> Result<(), String> {
        let config = Config {
            failure_persistence: None,
            ..Config::with_cases(CASES)
        };
        TestRunner::new(config)
            .run(&s, law)
            .map_err(|e| e.to_string())
    }
    vec![
        ("frac_eq vs rationals", go((fraction(), fraction()), |(a, b)| frac_eq_matches_rationals(&a, &b))),
        (
            "frac_eq equivalence",
            go((close_fraction(), close_fraction(), close_fraction(), 0u32..4), |(a, b, c, e)| {
                frac_eq_laws(&a, &b, &c, e)
            }),
        ),
        ("label_eq equivalence", go((label(), label(), label()), |(a, b, c)| label_eq_laws(&a, &b, &c))),
        (
            "graphs_equivalent equivalence",
            go((graph(), graph(), graph(), reparametrization()), |(a, b, c, f)| {
                graphs_equivalent_laws(&a, &b, &c, f)
            }),
        ),
        (
            "certificates_equivalent equivalence",
            go((certificate(), certificate(), certificate()), |(a, b, c)| {
                certificates_equivalent_laws(&a, &b, &c)
            }),
        ),
        ("cyclic_between rotation", go(fraction_quad(), |q| cyclic_between_rotation(&q))),
        (
            "canonical_sequence reparametrization",
            go((graph(), reparametrization()), |(g, f)| canonical_sequence_reparametrized(&g, f)),
        ),
    ]
}
