//! Certificates straight from symbolic critical portraits, in both walk
//! directions.

use dgraph::covering::{arc_partition, build_certificate_oriented, Orientation};
use dgraph::portrait::{portrait_validate, CriticalPortrait};

const QUADRATIC: &str = r#"{"degree": 2, "base_angle": "0/1",
  "criticals": [{"d": 2, "n": 0, "y_frac": 0.0, "co_angles": ["0/1", "1/2"]}]}"#;

const CUBIC: &str = r#"{"degree": 3, "base_angle": "0/1",
  "criticals": [
    {"d": 2, "n": 0, "y_frac": 0.0, "co_angles": ["0/1", "1/3"]},
    {"d": 2, "n": 1, "y_frac": 0.25, "co_angles": ["1/9", "4/9"]}
  ]}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in [QUADRATIC, CUBIC] {
        let portrait = CriticalPortrait::from_json(text)?;
        println!("portrait of degree {}: {}", portrait.degree, portrait_validate(&portrait));
        let top = &portrait.criticals[0];
        let arcs = arc_partition(top, &portrait.base_angle, Orientation::Ccw)?;
        for i in 1..=arcs.len() {
            let (a, b) = arcs.arc(i);
            println!("  top critical, arc {i}: {a} .. {b}");
        }
        let ccw = build_certificate_oriented(&portrait, Orientation::Ccw)?;
        let cw = build_certificate_oriented(&portrait, Orientation::Cw)?;
        println!("  ccw {}", ccw.to_json());
        println!("  cw  {}", cw.to_json());
        println!("  identical: {}", ccw == cw);
    }
    Ok(())
}
