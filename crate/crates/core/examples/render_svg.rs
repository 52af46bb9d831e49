//! Write SVG pictures of the level curves, critical rays and lobes.

use std::path::PathBuf;

use dgraph::oracle::LevelOracle;
use dgraph::poly::{ComplexPolynomial, Tolerances};
use dgraph::render::{equipotentials, equipotentials_svg, rays_svg, regions_svg};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = Tolerances::default();
    let p = ComplexPolynomial::from_real(&[3.0, 0.0, 1.0])?;
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);

    let (_, curves) = equipotentials(&p, 512, &t)?;
    for c in &curves {
        println!("level {:.6}: {} points, closed {}", c.level, c.points.len(), c.closed);
    }
    let survey = LevelOracle::new(&p, &t)?.survey(2, 512)?;
    let files = [
        ("equipotentials.svg", equipotentials_svg(&p, 512, &t)?),
        ("rays.svg", rays_svg(&p, &t)?),
        ("regions.svg", regions_svg(&survey.maps[2])),
    ];
    for (name, body) in files {
        let path = dir.join(name);
        std::fs::write(&path, body)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
