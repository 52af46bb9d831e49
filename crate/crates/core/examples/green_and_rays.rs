//! Green's function, external angles and traced rays of an escaping cubic.

use dgraph::poly::{
    critical_points, external_angle, green, co_angles, trace_ray, ComplexPolynomial, Tolerances,
};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = Tolerances::default();
    let p = ComplexPolynomial::from_real(&[10.0, -3.0, 0.0, 1.0])?;
    println!("p(z) = {p}");

    let z = Complex64::new(0.4, 0.9);
    let g = green(&p, z, &t)?;
    let g1 = green(&p, p.eval(z), &t)?;
    println!("G(z) = {:.15} (bound {:e}, {} iterations)", g.value, g.error_bound, g.iterations_used);
    println!("G(p(z)) / G(z) = {:.12}", g1.value / g.value);

    let theta = external_angle(&p, z, &t)?;
    let theta1 = external_angle(&p, p.eval(z), &t)?;
    println!("angle(z) = {theta:.12}, 3 angle(z) mod 1 = {:.12}, angle(p(z)) = {theta1:.12}", (3.0 * theta).fract());

    // the ray of that angle comes back down to z
    let ray = trace_ray(&p, theta, g.value, &t)?;
    println!("ray of {theta:.6} ends {:.2e} away from z", (ray.points.last().unwrap() - z).norm());

    for (c, d) in critical_points(&p)? {
        let gc = green(&p, c, &t)?.value;
        let (co, image) = co_angles(&p, c, d, &t)?;
        println!("critical {c} (degree {d}): G = {gc:.12}, critical value angle {image:.9}, co-angles {co:.9?}");
    }
    Ok(())
}
