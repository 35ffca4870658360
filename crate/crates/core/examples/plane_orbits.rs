//! Orbits of `e^z + a`, their itineraries and the escape region test.

use std::f64::consts::PI;

use cantor_bouquet::plane::{escape_record, escape_region_a, iterate, itinerary, ComplexPoint};

fn main() {
    let a = ComplexPoint::real(-1.0);
    let orbit = iterate(a, ComplexPoint::real(10.0), 4);
    println!("orbit of 10: {:?} escaped at {:?}", orbit.points.iter().map(|z| z.re).collect::<Vec<_>>(), orbit.escaped_at);

    for im in [2.0 * PI, -4.0 * PI, 0.3] {
        let z = ComplexPoint::new(0.5, im).unwrap();
        println!("itinerary of {z}: {:?}", itinerary(a, z, 4));
    }

    let z = ComplexPoint::new(1.0, 3.0).unwrap();
    println!("{:?}", escape_record(a, z, 30));

    for (z, budget) in [(10.0, 5), (0.0, 5), (2.0, 1), (2.0, 2)] {
        let verdict = escape_region_a(a, 5.0, ComplexPoint::real(z), budget).unwrap();
        println!("z = {z}, budget {budget}: {verdict:?}");
    }
}
