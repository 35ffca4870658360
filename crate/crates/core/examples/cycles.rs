//! Periodic cycles of `e^z + a` found by Newton's method.

use cantor_bouquet::plane::{find_cycle, ComplexPoint};

fn main() {
    let runs = [
        (ComplexPoint::real(-1.0), 1, ComplexPoint::real(0.1)),
        (ComplexPoint::real(-2.0), 1, ComplexPoint::real(-2.0)),
        (ComplexPoint::real(-2.5), 2, ComplexPoint::new(-2.0, 0.5).unwrap()),
        (ComplexPoint::real(1.0), 1, ComplexPoint::new(2.0, 7.0).unwrap()),
        (ComplexPoint::real(1.0), 1, ComplexPoint::real(0.5)),
    ];
    for (a, period, seed) in runs {
        match find_cycle(a, period, seed) {
            Ok(c) => println!(
                "a = {a}, period {period}: z = {}, λ = {} ({:?})",
                c.points[0], c.multiplier, c.kind
            ),
            Err(e) => println!("a = {a}, period {period}: {e}"),
        }
    }
}
