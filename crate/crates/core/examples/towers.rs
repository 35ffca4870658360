//! Arithmetic on values like `F^5(3)` that are far beyond `f64`.

use cantor_bouquet::tower::Magnitude;
use cantor_bouquet::Interval;

fn main() {
    let a = Magnitude::point(3.0).f_iter(5);
    let b = Magnitude::point(4.0).f_iter(4);
    println!("F^5(3) = {a}");
    println!("F^4(4) = {b}");
    // F^3(3) = e^{1.9e8} already dwarfs F^2(4) = 1.9e23.
    println!("F^4(4) < F^5(3)? {}", b.certainly_lt(&a));

    let sum = a.add(&a);
    println!("F^-4(F^5(3) + F^5(3)) = {}", sum.f_inv_iter(4).to_interval());
    println!("F^-5 recovers 3: {}", a.f_inv_iter(5).to_interval());

    let plain = Magnitude::plain(Interval::new(1.0, 2.0)).f();
    println!("F([1, 2]) = {}", plain.to_interval());
}
