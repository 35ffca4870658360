//! Potentials `F^{-k}|s_n|` and their sup `t*` for each kind of tail rule.

use cantor_bouquet::model::{pot, t_star, t_star_detail};
use cantor_bouquet::seq::Rational;
use cantor_bouquet::{SymbolSeq, TailRule};

fn main() {
    let ones = SymbolSeq::constant(1);
    println!("t*(1^ω)                = {}", t_star(&ones, 0));
    println!("F^-3(|s_3|) for 1^ω    = {}", pot(&ones, 3, 3));

    // s_n = floor(F^n(3)) for n >= 1: the sup is approached but never reached.
    let tower = SymbolSeq::from_ints(&[0], TailRule::fexp(3)).unwrap();
    for k in 1..=4 {
        println!("F^-{k}(|s_{k}|)          = {}", pot(&tower, k, k as u32));
    }
    println!("t*                     = {}", t_star(&tower, 0));
    // Shifted far enough, t* itself is a tower.
    println!("t*(σ^5 s)              = {}", t_star_detail(&tower, 5, 10_000).value);

    let lin = SymbolSeq::from_ints(&[], TailRule::linexp(Rational::new(3, 2))).unwrap();
    let d = t_star_detail(&lin, 0, 10_000);
    println!("t*(ceil(F(3n/2)))      = {} after {} terms", d.value.to_interval(), d.horizon);
}
