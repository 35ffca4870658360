//! Membership in the strata `X_α` and the search for extensions `α⌢N`.

use cantor_bouquet::model::{ModelPoint, Precision};
use cantor_bouquet::strata::{find_extension, in_x, AlphaIndex};
use cantor_bouquet::{SymbolSeq, TailRule};

fn main() {
    let p = Precision::default();
    let seq = SymbolSeq::from_ints(&[0, 1, 0, 2], TailRule::fexp(3)).unwrap();
    let x = ModelPoint::endpoint(seq, &p).unwrap();
    println!("endpoint of {} at t = {:.9}", x.seq(), x.t());

    let mut alpha = AlphaIndex::empty();
    for _ in 0..4 {
        let n = find_extension(&alpha, &x, 0, &p).unwrap();
        alpha = alpha.extend(n).unwrap();
        println!("in X_{alpha}: {:?}", in_x(&alpha, &x, &p));
    }

    let bounded = ModelPoint::endpoint(SymbolSeq::constant(1), &p).unwrap();
    println!("endpoint of 1^ω in X_∅: {:?}", in_x(&AlphaIndex::empty(), &bounded, &p));
}
