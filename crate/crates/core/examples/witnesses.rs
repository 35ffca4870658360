//! Sequences `s^m` that approach a member of `X_{α⌢N}` while staying out of
//! its closure.

use cantor_bouquet::model::{ModelPoint, Precision};
use cantor_bouquet::strata::{nowhere_dense_demo, AlphaIndex};
use cantor_bouquet::{SymbolSeq, TailRule};

fn main() {
    let p = Precision::default();
    let base = SymbolSeq::from_ints(&[], TailRule::fexp(10)).unwrap();
    let x = ModelPoint::endpoint(base, &p).unwrap();
    let alpha = AlphaIndex::new(vec![0]).unwrap();

    let reports = nowhere_dense_demo(&x, &alpha, 1, 4, &p).unwrap();
    println!("{:>3}  {:>24}  {:>24}  {:>10}", "m", "inf t*(σ^n s^m), n>=m", "t*(σ^m s^m)", "distance");
    for r in &reports {
        println!(
            "{:>3}  {:>24}  {:>24}  {:>10.3e}",
            r.m,
            format!("{:.6}", r.claim1_margin.lo),
            format!("{:.6}", r.claim2_bound.hi),
            r.distance
        );
    }
    println!("last witness: {}", reports.last().unwrap().witness.to_json());
}
