//! Stepping the model map and sorting points into non-members, escaping
//! points and endpoints.

use cantor_bouquet::model::{classify, model_step, orbit, ModelPoint, Precision, Step};
use cantor_bouquet::{SymbolSeq, TailRule};

fn main() {
    let p = Precision::default();
    let ln2 = std::f64::consts::LN_2;

    let x = ModelPoint::new(ln2, SymbolSeq::constant(1)).unwrap();
    for (i, step) in orbit(&x, 3).iter().enumerate() {
        match step {
            Step::Point(y) => println!("step {}: t = {:.3e}", i + 1, y.t()),
            Step::NotInDomain => println!("step {}: left [0, ∞)", i + 1),
            Step::Large { .. } => println!("step {}: past the overflow guard", i + 1),
        }
    }

    let points = [
        ModelPoint::new(ln2, SymbolSeq::constant(1)).unwrap(),
        ModelPoint::new(0.0, SymbolSeq::constant(0)).unwrap(),
        ModelPoint::new(2.0, SymbolSeq::constant(0)).unwrap(),
        ModelPoint::endpoint(SymbolSeq::from_ints(&[], TailRule::fexp(3)).unwrap(), &p).unwrap(),
    ];
    for x in &points {
        println!("⟨{:.6}, {}⟩ -> {:?}", x.t(), x.seq(), classify(x, 64, &p));
    }

    if let Step::Point(y) = model_step(&points[1]) {
        println!("⟨0, 0^ω⟩ is fixed: t = {}", y.t());
    }
}
