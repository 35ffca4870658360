//! Endpoint heights `t_s`, and the lower bounds `u_n` that climb to them.

use cantor_bouquet::model::{backward_nesting, t_min, t_min_detail, Precision};
use cantor_bouquet::{SymbolSeq, TailRule};

fn main() {
    let p = Precision::default();
    let cases = [
        ("1^ω", SymbolSeq::constant(1)),
        ("0 5 0^ω", SymbolSeq::from_ints(&[0, 5], TailRule::Const(0)).unwrap()),
        ("(2 7)^ω", SymbolSeq::from_ints(&[], TailRule::periodic(vec![2, 7])).unwrap()),
        ("floor(F^{n+1}(10))", SymbolSeq::from_ints(&[], TailRule::fexp(10)).unwrap()),
    ];
    for (name, s) in &cases {
        let r = t_min_detail(s, &p);
        println!("{name:>20}: t_s ∈ {}  (levels {}, width {:.1e})", r.enclosure, r.levels, r.enclosure.width());
    }

    let s = &cases[2].1;
    print!("u_n for (2 7)^ω:");
    for n in [1, 2, 4, 8, 16] {
        print!(" {:.9}", backward_nesting(s, n).mid());
    }
    println!();

    // Ask for more digits than doubles carry and get the best enclosure back.
    let tight = Precision { tol: 1e-30, ..p };
    match t_min(&SymbolSeq::constant(1), &tight) {
        Ok(iv) => println!("unexpected convergence: {iv}"),
        Err(e) => println!("tol 1e-30: {e}"),
    }
}
