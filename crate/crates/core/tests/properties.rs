use cantor_bouquet::model::{t_min, t_star, Precision};
use cantor_bouquet::{SymbolSeq, TailRule};
use proptest::prelude::*;

fn tail() -> impl Strategy<Value = TailRule> {
    prop_oneof![
        (-6i64..=6).prop_map(TailRule::Const),
        prop::collection::vec(-6i64..=6, 1..4).prop_map(TailRule::periodic),
        (1u64..=6).prop_map(TailRule::fexp),
    ]
}

fn seq() -> impl Strategy<Value = SymbolSeq> {
    (prop::collection::vec(-20i64..=20, 0..5), tail())
        .prop_map(|(prefix, tail)| SymbolSeq::from_ints(&prefix, tail).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shift_commutes_with_indexing(s in seq(), n in 0usize..6, k in 1usize..10) {
        prop_assert_eq!(s.shift(n).seq_at(k), s.seq_at(n + k));
    }

    #[test]
    fn descriptor_json_roundtrip(s in seq()) {
        let back = SymbolSeq::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn endpoint_sits_within_one_of_t_star(s in seq()) {
        let p = Precision::default();
        let lower = t_star(&s, 0);
        if let Ok(h) = t_min(&s, &p) {
            prop_assert!(h.hi >= lower.lo - p.tol, "{h} below {lower}");
            prop_assert!(h.lo <= lower.hi + 1.0 + p.tol, "{h} above {lower} + 1");
        }
    }

    #[test]
    fn raising_a_symbol_raises_the_endpoint(s in seq(), bump in 1i64..5) {
        let p = Precision::default();
        let mut ints: Vec<i64> = (1..=3).map(|k| s.seq_at(k).abs_int().unwrap_or(0) as i64).collect();
        let lowered = SymbolSeq::from_ints(&[0, ints[0], ints[1], ints[2]], TailRule::Const(0)).unwrap();
        ints[1] += bump;
        let raised = SymbolSeq::from_ints(&[0, ints[0], ints[1], ints[2]], TailRule::Const(0)).unwrap();
        let (a, b) = (t_min(&lowered, &p).unwrap(), t_min(&raised, &p).unwrap());
        prop_assert!(a.lo <= b.hi + p.tol);
    }
}
