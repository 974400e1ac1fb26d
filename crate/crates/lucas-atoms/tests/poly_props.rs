//! Property tests for the polynomial kernel: ring axioms, exact division,
//! evaluation as a ring homomorphism, substitution/evaluation coherence,
//! and text round-trips.

use lucas_atoms::{IntPoly2, VarPair};
use num_bigint::BigInt;
use proptest::prelude::*;

fn arb_poly(vars: VarPair) -> impl Strategy<Value = IntPoly2> {
    let max_j = match vars {
        VarPair::ST => 12u32,
        VarPair::Q => 0,
    };
    proptest::collection::vec(
        (0..=12u32, 0..=max_j, -1_000_000i64..=1_000_000i64),
        0..8,
    )
    .prop_map(move |terms| {
        IntPoly2::from_terms(
            vars,
            terms.into_iter().map(|(i, j, c)| (i, j, BigInt::from(c))),
        )
    })
}

fn arb_st() -> impl Strategy<Value = IntPoly2> {
    arb_poly(VarPair::ST)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in arb_st(), b in arb_st(), c in arb_st()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }
}

proptest! {
    #[test]
    fn division_inverts_multiplication(a in arb_st(), b in arb_st()) {
        prop_assume!(!b.is_zero());
        let product = &a * &b;
        prop_assert_eq!(product.exact_div(&b).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        a in arb_st(),
        b in arb_st(),
        x in -9i64..=9,
        y in -9i64..=9,
    ) {
        prop_assert_eq!(
            (&a * &b).evaluate_i64(x, y),
            a.evaluate_i64(x, y) * b.evaluate_i64(x, y)
        );
        prop_assert_eq!(
            (&a + &b).evaluate_i64(x, y),
            a.evaluate_i64(x, y) + b.evaluate_i64(x, y)
        );
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        p in arb_st(),
        f in arb_st(),
        g in arb_st(),
        x in -5i64..=5,
        y in -5i64..=5,
    ) {
        let composed = p.substitute(&f, &g).unwrap();
        let direct = p.evaluate(&f.evaluate_i64(x, y), &g.evaluate_i64(x, y));
        prop_assert_eq!(composed.evaluate_i64(x, y), direct);
    }

    #[test]
    fn parse_inverts_display(p in arb_st()) {
        let text = p.to_string();
        prop_assert_eq!(IntPoly2::parse(&text, VarPair::ST).unwrap(), p);
    }

    #[test]
    fn parse_inverts_display_univariate(p in arb_poly(VarPair::Q)) {
        let text = p.to_string();
        prop_assert_eq!(IntPoly2::parse(&text, VarPair::Q).unwrap(), p);
    }
}
