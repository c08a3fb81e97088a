use dualcount_series::{parse_genexpr, GaussRational, GenExpr, Lin};
use proptest::prelude::*;

/// Expressions in which `a` may appear in exponents (they are wrapped in an
/// `avg` over `a` before use).
fn arb_expr() -> impl Strategy<Value = GenExpr> {
    let exp = (-3i64..=3, -2i64..=2).prop_map(|(c, x)| Lin::constant(c).plus_var("a", x));
    let leaf = prop_oneof![
        (0u64..5).prop_map(GenExpr::Int),
        Just(GenExpr::Q),
        Just(GenExpr::I),
        (1i64..4).prop_map(GenExpr::q_pow),
    ];
    leaf.prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| GenExpr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| GenExpr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| GenExpr::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| GenExpr::mul(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| GenExpr::div(a, b)),
            (inner.clone(), exp.clone()).prop_map(|(a, e)| {
                if a == GenExpr::Q && e.as_constant() == Some(0) {
                    a
                } else {
                    GenExpr::pow(a, e)
                }
            }),
            (inner.clone(), 0i64..2).prop_map(|(b, lo)| GenExpr::Avg {
                var: "c".into(),
                lo,
                hi: lo + 1,
                body: Box::new(b)
            }),
        ]
    })
}

fn wrap(e: GenExpr) -> GenExpr {
    GenExpr::Avg {
        var: "a".into(),
        lo: 0,
        hi: 1,
        body: Box::new(e),
    }
}

/// Products of factors (1 - u q^k)^(-e) and small polynomials.
fn arb_product() -> impl Strategy<Value = GenExpr> {
    let unit = (0i64..2, 0i64..4);
    let factor = (unit, 1i64..5, 1i64..3, any::<bool>()).prop_map(|((s, ip), k, e, inv)| {
        let u = GenExpr::mul(
            GenExpr::mul(
                GenExpr::pow(GenExpr::Neg(Box::new(GenExpr::Int(1))), Lin::constant(s)),
                GenExpr::pow(GenExpr::I, Lin::constant(ip)),
            ),
            GenExpr::q_pow(k),
        );
        let b = GenExpr::sub(GenExpr::Int(1), u);
        GenExpr::pow(b, Lin::constant(if inv { -e } else { e }))
    });
    prop::collection::vec(factor, 0..5)
        .prop_map(|fs| fs.into_iter().fold(GenExpr::Int(1), GenExpr::mul))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printer_round_trips(e in arb_expr()) {
        let w = wrap(e);
        let text = w.to_string();
        let back = parse_genexpr(&text).unwrap();
        prop_assert_eq!(&back, &w, "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn expansion_is_multiplicative(a in arb_product(), b in arb_product()) {
        let n = 40;
        let lhs = GenExpr::mul(a.clone(), b.clone()).expand(n).unwrap();
        let rhs = a.expand(n).unwrap().mul(&b.expand(n).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_twists_coefficients(a in arb_product(), s in 0i64..2, ip in 0i64..4) {
        let n = 30;
        let zeta = &GaussRational::i_pow(2 * s) * &GaussRational::i_pow(ip);
        let twisted = a.substitute_q(s, ip).expand(n).unwrap();
        prop_assert_eq!(twisted, a.expand(n).unwrap().twist(&zeta));
    }
}
