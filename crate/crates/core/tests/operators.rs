use orlicz_dynamics::{
    criterion_quantity, orlicz_norm, FinSupSeq, FiniteSet, GroupElement, ProductVariant, Weight,
    WeightedTranslation, YoungFunction,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn seq() -> impl Strategy<Value = FinSupSeq> {
    prop::collection::vec((-10i64..=10, -5.0f64..=5.0), 0..8).prop_map(|pairs| {
        FinSupSeq::from_pairs(pairs.into_iter().map(|(x, v)| (GroupElement::scalar(x), v))).unwrap()
    })
}

fn weight() -> impl Strategy<Value = Weight> {
    prop_oneof![
        Just(Weight::paper_step()),
        (0.2f64..3.0).prop_map(Weight::constant),
        prop::collection::vec(0.25f64..4.0, 1..4).prop_map(|v| Weight::periodic(&v)),
    ]
}

fn op() -> impl Strategy<Value = WeightedTranslation> {
    (prop_oneof![-3i64..=-1, 1i64..=3], weight())
        .prop_map(|(g, w)| WeightedTranslation::new(GroupElement::scalar(g), w).unwrap())
}

fn same(a: &FinSupSeq, b: &FinSupSeq, tol: f64) -> bool {
    a.support()
        .union(&b.support())
        .iter()
        .all(|x| (a.get(x) - b.get(x)).abs() <= tol * a.get(x).abs().max(1.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn s_inverts_t(op in op(), f in seq(), n in 0usize..30) {
        prop_assert!(same(&op.apply_s(&op.apply_t(&f, n), n), &f, 1e-12));
        prop_assert!(same(&op.apply_t(&op.apply_s(&f, n), n), &f, 1e-12));
    }

    #[test]
    fn powers_compose(op in op(), f in seq(), m in 0usize..20, n in 0usize..20) {
        let stepwise = op.apply_t(&op.apply_t(&f, m), n);
        prop_assert!(same(&stepwise, &op.apply_t(&f, m + n), 1e-12));
        let back = op.apply_s(&op.apply_s(&f, m), n);
        prop_assert!(same(&back, &op.apply_s(&f, m + n), 1e-12));
    }

    #[test]
    fn cosine_is_linear(op in op(), f in seq(), g in seq(), c in -3.0f64..3.0, n in 1usize..20) {
        let lhs = op.apply_cosine(&(&f + &g.scale(c)), n);
        let rhs = &op.apply_cosine(&f, n) + &op.apply_cosine(&g, n).scale(c);
        prop_assert!(same(&lhs, &rhs, 1e-10));
    }

    #[test]
    fn positivity_is_preserved(op in op(), f in seq(), n in 0usize..20) {
        let f = f.abs();
        prop_assert!(op.apply_t(&f, n).is_nonnegative());
        prop_assert!(op.apply_s(&f, n).is_nonnegative());
        prop_assert!(op.apply_cosine(&f, n).is_nonnegative());
    }

    #[test]
    fn real_and_imaginary_parts_commute(op in op(), re in seq(), im in seq(), n in 0usize..15) {
        let z = FinSupSeq::from_pairs(
            re.iter()
                .map(|(x, v)| (x.clone(), Complex64::new(v, 0.0)))
                .chain(im.iter().map(|(x, v)| (x.clone(), Complex64::new(0.0, v)))),
        )
        .unwrap();
        let cz = op.apply_cosine(&z, n);
        prop_assert!(same(&cz.re(), &op.apply_cosine(&re, n), 1e-12));
        prop_assert!(same(&cz.im(), &op.apply_cosine(&im, n), 1e-12));
    }

    #[test]
    fn quantity_scales_with_constant_weight(
        c in 1.01f64..2.0,
        set in prop::collection::btree_set(-6i64..=6, 1..5),
        n in 1usize..15,
    ) {
        let e = FiniteSet::integers(set);
        let g = GroupElement::scalar(1);
        let phi = YoungFunction::paper_entropy();
        let base = orlicz_norm(&phi, &FinSupSeq::indicator(&e)).unwrap();
        let op = WeightedTranslation::new(g, Weight::constant(c)).unwrap();
        let q = criterion_quantity(&op, &phi, &e, n, ProductVariant::Phi).unwrap();
        let qt = criterion_quantity(&op, &phi, &e, n, ProductVariant::PhiTilde).unwrap();
        prop_assert!((q / (c.powi(n as i32) * base) - 1.0).abs() < 1e-9);
        prop_assert!((qt / (c.powi(-(n as i32)) * base) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn quantity_is_monotone_in_e(
        op in op(),
        small in prop::collection::btree_set(-6i64..=6, 0..4),
        extra in prop::collection::btree_set(-6i64..=6, 0..4),
        n in 1usize..20,
    ) {
        let phi = YoungFunction::paper_entropy();
        let e = FiniteSet::integers(small);
        let bigger = e.union(&FiniteSet::integers(extra));
        for v in [ProductVariant::Phi, ProductVariant::PhiTilde] {
            let a = criterion_quantity(&op, &phi, &e, n, v).unwrap();
            let b = criterion_quantity(&op, &phi, &bigger, n, v).unwrap();
            prop_assert!(a <= b * (1.0 + 1e-12));
            prop_assert!(a >= 0.0);
        }
    }
}
