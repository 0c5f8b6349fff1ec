use proptest::prelude::*;
use qc_nilpotent::*;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn rational() -> impl Strategy<Value = Q> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

fn element() -> impl Strategy<Value = NilpotentElement<Q>> {
    (rational(), rational(), rational()).prop_map(|(a, b, c)| NilpotentElement::new(a, b, c))
}

fn f101_element() -> impl Strategy<Value = NilpotentElement<F101>> {
    (0i64..101, 0i64..101, 0i64..101).prop_map(|(a, b, c)| NilpotentElement::new(F101::new(a), F101::new(b), F101::new(c)))
}

fn small_model() -> impl Strategy<Value = GroupModel<Q>> {
    let models = standard_models::<Q>();
    (0..models.len()).prop_map(move |i| models[i].clone())
}

fn cochain(n: usize, module: Module, degree: usize) -> impl Strategy<Value = Cochain<Q>> {
    let len = module.dim() * n.pow(degree as u32);
    prop::collection::vec(rational(), len).prop_map(move |values| Cochain { module, degree, values })
}

fn model_and_cochain(module: Module, degree: usize) -> impl Strategy<Value = (GroupModel<Q>, Cochain<Q>)> {
    small_model().prop_flat_map(move |m| {
        let n = m.order();
        (Just(m), cochain(n, module, degree))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associativity(u in element(), v in element(), w in element()) {
        let l = bch_mul(&bch_mul(&u, &v).unwrap(), &w).unwrap();
        let r = bch_mul(&u, &bch_mul(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn associativity_f101(u in f101_element(), v in f101_element(), w in f101_element()) {
        let l = bch_mul(&bch_mul(&u, &v).unwrap(), &w).unwrap();
        let r = bch_mul(&u, &bch_mul(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn m_lambda_is_a_homomorphism(l in rational(), u in element(), v in element()) {
        let lhs = m_lambda(&l, &bch_mul(&u, &v).unwrap());
        let rhs = bch_mul(&m_lambda(&l, &u), &m_lambda(&l, &v)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn m_lambda_composes(l in rational(), m in rational(), u in element()) {
        prop_assert_eq!(m_lambda(&l, &m_lambda(&m, &u)), m_lambda(&l.mul(&m), &u));
    }

    #[test]
    fn inverse(u in element()) {
        prop_assert_eq!(bch_mul(&u, &u.inverse()).unwrap(), NilpotentElement::zero());
    }

    #[test]
    fn commutator_is_the_bracket(u in element(), v in element()) {
        // u v u⁻¹ v⁻¹ = [u, v].
        let uv = bch_mul(&u, &v).unwrap();
        let comm = bch_mul(&bch_mul(&uv, &u.inverse()).unwrap(), &v.inverse()).unwrap();
        prop_assert_eq!(comm, u.lie(&v));
    }

    #[test]
    fn splitting_is_a_linear_section(u in element(), v in element(), k in rational(), z in rational()) {
        let s = |x: &NilpotentElement<Q>| involution_and_splitting(&x.l1(), x).unwrap();
        let su = s(&u);
        prop_assert_eq!(su.l1(), u.l1());
        prop_assert_eq!(s(&u.add(&NilpotentElement::central(z))), su.clone());
        prop_assert_eq!(s(&u.add(&v)), su.add(&s(&v)));
        prop_assert_eq!(s(&u.scale(&k)), su.scale(&k));
    }

    #[test]
    fn splitting_is_equivariant((m, x) in small_model().prop_flat_map(|m| (Just(m), element()))) {
        let s = involution_and_splitting(&x.l1(), &x).unwrap();
        for g in 0..m.order() {
            let gx = m.act_element(g, &x);
            prop_assert_eq!(involution_and_splitting(&gx.l1(), &gx).unwrap(), m.act_element(g, &s));
        }
    }

    #[test]
    fn group_action_is_by_automorphisms((m, u, v) in small_model().prop_flat_map(|m| (Just(m), element(), element()))) {
        for g in 0..m.order() {
            let lhs = m.act_element(g, &bch_mul(&u, &v).unwrap());
            let rhs = bch_mul(&m.act_element(g, &u), &m.act_element(g, &v)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn d_squared_on_one_cochains((m, a) in model_and_cochain(Module::L1, 1)) {
        prop_assert!(differential(&m, &differential(&m, &a)).is_zero());
    }

    #[test]
    fn d_squared_on_central_one_cochains((m, a) in model_and_cochain(Module::Z, 1)) {
        prop_assert!(differential(&m, &differential(&m, &a)).is_zero());
    }

    #[test]
    fn d_squared_on_zero_cochains((m, a) in model_and_cochain(Module::L1, 0)) {
        prop_assert!(differential(&m, &differential(&m, &a)).is_zero());
    }

    #[test]
    fn cup_is_bilinear(
        (m, a, b, c) in small_model().prop_flat_map(|m| {
            let n = m.order();
            (Just(m), cochain(n, Module::L1, 1), cochain(n, Module::L1, 1), cochain(n, Module::L1, 1))
        }),
        k in rational(),
    ) {
        let left = cup(&m, &a.scale(&k).add(&b).unwrap(), &c).unwrap();
        prop_assert_eq!(left, cup(&m, &a, &c).unwrap().scale(&k).add(&cup(&m, &b, &c).unwrap()).unwrap());
        let right = cup(&m, &c, &a.scale(&k).add(&b).unwrap()).unwrap();
        prop_assert_eq!(right, cup(&m, &c, &a).unwrap().scale(&k).add(&cup(&m, &c, &b).unwrap()).unwrap());
    }

    #[test]
    fn leibniz_rule(
        (m, a, b) in small_model().prop_flat_map(|m| {
            let n = m.order();
            (Just(m), cochain(n, Module::L1, 1), cochain(n, Module::L1, 1))
        }),
    ) {
        // d(a∪b) = da∪b − a∪db for 1-cochains.
        let lhs = differential(&m, &cup(&m, &a, &b).unwrap());
        let da = differential(&m, &a);
        let db = differential(&m, &b);
        // da∪b is a (2,1) cup: [da(g,h), gh·b(k)].
        let rhs = cup(&m, &da, &b).unwrap().sub(&cup(&m, &a, &db).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn solver_recovers_coboundaries((m, u) in model_and_cochain(Module::L1, 1)) {
        let t = differential(&m, &u);
        let sol = solve_coboundary(&m, &t).unwrap();
        prop_assert_eq!(differential(&m, &sol.particular), t);
    }
}

fn wide_rational() -> impl Strategy<Value = Q> {
    (any::<i64>(), 1i64..=i64::MAX, 0u32..3).prop_map(|(n, d, k)| {
        // k = 2 pushes the numerator past one machine word.
        let n = num_bigint::BigInt::from(n) * num_bigint::BigInt::from(10).pow(k * 12);
        Q::new(n, d.into())
    })
}

proptest! {
    #[test]
    fn rational_scalar_ops_match_num_rational(a in wide_rational(), b in wide_rational()) {
        prop_assert_eq!(Scalar::add(&a, &b), &a + &b);
        prop_assert_eq!(Scalar::sub(&a, &b), &a - &b);
        prop_assert_eq!(Scalar::mul(&a, &b), &a * &b);
    }
}
