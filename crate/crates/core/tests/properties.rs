use nschur::grassmannian::{minors, plucker_check};
use nschur::nschur::{grading_weight, nschur as eval, stabilization_m};
use nschur::psido::{random_monic, root_round_trip, PsiDO};
use nschur::random::{random_full_rank, random_matrix, stream_rng};
use nschur::sequences::{enumerate_by_weight, Partition};
use nschur::{HModel, Monomial, Polynomial, Rational, RationalFunction, Var, VirtualSequence};
use proptest::prelude::*;

const VARS: [Var; 3] = [Var::X, Var::Y, Var::T];

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-5i64..=5, 1i64..=3, 0u32..3, 0u32..3, 0u32..2), 0..5).prop_map(|terms| {
        Polynomial::from_terms(terms.into_iter().map(|(a, b, ex, ey, et)| {
            (Monomial::from_powers([(Var::X, ex), (Var::Y, ey), (Var::T, et)]), q(a, b))
        }))
    })
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn rf() -> impl Strategy<Value = RationalFunction> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RationalFunction::new(n, &d).unwrap())
}

fn operator() -> impl Strategy<Value = PsiDO> {
    prop::collection::vec((-2i64..=2, poly()), 1..4)
        .prop_map(|terms| PsiDO::from_terms(terms.into_iter().map(|(a, p)| (a, RationalFunction::from_poly(p))), 3))
}

fn sequence(max_weight: u32) -> impl Strategy<Value = VirtualSequence> {
    let all = enumerate_by_weight(max_weight);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Polynomial::zero());
    }

    #[test]
    fn leibniz_rule(a in rf(), b in rf(), i in 0usize..3) {
        let v = VARS[i];
        let lhs = (a.clone() * b.clone()).derivative(v);
        let rhs = a.derivative(v) * b.clone() + a * b.derivative(v);
        prop_assert!(lhs.rf_equal(&rhs));
    }

    #[test]
    fn rf_equal_is_an_equivalence(a in poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let x = RationalFunction::new(a.clone(), &b).unwrap();
        let y = RationalFunction::new(&a * &c, &(&b * &c)).unwrap();
        prop_assert!(x.rf_equal(&x));
        prop_assert!(x.rf_equal(&y) && y.rf_equal(&x));
        prop_assert!((x.clone() - y.clone()).is_zero());
    }

    #[test]
    fn json_round_trips(p in poly(), r in rf(), l in operator()) {
        prop_assert_eq!(Polynomial::from_json(&p.to_json()).unwrap(), p);
        prop_assert!(RationalFunction::from_json(&r.to_json()).unwrap().rf_equal(&r));
        prop_assert_eq!(PsiDO::from_json(&l.to_json()).unwrap(), l);
    }

    #[test]
    fn composition_is_associative(a in operator(), b in operator(), c in operator()) {
        // Orders are at most 2, so products at depth 9 are exact through d^-3.
        let (a, b, c) = (a.with_depth(9), b.with_depth(9), c.with_depth(9));
        prop_assert_eq!(a.compose(&b).compose(&c).with_depth(3), a.compose(&b.compose(&c)).with_depth(3));
    }

    #[test]
    fn m_independence(seed in any::<u64>(), s in sequence(4), n in 1u32..=3) {
        let mut rng = stream_rng(seed, 0);
        let mut hs = vec![random_full_rank(&mut rng, n as usize, n as usize, 3)];
        hs.extend((0..3).map(|_| random_matrix(&mut rng, n as usize, n as usize, 3)));
        let model = HModel::from_matrices(&hs).unwrap();
        let m = stabilization_m(&s, n);
        let base = eval(&s, &model, Some(m)).unwrap();
        prop_assert!(eval(&s, &model, Some(m + 1)).unwrap().rf_equal(&base));
    }

    #[test]
    fn weight_homogeneity(s in sequence(4), n in 1u32..=2) {
        let f = eval(&s, &HModel::formal(n).unwrap(), None).unwrap();
        let w = |p: &Polynomial| -> Vec<i64> {
            let mut v: Vec<i64> = p.terms()
                .map(|(m, _)| m.powers().iter().map(|&(x, e)| grading_weight(x, n) * e as i64).sum())
                .collect();
            v.dedup();
            v
        };
        let (wn, wd) = (w(f.numerator()), w(&f.denominator()));
        prop_assert_eq!(wn.len(), 1);
        prop_assert_eq!(wd.len(), 1);
        prop_assert_eq!(wn[0] - wd[0], s.weight());
    }

    #[test]
    fn schur_case_is_polynomial(mut parts in prop::collection::vec(1u32..=3, 0..3)) {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let lambda = Partition::new(parts).unwrap();
        let s = VirtualSequence::from_partition(&lambda);
        let f = eval(&s, &HModel::exponential(Default::default(), lambda.size()), None).unwrap();
        prop_assert!(f.is_polynomial());
    }

    #[test]
    fn plucker_annihilates_minors(seed in any::<u64>(), n in 2usize..=6, k_pick in 0usize..5) {
        let k = 1 + k_pick % (n - 1);
        let mut rng = stream_rng(seed, 1);
        let a = random_full_rank(&mut rng, k, n, 5);
        prop_assert!(plucker_check(&minors(&a).unwrap()));
    }

    #[test]
    fn nth_root_round_trip(seed in any::<u64>(), n in 2i64..=3) {
        let mut rng = stream_rng(seed, 2);
        prop_assert!(root_round_trip(&random_monic(&mut rng, n, 3), 3).unwrap());
    }
}
