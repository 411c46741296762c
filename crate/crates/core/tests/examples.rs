//! Worked examples for each public operation, checked exactly where the
//! operation is exact and at the stated tolerance where it is numeric.

use std::collections::BTreeMap;

use nschur::grassmannian::{
    exchange_relations, expansion_lhs, minors, plucker_check, random_instance, theorem1_check, FiniteFrame,
    GOperator, PluckerVector,
};
use nschur::kp::airy::Airy;
use nschur::kp::example::ExampleTau;
use nschur::kp::numeric::{example_kp_residual, example_u, kp_residual_from_u, DEFAULT_FLOOR, DEFAULT_STEP};
use nschur::kp::pipeline::{psi_inverse_pipeline, DEFAULT_K};
use nschur::kp::{hirota_residual, kp_residual, quadric_extraction};
use nschur::linalg::fraction_free_det;
use nschur::nschur::{ms_entry, nschur as eval, stabilization_m};
use nschur::oracle::cofactor_det;
use nschur::psido::{kdv_example, lax_residual, nth_root, PsiDO};
use nschur::random::{random_full_rank, random_matrix, stream_rng};
use nschur::sequences::{enumerate_by_weight, enumerate_skn, partitions_of, subset_label};
use nschur::{
    parse_polynomial, parse_rational_function, schur_polynomial, ExpSign, HModel, Matrix, Partition,
    Polynomial, Rational, RationalFunction, Var, VirtualSequence,
};

fn p(s: &str) -> Polynomial {
    parse_polynomial(s).unwrap()
}

fn rf(s: &str) -> RationalFunction {
    parse_rational_function(s).unwrap()
}

fn q(a: i64) -> Rational {
    Rational::from_integer(a.into())
}

fn seq(prefix: &[i64]) -> VirtualSequence {
    VirtualSequence::new(prefix.to_vec()).unwrap()
}

fn ints(rows: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
}

#[test]
fn poly_arith() {
    assert_eq!(&p("x+1") * &p("x-1"), p("x^2-1"));
    assert_eq!(&p("3*x*y - t") + &Polynomial::zero(), p("3*x*y - t"));
    assert_eq!(p("x+y").pow(2), p("x^2 + 2*x*y + y^2"));
}

#[test]
fn differentiate() {
    assert_eq!(p("x^3").derivative(Var::X), p("3*x^2"));
    assert!(rf("1/x").derivative(Var::X).rf_equal(&rf("-1/x^2")));
    assert!(p("x^3").derivative(Var::Y).is_zero());
}

#[test]
fn substitute() {
    let sub = |src: &str, v: Var, to: &str| rf(src).substitute(&BTreeMap::from([(v, rf(to))])).unwrap();
    assert!(sub("x^2", Var::X, "t+1").rf_equal(&rf("t^2 + 2*t + 1")));
    assert!(sub("x*y", Var::X, "1/t").rf_equal(&rf("y/t")));
    assert!(rf("x*y + 2").substitute(&BTreeMap::new()).unwrap().rf_equal(&rf("x*y + 2")));
}

#[test]
fn rf_equal() {
    assert!(rf("(x^2-1)/(x-1)").rf_equal(&rf("x+1")));
    assert!(!rf("1/x").rf_equal(&rf("1/y")));
    assert!(rf("0/(x+1)").rf_equal(&rf("0/(y^2+3)")));
}

#[test]
fn weight() {
    assert_eq!(VirtualSequence::vacuum().weight(), 0);
    assert_eq!(seq(&[-2, 1]).weight(), 2);
    assert_eq!(seq(&[-1, 0]).weight(), 2);
}

#[test]
fn partition_bijection() {
    for w in 0..=6 {
        for lambda in partitions_of(w) {
            let s = VirtualSequence::from_partition(&lambda);
            assert_eq!(s.weight(), w as i64);
            assert_eq!(s.to_partition(), lambda);
        }
    }
}

#[test]
fn enumerate_skn_examples() {
    let s24 = enumerate_skn(2, 4).unwrap();
    assert_eq!(s24.len(), 6);
    assert!(s24.iter().all(|s| s.get(0) >= -2 && s.get(1) <= 1));
    let s12 = enumerate_skn(1, 2).unwrap();
    assert_eq!(s12.len(), 2);
    assert!(s12.contains(&seq(&[-1])) && s12.contains(&VirtualSequence::vacuum()));
    assert!(enumerate_skn(3, 3).is_err());
}

#[test]
fn subset_labels() {
    let label = |prefix: &[i64]| {
        let s = VirtualSequence::new(prefix.to_vec()).unwrap();
        subset_label(&s, 2, 4).unwrap()
    };
    assert_eq!(label(&[-2, -1]), vec![1, 2]);
    assert_eq!(label(&[0, 1]), vec![3, 4]);
    assert_eq!(label(&[-2, 1]), vec![1, 4]);
}

#[test]
fn enumerate_by_weight_examples() {
    assert_eq!(enumerate_by_weight(0), vec![VirtualSequence::vacuum()]);
    let exact = |w: i64| enumerate_by_weight(w as u32).iter().filter(|s| s.weight() == w).count();
    assert_eq!(exact(4), 5);
    assert_eq!(exact(6), 11);
}

#[test]
fn ms_entries() {
    let s = seq(&[-2, 1]);
    assert_eq!(ms_entry(&s, 2, 0, 0), Some((1, 1, 1)));
    assert_eq!(ms_entry(&s, 2, 1, 1), Some((2, 2, 0)));
    assert_eq!(ms_entry(&VirtualSequence::vacuum(), 3, 4, 1), Some((2, 2, 1)));
}

#[test]
fn stabilization() {
    for n in 1..=4 {
        assert_eq!(stabilization_m(&VirtualSequence::vacuum(), n), 1);
    }
    assert_eq!(stabilization_m(&seq(&[-2, 1]), 2), 1);
    assert_eq!(stabilization_m(&seq(&[-2, 1]), 1), 1);
}

#[test]
fn nschur_formal() {
    for n in 1..=3 {
        let f = eval(&VirtualSequence::vacuum(), &HModel::formal(n).unwrap(), None).unwrap();
        assert!(f.rf_equal(&RationalFunction::one()));
    }
    let s = seq(&[-2, 1]);
    let f1 = eval(&s, &HModel::formal(1).unwrap(), None).unwrap();
    assert!(f1.rf_equal(&rf("h[1,1,2]/h[1,1,0]")));
    let f2 = eval(&s, &HModel::formal(2).unwrap(), None).unwrap();
    let expect = rf("(h[1,1,1]*h[2,2,0] - h[1,2,0]*h[2,1,1])/(h[1,1,0]*h[2,2,0] - h[1,2,0]*h[2,1,0])");
    assert!(f2.rf_equal(&expect));
}

#[test]
fn schur_polynomials() {
    assert_eq!(schur_polynomial(&Partition::empty()), Polynomial::one());
    assert_eq!(schur_polynomial(&Partition::new(vec![1]).unwrap()), Polynomial::var(Var::X));
    let s21 = schur_polynomial(&Partition::new(vec![2, 1]).unwrap());
    let at = s21.eval_rational(|v| if v == Var::X { q(1) } else { q(0) });
    assert_eq!(at, Rational::new(1.into(), 3.into()));
}

#[test]
fn determinants() {
    assert_eq!(fraction_free_det(&Matrix::<Polynomial>::identity(3)), Polynomial::one());
    let m = Matrix::from_rows(vec![vec![p("a1"), p("a2")], vec![p("a3"), p("a4")]]);
    assert_eq!(fraction_free_det(&m), p("a1*a4 - a2*a3"));
    let mut rng = stream_rng(3, 0);
    for _ in 0..5 {
        let r = random_matrix(&mut rng, 4, 4, 9).map(|v| Polynomial::constant(v.clone()));
        assert_eq!(fraction_free_det(&r), cofactor_det(&r));
    }
}

#[test]
fn minors_examples() {
    let id = ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
    let v = minors(&id).unwrap();
    assert!(v.coords().all(|(s, c)| *c == q((s == &vec![1, 2]) as i64)));
    let a = ints(&[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
    let v = minors(&a).unwrap();
    for (s, c) in v.coords() {
        let sub = a.select(&[0, 1], &[s[0] - 1, s[1] - 1]);
        assert_eq!(*c, cofactor_det(&sub));
    }
    let rel = &exchange_relations(2, 4).unwrap()[0];
    let mut rng = stream_rng(5, 0);
    for _ in 0..5 {
        assert_eq!(rel.eval(&minors(&random_full_rank(&mut rng, 2, 4, 7)).unwrap()), q(0));
    }
}

#[test]
fn exchange_relation_counts() {
    let r = exchange_relations(2, 4).unwrap();
    assert_eq!(r.len(), 1);
    let poly = r[0].to_polynomial(|s| Var::Aux((10 * s[0] + s[1]) as u32));
    let expect = p("a12*a34 - a13*a24 + a14*a23");
    assert!(poly == expect || poly == -expect);
    assert!(exchange_relations(1, 5).unwrap().is_empty());
    assert_eq!(exchange_relations(2, 5).unwrap().len(), 5);
}

#[test]
fn plucker_checks() {
    let mut rng = stream_rng(9, 0);
    assert!(plucker_check(&minors(&random_full_rank(&mut rng, 2, 5, 5)).unwrap()));
    let bad = PluckerVector::new(2, 4, vec![q(1), q(0), q(0), q(0), q(0), q(1)]).unwrap();
    assert!(!plucker_check(&bad));
    for i in 0..6 {
        let mut v = vec![q(0); 6];
        v[i] = q(4);
        assert!(plucker_check(&PluckerVector::new(2, 4, v).unwrap()));
    }
}

#[test]
fn plucker_coords_of_frames() {
    let std = FiniteFrame::standard(1);
    assert_eq!(std.plucker_coord(&VirtualSequence::vacuum()), q(1));
    assert_eq!(std.plucker_coord(&seq(&[-1])), q(0));
    let mut rng = stream_rng(11, 0);
    let w = FiniteFrame::random(&mut rng, 1, 2, 2, 5);
    let a = w.dense();
    let v = minors(&a.transpose()).unwrap();
    for s in enumerate_skn(w.r() as i64, (w.r() + w.d()) as i64).unwrap() {
        let label = subset_label(&s, w.r() as i64, (w.r() + w.d()) as i64).unwrap();
        assert_eq!(w.plucker_coord(&s), v.get(&label), "{s:?}");
    }
}

#[test]
fn theorem1_examples() {
    let g = GOperator::new(&HModel::formal(2).unwrap(), Some(2)).unwrap();
    let lhs = expansion_lhs(&g, &FiniteFrame::standard(2)).unwrap();
    assert!(lhs.value.rf_equal(&RationalFunction::one()));
    let r = theorem1_check(&g, &FiniteFrame::standard(2)).unwrap();
    assert!(r.equal && r.rhs.rf_equal(&RationalFunction::one()));
    for n in 1..=2 {
        let model = HModel::formal(n).unwrap();
        for s in enumerate_by_weight(4) {
            let g = GOperator::new(&model, Some(2 + s.weight() as u32)).unwrap();
            let w = FiniteFrame::from_sequence(&s, n);
            let lhs = expansion_lhs(&g, &w).unwrap().value;
            assert!(lhs.rf_equal(&eval(&s, &model, None).unwrap()), "N={n} S={s:?}");
        }
    }
    for i in 0..50 {
        let (g, w) = random_instance(7, i);
        assert!(theorem1_check(&g, &w).unwrap().equal, "instance {i}");
    }
}

#[test]
fn compose_examples() {
    let x = PsiDO::monomial(rf("x"), 0, 6);
    assert_eq!(PsiDO::d(1, 6).compose(&x), PsiDO::from_terms([(1, rf("x")), (0, rf("1"))], 6));
    let f = rf("x^3 + y");
    let got = PsiDO::d(-1, 6).compose(&PsiDO::monomial(f.clone(), 0, 6));
    for k in 0..=5u32 {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let expect = f.derivative_n(Var::X, k).scale(&q(sign));
        assert!(got.coeff(-1 - k as i64).rf_equal(&expect), "d^-{}", k + 1);
    }
    assert_eq!(PsiDO::d(2, 6).compose(&PsiDO::d(-2, 6)), PsiDO::one(6));
}

#[test]
fn plus_parts() {
    let a = PsiDO::from_terms([(1, rf("1")), (-1, rf("x"))], 4);
    assert_eq!(a.plus_part(), PsiDO::d(1, 4));
    let b = PsiDO::from_terms([(3, rf("x^2")), (0, rf("5"))], 4);
    assert_eq!(b.plus_part(), b);
    assert!(PsiDO::d(-1, 4).plus_part().is_zero());
}

#[test]
fn commutators() {
    let x = PsiDO::monomial(rf("x"), 0, 4);
    assert_eq!(PsiDO::d(1, 4).commutator(&x), PsiDO::one(4));
    let a = kdv_example(4);
    assert!(a.commutator(&a).is_zero());
    assert_eq!(PsiDO::d(2, 4).commutator(&x), PsiDO::d(1, 4).scale(&q(2)));
}

#[test]
fn nth_roots() {
    assert_eq!(nth_root(&PsiDO::d(2, 5), 5).unwrap(), PsiDO::d(1, 5));
    let l = PsiDO::from_terms([(1, rf("1")), (-1, rf("x*t + y"))], 5);
    assert_eq!(nth_root(&l, 5).unwrap(), l);
}

#[test]
fn lax_residuals() {
    let l = kdv_example(6);
    assert!(lax_residual(&l, 2, -1).unwrap().is_zero());
    assert!(lax_residual(&l, 3, -1).unwrap().is_zero());
    let q0 = rf("-2*x/(3*t+1)");
    let lhs = q0.derivative(Var::T);
    let rhs = (q0.clone() * q0.derivative(Var::X)).scale(&q(6)) + q0.derivative_n(Var::X, 3);
    assert!(lhs.rf_equal(&rhs.scale(&Rational::new(1.into(), 4.into()))));
    assert!(lhs.rf_equal(&rf("6*x/(3*t+1)^2")));
    for i in 1..=4 {
        assert!(lax_residual(&PsiDO::d(2, 6), i, -1).unwrap().is_zero());
    }
}

#[test]
fn hirota_residuals() {
    assert!(hirota_residual(&Polynomial::one()).is_zero());
    for w in 0..=4 {
        for lambda in partitions_of(w) {
            assert!(hirota_residual(&schur_polynomial(&lambda)).is_zero(), "{lambda:?}");
        }
    }
    assert!(hirota_residual(&p("x")).is_zero());
    assert_eq!(hirota_residual(&p("x^2")), p("3"));
}

#[test]
fn kp_residuals() {
    assert!(kp_residual(&RationalFunction::zero()).is_zero());
    assert!(kp_residual(&rf("-2*x/(3*t+1)")).is_zero());
    assert!(kp_residual(&rf("x")).rf_equal(&rf("3/2")));
}

#[test]
fn quadric() {
    let r = quadric_extraction(ExpSign::Plus).unwrap();
    assert!(r.matched);
    assert_eq!(r.relations_found(), 1);
    assert_eq!(r.relation.to_string(), "pi1*pi6 - pi2*pi5 + pi3*pi4");
}

#[test]
fn airy_values() {
    let airy = Airy::default();
    for x in [-3.0, -1.0, 0.0, 1.0, 3.0] {
        assert!((airy.wronskian(x).unwrap() - std::f64::consts::FRAC_1_PI).abs() < 1e-10);
    }
    assert!(airy.ode_residual(1.5).unwrap().abs() < 1e-9);
}

#[test]
fn example_fields() {
    let ex = ExampleTau::default();
    let [x, y, t] = [0.7, 0.3, 0.1];
    let u1 = example_u(&ex, 1, [x, y, t], DEFAULT_STEP, DEFAULT_FLOOR).unwrap().value;
    assert!((u1 + 2.0 * x / (3.0 * t + 1.0)).abs() < 1e-6);
    let u2 = |h: [f64; 3]| example_u(&ex, 2, [-0.7, 0.5, 0.15], h, DEFAULT_FLOOR).unwrap().value;
    let h = [0.15, 0.15, 0.05];
    assert!((u2(h) - u2(h.map(|v| v / 2.0))).abs() < 1e-5);
    let r = example_kp_residual(&ex, [0.0, 0.0, 0.0, 0.0, 0.0, 1.0], [0.5, 0.2, 0.0], DEFAULT_STEP, DEFAULT_FLOOR);
    assert!(r.unwrap().value.abs() <= 1e-4);
    let lin = kp_residual_from_u(&|p| Ok(p[0]), [0.3, -0.2, 0.1], h).unwrap();
    assert!((lin.value - 1.5).abs() < 1e-4);
}

#[test]
fn pipeline() {
    let points = nschur::kp::numeric::SAMPLE_POINTS;
    let r = psi_inverse_pipeline(&points, DEFAULT_K, 1e-5).unwrap();
    assert!(r.vacuum_is_one);
    assert!(r.bijection.is_some());
    assert!(r.max_relative_spread <= 1e-5);
    assert!(r.k_change < 1e-7);
}
