use nschur::kp::example::ExampleTau;
use nschur::kp::numeric::*;
use nschur::kp::{kp_residual, u_from_tau};
use nschur::random::stream_rng;
use nschur::sequences::partitions_of;
use nschur::{parse_rational_function, schur_polynomial, RationalFunction, Var};
use rand::Rng;

const U_STEP: Point = [0.15, 0.15, 0.05];

fn eval(rf: &RationalFunction, [x, y, t]: Point) -> f64 {
    rf.eval_f64(|v| match v {
        Var::X => x,
        Var::Y => y,
        Var::T => t,
        _ => 0.0,
    })
}

/// Denominator stays away from zero on a box covering the stencil.
fn regular(rf: &RationalFunction, p: Point) -> bool {
    let den = rf.denominator();
    let at = |q: Point| {
        den.eval_f64(|v| match v {
            Var::X => q[0],
            Var::Y => q[1],
            Var::T => q[2],
            _ => 0.0,
        })
    };
    let scale = at(p).abs();
    (-4..=4).all(|i| {
        (-4..=4).all(|j| (-1..=1).all(|k| at([p[0] + 0.1 * i as f64, p[1] + 0.1 * j as f64, p[2] + 0.05 * k as f64]).abs() > 0.2 * scale))
    }) && scale > 1e-3
}

#[test]
fn u2_is_stable_under_step_halving() {
    let ex = ExampleTau::default();
    let p = SAMPLE_POINTS[0];
    let a = example_u(&ex, 2, p, DEFAULT_STEP, DEFAULT_FLOOR).unwrap();
    let b = example_u(&ex, 2, p, DEFAULT_STEP.map(|h| h / 2.0), DEFAULT_FLOOR).unwrap();
    assert!(a.value.is_finite());
    assert!((a.value - b.value).abs() < 1e-5, "{} vs {}", a.value, b.value);
}

#[test]
fn u6_at_listed_point() {
    let ex = ExampleTau::default();
    let mut pi = [0.0; 6];
    pi[5] = 1.0;
    let r = example_kp_residual(&ex, pi, [0.5, 0.2, 0.0], DEFAULT_STEP, DEFAULT_FLOOR).unwrap();
    assert!(r.value.abs() <= 1e-4, "{}", r.value);
}

#[test]
fn all_six_at_sample_points() {
    let ex = ExampleTau::default();
    for i in 0..6 {
        let mut pi = [0.0; 6];
        pi[i] = 1.0;
        for p in SAMPLE_POINTS {
            let r = example_kp_residual(&ex, pi, p, DEFAULT_STEP, DEFAULT_FLOOR).unwrap();
            assert!(r.value.abs() <= 1e-4, "u{} at {p:?}: {}", i + 1, r.value);
        }
    }
}

#[test]
fn linear_field_matches_exact() {
    let u = parse_rational_function("x").unwrap();
    let exact = kp_residual(&u).as_constant().unwrap();
    assert_eq!(exact, nschur::Rational::new(3.into(), 2.into()));
    let f = |p: Point| Ok(eval(&u, p));
    let r = kp_residual_from_u(&f, [0.3, -0.1, 0.2], U_STEP).unwrap();
    assert!((r.value - 1.5).abs() < 1e-4);
}

#[test]
fn numeric_agrees_with_exact_on_rational_fields() {
    let mut fields: Vec<RationalFunction> = ["-2*x/(3*t+1)", "x^2/(2+t)", "y*x/(1+x^2)", "(x*y + t)/(3 + y^2)"]
        .iter()
        .map(|s| parse_rational_function(s).unwrap())
        .collect();
    for n in 1..=3 {
        for lambda in partitions_of(n) {
            fields.push(u_from_tau(&schur_polynomial(&lambda)).unwrap());
        }
    }
    let mut rng = stream_rng(nschur::random::DEFAULT_SEED, 0);
    for u in &fields {
        let exact = kp_residual(u);
        let mut checked = 0;
        while checked < 10 {
            let p: Point = [rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5), rng.gen_range(0.0..0.5)];
            if !regular(u, p) {
                continue;
            }
            let f = |q: Point| Ok(eval(u, q));
            let r = kp_residual_from_u(&f, p, U_STEP).unwrap();
            let e = eval(&exact, p);
            assert!((r.value - e).abs() < 1e-5, "u = {u}, p = {p:?}: numeric {} exact {e}", r.value);
            checked += 1;
        }
    }
}

#[test]
fn separation_exceeds_hundredfold() {
    let ex = ExampleTau::default();
    let s = quadric_separation(&ex, &[6, 4, 5, 2, 3, 1], &SAMPLE_POINTS, 10, nschur::random::DEFAULT_SEED, DEFAULT_STEP);
    assert!(s.min_ratio >= 100.0, "{s:?}");
}
