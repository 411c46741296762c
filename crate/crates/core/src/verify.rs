//! Verification suites shared by the command-line front end and the
//! acceptance tests. Every suite returns a [`Report`] whose JSON form is a
//! pure function of the [`RunConfig`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{parse_rational_function, Polynomial, RationalFunction, Var};
use crate::error::{Error, Result};
use crate::grassmannian::{minors, plucker_check, random_instance, theorem1_check, FiniteFrame, GOperator};
use crate::kp::airy::Airy;
use crate::kp::example::ExampleTau;
use crate::kp::numeric::{self, SAMPLE_POINTS};
use crate::kp::pipeline::{psi_inverse_pipeline, DEFAULT_K};
use crate::kp::{hirota_residual, kp_residual, pin_exponential_sign, quadric_extraction, u_from_tau};
use crate::linalg::Matrix;
use crate::nschur::{grading_weight, nschur, stabilization_m, ExpSign, HModel};
use crate::oracle::jacobi_trudi;
use crate::psido::{kdv_example, lax_residual, pin_lax_sign, random_monic, root_round_trip, DEFAULT_DEPTH, LAX_SIGN};
use crate::random::{random_full_rank, random_matrix, small_rational, stream_rng, DEFAULT_SEED};
use crate::sequences::{enumerate_by_weight, partitions_of, VirtualSequence};

pub const SCHEMA_VERSION: u32 = 1;

/// Bijection from `S_{2,4}` positions to `tau_i` found by the pipeline;
/// used to place random Pluecker vectors for the separation test.
pub const EXAMPLE_BIJECTION: [usize; 6] = [6, 4, 5, 2, 3, 1];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Schur,
    Theorem1,
    Quadric,
    Lax,
    AiryExample,
    Pipeline,
    Properties,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Schur, Suite::Theorem1, Suite::Quadric, Suite::Lax, Suite::AiryExample, Suite::Pipeline, Suite::Properties];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Schur => "schur",
            Suite::Theorem1 => "theorem1",
            Suite::Quadric => "quadric",
            Suite::Lax => "lax",
            Suite::AiryExample => "airy-example",
            Suite::Pipeline => "pipeline",
            Suite::Properties => "properties",
        }
    }

    fn default_tolerance(self) -> f64 {
        match self {
            Suite::AiryExample => 1e-4,
            Suite::Pipeline => 1e-5,
            _ => 0.0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    /// Overrides the suite's numeric tolerance.
    pub tolerance: Option<f64>,
    /// Overrides the suite's instance count.
    pub count: Option<usize>,
    pub depth: i64,
    pub k: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: DEFAULT_SEED, tolerance: None, count: None, depth: DEFAULT_DEPTH, k: DEFAULT_K }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(t) = self.tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidModel(format!("tolerance must be positive, got {t}")));
            }
        }
        if self.depth < 1 {
            return Err(Error::InvalidModel(format!("depth must be at least 1, got {}", self.depth)));
        }
        if self.k < 1 {
            return Err(Error::InvalidModel("K must be at least 1".into()));
        }
        Ok(())
    }

    fn count_or(&self, default: usize) -> usize {
        self.count.unwrap_or(default)
    }
}

/// One named check inside a suite.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

impl Check {
    fn new(name: &str, passed: bool, detail: Value) -> Self {
        Check { name: name.to_string(), passed, detail }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub check: String,
    pub status: String,
    pub checks: Vec<Check>,
    pub residuals: Vec<f64>,
    pub tolerance: f64,
    pub seed: u64,
    pub convention_flags: Value,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let mut out = format!("suite {}: {}\n", self.check, self.status);
        for c in &self.checks {
            out.push_str(&format!("  [{}] {}\n", if c.passed { "pass" } else { "FAIL" }, c.name));
        }
        out
    }
}

pub fn convention_flags() -> Value {
    json!({
        "exponential_sign": ExpSign::default(),
        "lax_sign": LAX_SIGN,
        "weight": "sum_j (j - s_j)",
        "stabilization": "mN >= prefix length",
    })
}

pub fn run(suite: Suite, cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let tolerance = cfg.tolerance.unwrap_or(suite.default_tolerance());
    let mut residuals = Vec::new();
    let checks = match suite {
        Suite::Schur => schur_checks()?,
        Suite::Theorem1 => theorem1_checks(cfg)?,
        Suite::Quadric => quadric_checks(cfg)?,
        Suite::Lax => lax_checks(cfg)?,
        Suite::AiryExample => airy_checks(cfg, tolerance, &mut residuals)?,
        Suite::Pipeline => pipeline_checks(cfg, tolerance, &mut residuals)?,
        Suite::Properties => property_checks(cfg)?,
    };
    let status = if checks.iter().all(|c| c.passed) { "pass" } else { "fail" };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        check: suite.name().to_string(),
        status: status.to_string(),
        checks,
        residuals,
        tolerance,
        seed: cfg.seed,
        convention_flags: convention_flags(),
    })
}

fn seq(prefix: &[i64]) -> VirtualSequence {
    VirtualSequence::new(prefix.to_vec()).expect("literal sequence")
}

// ---------------------------------------------------------------- schur

pub fn check_vacuum() -> Result<Check> {
    let ok = (1..=3).map(|n| nschur(&VirtualSequence::vacuum(), &HModel::formal(n)?, None)).collect::<Result<Vec<_>>>()?;
    Ok(Check::new("vacuum", ok.iter().all(|f| *f == RationalFunction::one()), json!({ "N": [1, 2, 3] })))
}

pub fn check_small_formulas() -> Result<Check> {
    let s = seq(&[-2]);
    let f1 = nschur(&s, &HModel::formal(1)?, None)?;
    let f2 = nschur(&s, &HModel::formal(2)?, None)?;
    let e1 = parse_rational_function("h[1,1,2]/h[1,1,0]")?;
    let e2 = parse_rational_function(
        "(h[1,1,1]*h[2,2,0] - h[1,2,0]*h[2,1,1])/(h[1,1,0]*h[2,2,0] - h[1,2,0]*h[2,1,0])",
    )?;
    Ok(Check::new(
        "two_box_formulas",
        f1.rf_equal(&e1) && f2.rf_equal(&e2),
        json!({ "f1": f1.to_string(), "f2": f2.to_string() }),
    ))
}

pub fn check_jacobi_trudi(max_size: u32) -> Result<Check> {
    let sign = ExpSign::default();
    let parts: Vec<_> = (0..=max_size).flat_map(partitions_of).collect();
    let model = HModel::exponential(sign, max_size);
    let results: Vec<Result<bool>> = parts
        .par_iter()
        .map(|l| {
            let f = nschur(&VirtualSequence::from_partition(l), &model, None)?;
            Ok(f.as_polynomial() == Some(&jacobi_trudi(l, sign)))
        })
        .collect();
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    let failures: Vec<String> =
        parts.iter().zip(&results).filter(|(_, ok)| !**ok).map(|(l, _)| format!("{:?}", l.parts())).collect();
    Ok(Check::new(
        "jacobi_trudi",
        failures.is_empty(),
        json!({ "max_size": max_size, "partitions": parts.len(), "failures": failures }),
    ))
}

pub fn check_hirota(max_size: u32) -> Result<Check> {
    let sign = ExpSign::default();
    let model = HModel::exponential(sign, max_size);
    let parts: Vec<_> = (0..=max_size).flat_map(partitions_of).collect();
    let results: Vec<Result<bool>> = parts
        .par_iter()
        .map(|l| {
            let f = nschur(&VirtualSequence::from_partition(l), &model, None)?;
            let p = f.as_polynomial().cloned().ok_or(Error::SingularH0)?;
            Ok(hirota_residual(&p).is_zero())
        })
        .collect();
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    let pinned = pin_exponential_sign(max_size);
    Ok(Check::new(
        "hirota_vanishing",
        results.iter().all(|&b| b) && pinned.contains(&sign),
        json!({ "max_size": max_size, "partitions": parts.len(), "passing_signs": pinned }),
    ))
}

pub fn check_u_from_schur(max_size: u32) -> Result<Check> {
    let mut bad = Vec::new();
    for n in 1..=max_size {
        for l in partitions_of(n) {
            let u = u_from_tau(&crate::nschur::schur_polynomial(&l))?;
            if !kp_residual(&u).is_zero() {
                bad.push(format!("{:?}", l.parts()));
            }
        }
    }
    Ok(Check::new("kp_from_schur", bad.is_empty(), json!({ "max_size": max_size, "failures": bad })))
}

fn schur_checks() -> Result<Vec<Check>> {
    Ok(vec![check_vacuum()?, check_small_formulas()?, check_jacobi_trudi(6)?, check_hirota(4)?, check_u_from_schur(3)?])
}

// ------------------------------------------------------------- theorem1

pub fn check_theorem1_random(seed: u64, count: usize) -> Result<Check> {
    let reports: Vec<Result<(bool, Value)>> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let (g, w) = random_instance(seed, i);
            let rep = theorem1_check(&g, &w)?;
            Ok((rep.equal, json!({ "index": i, "N": g.n(), "K": g.k_max(), "r": w.r(), "d": w.d(), "M_used": rep.m_used })))
        })
        .collect();
    let reports = reports.into_iter().collect::<Result<Vec<_>>>()?;
    let equal = reports.iter().filter(|r| r.0).count();
    Ok(Check::new(
        "theorem1_random",
        equal == count,
        json!({ "count": count, "equal": equal, "instances": reports.into_iter().map(|r| r.1).collect::<Vec<_>>() }),
    ))
}

pub fn check_theorem1_sequences(seed: u64, max_weight: u32) -> Result<Check> {
    let mut total = 0;
    let mut bad = Vec::new();
    for n in 1..=3u32 {
        let mut rng = stream_rng(seed, 1_000 + n as u64);
        let g = GOperator::random(&mut rng, n, 2, 4);
        let seqs = enumerate_by_weight(max_weight);
        let results: Vec<Result<bool>> = seqs
            .par_iter()
            .map(|s| Ok(theorem1_check(&g, &FiniteFrame::from_sequence(s, n))?.equal))
            .collect();
        for (s, r) in seqs.iter().zip(results) {
            total += 1;
            if !r? {
                bad.push(format!("N={n} S={}", s.literal()));
            }
        }
    }
    Ok(Check::new("theorem1_sequences", bad.is_empty(), json!({ "max_weight": max_weight, "instances": total, "failures": bad })))
}

fn theorem1_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    Ok(vec![check_theorem1_random(cfg.seed, cfg.count_or(50))?, check_theorem1_sequences(cfg.seed, 4)?])
}

// -------------------------------------------------------------- quadric

fn combination_with(values: &[BigRational]) -> Result<Polynomial> {
    let seqs = crate::sequences::enumerate_skn(2, 4)?;
    let model = HModel::exponential(ExpSign::default(), 4);
    let mut tau = Polynomial::zero();
    for (s, c) in seqs.iter().zip(values) {
        let f = nschur(s, &model, None)?;
        tau += &f.as_polynomial().cloned().ok_or(Error::SingularH0)?.scale(c);
    }
    Ok(tau)
}

pub fn check_quadric() -> Result<Check> {
    let rep = quadric_extraction(ExpSign::default())?;
    let expected = "p12*p34 - p13*p24 + p14*p23";
    let ok = rep.matched && rep.relation_form.to_string() == expected;
    Ok(Check::new("quadric_extraction", ok, rep.to_json()))
}

pub fn check_quadric_instances(seed: u64, count: usize) -> Result<Check> {
    let mut single_ok = true;
    for pos in 0..6 {
        let mut v = vec![BigRational::zero(); 6];
        v[pos] = small_rational(&mut stream_rng(seed, pos as u64), 5) + BigRational::from_integer(6.into());
        single_ok &= hirota_residual(&combination_with(&v)?).is_zero();
    }
    let mut minors_ok = true;
    for i in 0..count {
        let mut rng = stream_rng(seed, 100 + i as u64);
        let a = random_full_rank(&mut rng, 2, 4, 4);
        minors_ok &= hirota_residual(&combination_with(&minors(&a)?.values())?).is_zero();
    }
    Ok(Check::new(
        "quadric_instances",
        single_ok && minors_ok,
        json!({ "single_coordinate": single_ok, "random_minors": minors_ok, "count": count }),
    ))
}

fn quadric_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    Ok(vec![check_quadric()?, check_quadric_instances(cfg.seed, cfg.count_or(5))?])
}

// ------------------------------------------------------------------ lax

pub fn check_lax(depth: i64) -> Result<Check> {
    let l = kdv_example(depth);
    let mut flows = BTreeMap::new();
    for i in [2u32, 3] {
        flows.insert(i.to_string(), lax_residual(&l, i, LAX_SIGN)?.is_zero());
    }
    let pinned = pin_lax_sign(&l, 3)?;
    let ok = flows.values().all(|&b| b) && pinned == Some(LAX_SIGN);
    Ok(Check::new("lax_flows", ok, json!({ "depth": depth, "flows": flows, "pinned_sign": pinned })))
}

pub fn check_roots(seed: u64, count: usize, depth: i64) -> Result<Check> {
    let results: Vec<Result<bool>> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, 200 + i);
            let n = rng.gen_range(2..=3);
            root_round_trip(&random_monic(&mut rng, n, depth), depth)
        })
        .collect();
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    let good = results.iter().filter(|&&b| b).count();
    Ok(Check::new("root_round_trip", good == count, json!({ "count": count, "depth": depth, "exact": good })))
}

pub fn check_kp_u1() -> Result<Check> {
    let u = parse_rational_function("-2*x/(3*t+1)")?;
    let r = kp_residual(&u);
    Ok(Check::new("kp_u1", r.is_zero(), json!({ "u": u.to_string(), "residual": r.to_string() })))
}

fn lax_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    Ok(vec![check_lax(cfg.depth)?, check_roots(cfg.seed, cfg.count_or(20), cfg.depth)?, check_kp_u1()?])
}

// --------------------------------------------------------- airy-example

pub fn check_wronskian(tolerance: f64) -> Result<Check> {
    let airy = Airy::default();
    let mut worst = 0.0f64;
    for k in -20..=20 {
        let x = k as f64 * 0.25;
        worst = worst.max((airy.wronskian(x)? - std::f64::consts::FRAC_1_PI).abs());
    }
    let ode = airy.ode_residual(1.5)?.abs();
    let ai0 = airy.eval(0.0f64)?.ai;
    let ai0_err = (ai0 - 0.355_028_053_887_817_2).abs();
    Ok(Check::new(
        "airy",
        worst <= tolerance && ode <= 1e-9 && ai0_err <= 1e-10,
        json!({ "max_wronskian_error": worst, "ode_residual": ode, "ai0": ai0 }),
    ))
}

pub fn check_example_residuals(tolerance: f64, residuals: &mut Vec<f64>) -> Result<Check> {
    let ex = ExampleTau::default();
    let jobs: Vec<(usize, usize)> = (0..6).flat_map(|i| (0..SAMPLE_POINTS.len()).map(move |p| (i, p))).collect();
    let values: Vec<Result<numeric::Estimate>> = jobs
        .par_iter()
        .map(|&(i, p)| {
            let mut pi = [0.0; 6];
            pi[i] = 1.0;
            numeric::example_kp_residual(&ex, pi, SAMPLE_POINTS[p], numeric::DEFAULT_STEP, numeric::DEFAULT_FLOOR)
        })
        .collect();
    let values = values.into_iter().collect::<Result<Vec<_>>>()?;
    let worst = values.iter().map(|e| e.value.abs()).fold(0.0, f64::max);
    residuals.extend(values.iter().map(|e| e.value));
    let per_u: Vec<Value> = (0..6)
        .map(|i| {
            let r: Vec<f64> = values[i * SAMPLE_POINTS.len()..(i + 1) * SAMPLE_POINTS.len()].iter().map(|e| e.value).collect();
            json!({ "u": i + 1, "residuals": r })
        })
        .collect();
    Ok(Check::new(
        "kp_residuals",
        worst <= tolerance,
        json!({ "max_residual": worst, "points": SAMPLE_POINTS, "step": numeric::DEFAULT_STEP, "per_u": per_u }),
    ))
}

pub fn check_separation(seed: u64, count: usize) -> Result<Check> {
    let ex = ExampleTau::default();
    let s = numeric::quadric_separation(&ex, &EXAMPLE_BIJECTION, &SAMPLE_POINTS, count, seed, numeric::DEFAULT_STEP);
    Ok(Check::new(
        "quadric_separation",
        s.min_ratio >= 100.0,
        json!({ "count": count, "min_ratio": s.min_ratio, "points": s.points }),
    ))
}

fn airy_checks(cfg: &RunConfig, tolerance: f64, residuals: &mut Vec<f64>) -> Result<Vec<Check>> {
    Ok(vec![
        check_wronskian(1e-10)?,
        check_example_residuals(tolerance, residuals)?,
        check_separation(cfg.seed, cfg.count_or(10))?,
    ])
}

// -------------------------------------------------------------- pipeline

pub fn check_pipeline(k: usize, tolerance: f64, residuals: &mut Vec<f64>) -> Result<Check> {
    let rep = psi_inverse_pipeline(&SAMPLE_POINTS, k, tolerance)?;
    residuals.extend(rep.pairs.iter().map(|p| p.relative_spread));
    Ok(Check::new("pipeline", rep.passes(tolerance, 1e-7), rep.to_json()))
}

fn pipeline_checks(cfg: &RunConfig, tolerance: f64, residuals: &mut Vec<f64>) -> Result<Vec<Check>> {
    Ok(vec![check_pipeline(cfg.k, tolerance, residuals)?])
}

// ------------------------------------------------------------ properties

fn random_sequence<R: Rng>(rng: &mut R, max_weight: u32) -> VirtualSequence {
    enumerate_by_weight(max_weight).choose(rng).cloned().expect("nonempty")
}

fn random_model<R: Rng>(rng: &mut R, n: u32, k_max: u32) -> HModel {
    let mut hs = vec![random_full_rank(rng, n as usize, n as usize, 4)];
    hs.extend((1..=k_max).map(|_| random_matrix(rng, n as usize, n as usize, 4)));
    HModel::from_matrices(&hs).expect("invertible H_0")
}

pub fn check_m_independence(seed: u64, count: usize) -> Result<Check> {
    let results: Vec<Result<bool>> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, 300 + i);
            let n = rng.gen_range(1..=3);
            let s = random_sequence(&mut rng, 5);
            let model = random_model(&mut rng, n, 3);
            let m = stabilization_m(&s, n);
            let base = nschur(&s, &model, Some(m))?;
            Ok((1..=2).map(|e| nschur(&s, &model, Some(m + e))).collect::<Result<Vec<_>>>()?.iter().all(|f| f.rf_equal(&base)))
        })
        .collect();
    let good = results.into_iter().collect::<Result<Vec<_>>>()?.into_iter().filter(|&b| b).count();
    Ok(Check::new("m_independence", good == count, json!({ "count": count, "equal": good })))
}

fn weights(p: &Polynomial, n: u32) -> std::collections::BTreeSet<i64> {
    p.terms().map(|(m, _)| m.powers().iter().map(|&(v, e)| grading_weight(v, n) * e as i64).sum()).collect()
}

pub fn check_homogeneity(max_weight: u32, max_n: u32) -> Result<Check> {
    let cases: Vec<(u32, VirtualSequence)> =
        (1..=max_n).flat_map(|n| enumerate_by_weight(max_weight).into_iter().map(move |s| (n, s))).collect();
    let results: Vec<Result<bool>> = cases
        .par_iter()
        .map(|(n, s)| {
            let f = nschur(s, &HModel::formal(*n)?, None)?;
            let (wn, wd) = (weights(f.numerator(), *n), weights(&f.denominator(), *n));
            Ok(wn.len() == 1 && wd.len() == 1 && wn.first().unwrap() - wd.first().unwrap() == s.weight())
        })
        .collect();
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    let bad: Vec<String> =
        cases.iter().zip(&results).filter(|(_, ok)| !**ok).map(|((n, s), _)| format!("N={n} S={}", s.literal())).collect();
    Ok(Check::new(
        "weight_homogeneity",
        bad.is_empty(),
        json!({ "max_weight": max_weight, "max_N": max_n, "instances": cases.len(), "failures": bad }),
    ))
}

/// Random integer matrix of determinant 1: a product of unit triangular factors.
fn unimodular<R: Rng>(rng: &mut R, n: usize) -> Matrix<BigRational> {
    let int = |rng: &mut R| BigRational::from_integer(rng.gen_range(-3i64..=3).into());
    let lower = Matrix::from_fn(n, n, |r, c| if r == c { BigRational::one() } else if r > c { int(rng) } else { BigRational::zero() });
    let upper = Matrix::from_fn(n, n, |r, c| if r == c { BigRational::one() } else if r < c { int(rng) } else { BigRational::zero() });
    lower.mul(&upper)
}

pub fn check_polynomiality(seed: u64, count: usize) -> Result<Check> {
    let results: Vec<Result<bool>> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, 400 + i);
            let n = rng.gen_range(1..=3u32);
            let s = random_sequence(&mut rng, 4);
            let h0 = unimodular(&mut rng, n as usize);
            let mut entries = BTreeMap::new();
            for a in 0..n {
                for b in 0..n {
                    entries.insert((a + 1, b + 1, 0), RationalFunction::constant(h0[(a as usize, b as usize)].clone()));
                    for k in 1..=2 {
                        entries.insert((a + 1, b + 1, k), RationalFunction::var(Var::h(a + 1, b + 1, k)));
                    }
                }
            }
            Ok(nschur(&s, &HModel::assigned(n, entries)?, None)?.is_polynomial())
        })
        .collect();
    let good = results.into_iter().collect::<Result<Vec<_>>>()?.into_iter().filter(|&b| b).count();
    Ok(Check::new("polynomiality", good == count, json!({ "count": count, "polynomial": good })))
}

pub fn check_plucker(seed: u64, per_shape: usize, max_n: usize) -> Result<Check> {
    let mut shapes = Vec::new();
    for n in 2..=max_n {
        for k in 1..n {
            shapes.push((k, n));
        }
    }
    let results: Vec<Result<bool>> = shapes
        .par_iter()
        .map(|&(k, n)| {
            (0..per_shape).try_fold(true, |acc, i| {
                let mut rng = stream_rng(seed, 10_000 + (k * 100 + n) as u64 * 1_000 + i as u64);
                Ok(acc && plucker_check(&minors(&random_full_rank(&mut rng, k, n, 5))?))
            })
        })
        .collect();
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    let bad: Vec<String> = shapes.iter().zip(&results).filter(|(_, ok)| !**ok).map(|((k, n), _)| format!("({k},{n})")).collect();
    Ok(Check::new(
        "plucker_annihilation",
        bad.is_empty(),
        json!({ "per_shape": per_shape, "shapes": shapes.len(), "failures": bad }),
    ))
}

fn property_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    Ok(vec![
        check_m_independence(cfg.seed, cfg.count_or(30))?,
        check_homogeneity(5, 3)?,
        check_polynomiality(cfg.seed, cfg.count_or(10))?,
        check_plucker(cfg.seed, cfg.count_or(25), 6)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig { tolerance: Some(-1.0), ..RunConfig::default() }.validate().is_err());
        assert!(RunConfig { depth: 0, ..RunConfig::default() }.validate().is_err());
        assert!(RunConfig::default().validate().is_ok());
    }

    #[test]
    fn lax_suite_passes() {
        let cfg = RunConfig { count: Some(3), ..RunConfig::default() };
        let rep = run(Suite::Lax, &cfg).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
        assert_eq!(rep.to_json()["schema_version"], 1);
    }

    #[test]
    fn unimodular_has_det_one() {
        let mut rng = stream_rng(1, 1);
        let m = unimodular(&mut rng, 3);
        assert_eq!(crate::linalg::gauss_det(&m), BigRational::one());
    }
}
