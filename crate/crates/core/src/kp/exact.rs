//! Exact KP checks on polynomial tau-functions and rational fields, with
//! `x = t1`, `y = t2`, `t = t3`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::algebra::{Monomial, Polynomial, RationalFunction, Var};
use crate::error::Result;
use crate::grassmannian::{exchange_relations, k_subsets, QuadraticForm};
use crate::nschur::{nschur, schur_polynomial_signed, ExpSign, HModel};
use crate::sequences::{enumerate_skn, partitions_of, subset_label, VirtualSequence};

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// `3/4 t t_yy - 3/4 t_y^2 + t_x t_t - t t_xt + 3/4 t_xx^2 - t_x t_xxx + 1/4 t t_xxxx`.
pub fn hirota_residual(tau: &Polynomial) -> Polynomial {
    let (x, y, t) = (Var::X, Var::Y, Var::T);
    let tx = tau.derivative(x);
    let txx = tx.derivative(x);
    let txxx = txx.derivative(x);
    let txxxx = txxx.derivative(x);
    let ty = tau.derivative(y);
    let tyy = ty.derivative(y);
    let tt = tau.derivative(t);
    let txt = tx.derivative(t);
    let mut r = (tau * &tyy).scale(&q(3, 4));
    r -= &(&ty * &ty).scale(&q(3, 4));
    r += &(&tx * &tt);
    r -= &(tau * &txt);
    r += &(&txx * &txx).scale(&q(3, 4));
    r -= &(&tx * &txxx);
    r += &(tau * &txxxx).scale(&q(1, 4));
    r
}

/// `3/4 u_yy - (u_t - 1/4 (6 u u_x + u_xxx))_x`.
pub fn kp_residual(u: &RationalFunction) -> RationalFunction {
    let (x, y, t) = (Var::X, Var::Y, Var::T);
    let ux = u.derivative(x);
    let uxxx = ux.derivative_n(x, 2);
    let inner = u.derivative(t) - (u * &ux).scale(&q(3, 2)) - uxxx.scale(&q(1, 4));
    u.derivative_n(y, 2).scale(&q(3, 4)) - inner.derivative(x)
}

/// `u = 2 (log tau)_xx`.
pub fn u_from_tau(tau: &Polynomial) -> Result<RationalFunction> {
    let tx = tau.derivative(Var::X);
    let txx = tx.derivative(Var::X);
    let num = (tau * &txx - &tx * &tx).scale(&q(2, 1));
    RationalFunction::with_factors(num, &[(tau.clone(), 2)])
}

/// Exponential-model signs under which every Schur polynomial with
/// `|lambda| <= max_size` has vanishing Hirota residual.
pub fn pin_exponential_sign(max_size: u32) -> Vec<ExpSign> {
    [ExpSign::Plus, ExpSign::Minus]
        .into_iter()
        .filter(|&sign| {
            (0..=max_size).all(|n| {
                partitions_of(n).iter().all(|l| hirota_residual(&schur_polynomial_signed(l, sign)).is_zero())
            })
        })
        .collect()
}

/// Outcome of extracting the quadric from the Hirota residual of
/// `sum_S pi_S f_S^1` over `S_{2,4}`.
#[derive(Clone, Debug)]
pub struct QuadricReport {
    /// The Gr(2,4) exchange relation as a polynomial in `pi1..pi6`.
    pub relation: Polynomial,
    pub relation_form: QuadraticForm,
    /// Nonzero coefficients of the residual, one per time monomial.
    pub coefficients: BTreeMap<Monomial, Polynomial>,
    /// Coefficient divided by the relation, when a constant.
    pub scalars: BTreeMap<Monomial, Option<BigRational>>,
    pub matched: bool,
    pub sign: ExpSign,
}

impl QuadricReport {
    pub fn relations_found(&self) -> usize {
        self.coefficients.len()
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coefficients
            .iter()
            .map(|(m, c)| {
                let scalar = self.scalars.get(m).cloned().flatten().map(|s| s.to_string());
                json!({ "monomial": Polynomial::term(BigRational::from_integer(1.into()), m.clone()).to_string(),
                        "coefficient": c.to_string(), "scalar": scalar })
            })
            .collect();
        json!({
            "relation": self.relation_form.to_string(),
            "relation_pi": self.relation.to_string(),
            "relations_found": self.relations_found(),
            "match": self.matched,
            "sign": self.sign,
            "coefficients": coeffs,
        })
    }
}

/// `pi_S` is `pi{i}` with `i` the 1-based position of `S` in `S_{2,4}`.
pub fn pi_var(position: usize) -> Var {
    Var::Pi(position as u32 + 1)
}

/// `sum_S pi_S f_S^1` over `S_{k,n}` with formal `pi`.
pub fn formal_combination(k: i64, n: i64, sign: ExpSign) -> Result<Polynomial> {
    let seqs = enumerate_skn(k, n)?;
    let weight = seqs.iter().map(VirtualSequence::weight).max().unwrap_or(0);
    let model = HModel::exponential(sign, weight as u32);
    let mut tau = Polynomial::zero();
    for (idx, s) in seqs.iter().enumerate() {
        let f = nschur(s, &model, None)?;
        let p = f.as_polynomial().cloned().expect("h_0 = 1 gives polynomials");
        tau += &(&p * &Polynomial::var(pi_var(idx)));
    }
    Ok(tau)
}

pub fn quadric_extraction(sign: ExpSign) -> Result<QuadricReport> {
    let tau = formal_combination(2, 4, sign)?;
    let residual = hirota_residual(&tau);
    let coefficients = residual.coefficients_in(|v| matches!(v, Var::Time(_)));

    let form = exchange_relations(2, 4)?.remove(0);
    let subsets = k_subsets(4, 2);
    let relation = form.to_polynomial(|s| pi_var(subsets.iter().position(|t| t.as_slice() == s).expect("2-subset")));

    let mut scalars = BTreeMap::new();
    let mut matched = !coefficients.is_empty();
    for (m, c) in &coefficients {
        let s = c.exact_div(&relation).and_then(|quot| quot.as_constant());
        matched &= s.is_some();
        scalars.insert(m.clone(), s);
    }
    Ok(QuadricReport { relation, relation_form: form, coefficients, scalars, matched, sign })
}

/// Subset label of every element of `S_{k,n}` in enumeration order.
pub fn skn_labels(k: i64, n: i64) -> Result<Vec<(VirtualSequence, Vec<usize>)>> {
    enumerate_skn(k, n)?.into_iter().map(|s| subset_label(&s, k, n).map(|l| (s, l))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, parse_rational_function};
    use crate::sequences::Partition;

    #[test]
    fn hirota_examples() {
        assert!(hirota_residual(&Polynomial::one()).is_zero());
        assert!(hirota_residual(&parse_polynomial("x").unwrap()).is_zero());
        assert_eq!(hirota_residual(&parse_polynomial("x^2").unwrap()), Polynomial::from_int(3));
    }

    #[test]
    fn hirota_scales_quadratically() {
        let tau = schur_polynomial_signed(&Partition::new(vec![2, 1]).unwrap(), ExpSign::Plus) + Polynomial::var(Var::Y);
        let c = q(-5, 3);
        assert_eq!(hirota_residual(&tau.scale(&c)), hirota_residual(&tau).scale(&(&c * &c)));
    }

    #[test]
    fn kp_examples() {
        assert!(kp_residual(&RationalFunction::zero()).is_zero());
        assert!(kp_residual(&parse_rational_function("-2*x/(3*t+1)").unwrap()).is_zero());
        assert_eq!(kp_residual(&parse_rational_function("x").unwrap()), parse_rational_function("3/2").unwrap());
    }

    #[test]
    fn both_signs_pass() {
        assert_eq!(pin_exponential_sign(3), vec![ExpSign::Plus, ExpSign::Minus]);
    }

    #[test]
    fn schur_tau_gives_kp_solution() {
        for n in 1..=3 {
            for l in partitions_of(n) {
                let tau = schur_polynomial_signed(&l, ExpSign::Plus);
                let u = u_from_tau(&tau).unwrap();
                assert!(kp_residual(&u).is_zero(), "{l}");
                assert_eq!(u_from_tau(&tau.scale(&q(7, 2))).unwrap(), u);
            }
        }
    }

    #[test]
    fn quadric() {
        let rep = quadric_extraction(ExpSign::Plus).unwrap();
        assert!(rep.matched);
        assert_eq!(rep.relation, parse_polynomial("pi1*pi6 - pi2*pi5 + pi3*pi4").unwrap());
        assert!(rep.relations_found() > 0);
    }
}
