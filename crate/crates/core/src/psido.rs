//! Pseudo-differential operators `sum_a f_a(x, t) d^a` truncated below
//! `d^{-depth}`, with `d = d/dx`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::{parse_rational_function, Polynomial, RationalFunction, Var};
use crate::error::{Error, Result};
use crate::random::small_rational;

pub const DEFAULT_DEPTH: i64 = 6;

/// Bracket orientation for which `dL/dt_i = sign * [L, (L^{i/N})_+]` holds on
/// the KdV example `d^2 - 2x/(3t+1)`.
pub const LAX_SIGN: i64 = -1;

/// Generalized binomial coefficient `a (a-1) ... (a-i+1) / i!`.
pub fn binomial(a: i64, i: u32) -> BigRational {
    let mut c = BigRational::one();
    for j in 0..i as i64 {
        c = c * BigRational::new(BigInt::from(a - j), BigInt::from(j + 1));
    }
    c
}

#[derive(Clone, Debug, PartialEq)]
pub struct PsiDO {
    terms: BTreeMap<i64, RationalFunction>,
    depth: i64,
}

impl PsiDO {
    pub fn zero(depth: i64) -> Self {
        PsiDO { terms: BTreeMap::new(), depth }
    }

    pub fn one(depth: i64) -> Self {
        Self::monomial(RationalFunction::one(), 0, depth)
    }

    /// `d^a`.
    pub fn d(a: i64, depth: i64) -> Self {
        Self::monomial(RationalFunction::one(), a, depth)
    }

    /// `f d^a`.
    pub fn monomial(f: RationalFunction, a: i64, depth: i64) -> Self {
        Self::from_terms([(a, f)], depth)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, RationalFunction)>, depth: i64) -> Self {
        let mut out = PsiDO::zero(depth);
        for (a, f) in terms {
            out.add_term(a, f);
        }
        out
    }

    fn add_term(&mut self, a: i64, f: RationalFunction) {
        if a < -self.depth || f.is_zero() {
            return;
        }
        let slot = self.terms.entry(a).or_default();
        *slot = &*slot + &f;
        if slot.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    pub fn with_depth(&self, depth: i64) -> Self {
        let mut out = self.clone();
        out.depth = depth;
        out.terms.retain(|&a, _| a >= -depth);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, a: i64) -> RationalFunction {
        self.terms.get(&a).cloned().unwrap_or_default()
    }

    /// Terms in descending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &RationalFunction)> {
        self.terms.iter().rev().map(|(&a, f)| (a, f))
    }

    pub fn add(&self, other: &PsiDO) -> PsiDO {
        let mut out = PsiDO::zero(self.depth.min(other.depth));
        for (a, f) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(*a, f.clone());
        }
        out
    }

    pub fn neg(&self) -> PsiDO {
        PsiDO { terms: self.terms.iter().map(|(&a, f)| (a, -f)).collect(), depth: self.depth }
    }

    pub fn sub(&self, other: &PsiDO) -> PsiDO {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> PsiDO {
        PsiDO::from_terms(self.terms.iter().map(|(&a, f)| (a, f.scale(c))), self.depth)
    }

    /// `A o B` via `d^a o g = sum_i C(a, i) g^{(i)} d^{a-i}`.
    pub fn compose(&self, other: &PsiDO) -> PsiDO {
        let depth = self.depth.min(other.depth);
        let mut out = PsiDO::zero(depth);
        for (&a, f) in &self.terms {
            for (&b, g) in &other.terms {
                let mut deriv = g.clone();
                let mut i = 0u32;
                while a + b - i as i64 >= -depth {
                    if a >= 0 && i as i64 > a {
                        break;
                    }
                    if deriv.is_zero() {
                        break;
                    }
                    let c = binomial(a, i);
                    if !c.is_zero() {
                        out.add_term(a + b - i as i64, (f * &deriv).scale(&c));
                    }
                    deriv = deriv.derivative(Var::X);
                    i += 1;
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> PsiDO {
        let mut acc = PsiDO::one(self.depth);
        for _ in 0..n {
            acc = acc.compose(self);
        }
        acc
    }

    /// Differential part: nonnegative powers of `d`.
    pub fn plus_part(&self) -> PsiDO {
        PsiDO { terms: self.terms.range(0..).map(|(&a, f)| (a, f.clone())).collect(), depth: self.depth }
    }

    pub fn minus_part(&self) -> PsiDO {
        PsiDO { terms: self.terms.range(..0).map(|(&a, f)| (a, f.clone())).collect(), depth: self.depth }
    }

    pub fn commutator(&self, other: &PsiDO) -> PsiDO {
        self.compose(other).sub(&other.compose(self))
    }

    /// Coefficientwise partial derivative.
    pub fn derivative(&self, v: Var) -> PsiDO {
        PsiDO::from_terms(self.terms.iter().map(|(&a, f)| (a, f.derivative(v))), self.depth)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms().map(|(a, f)| json!({ "exp": a, "coeff": f.to_json() })).collect();
        json!({ "depth": self.depth, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("operator JSON: {m}"));
        let depth = v.get("depth").and_then(Value::as_i64).unwrap_or(DEFAULT_DEPTH);
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let mut out = PsiDO::zero(depth);
        for t in terms {
            let a = t.get("exp").and_then(Value::as_i64).ok_or_else(|| bad("term missing exp"))?;
            let f = match t.get("coeff") {
                Some(Value::String(s)) => parse_rational_function(s)?,
                Some(c) => RationalFunction::from_json(c)?,
                None => return Err(bad("term missing coeff")),
            };
            out.add_term(a, f);
        }
        Ok(out)
    }
}

impl fmt::Display for PsiDO {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (a, c)) in self.terms().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let op = match a {
                0 => String::new(),
                1 => "d".to_string(),
                _ => format!("d^{a}"),
            };
            match (c.as_constant(), op.is_empty()) {
                (Some(k), false) if k.is_one() => write!(f, "{op}")?,
                (_, true) => write!(f, "({c})")?,
                _ => write!(f, "({c})*{op}")?,
            }
        }
        Ok(())
    }
}

/// The monic first-order `N`-th root of a monic order-`N` operator, by
/// solving for one coefficient at a time from the top.
pub fn nth_root(l: &PsiDO, depth: i64) -> Result<PsiDO> {
    let n = l.order().ok_or(Error::NonMonic)?;
    if n < 1 || l.coeff(n).as_constant().is_none_or(|c| !c.is_one()) {
        return Err(Error::NonMonic);
    }
    let inner = depth + n;
    let target = l.with_depth(inner);
    let mut root = PsiDO::d(1, inner);
    if n == 1 {
        return Ok(l.with_depth(depth));
    }
    let nq = BigRational::from_integer(n.into());
    for j in 0..=depth {
        let e = n - 1 - j;
        let have = root.pow(n as u32).coeff(e);
        let want = target.coeff(e);
        let u = (want - have).scale(&(BigRational::one() / &nq));
        root.add_term(-j, u);
    }
    Ok(root.with_depth(depth))
}

/// `(nth_root L)^N == L` through `d^{-depth}`. The power at `d^{-depth}`
/// involves the root down to `d^{-depth-N+1}`, so the root is taken deeper.
pub fn root_round_trip(l: &PsiDO, depth: i64) -> Result<bool> {
    let n = l.order().ok_or(Error::NonMonic)?;
    let root = nth_root(&l.with_depth(depth + n), depth + n - 1)?;
    Ok(root.pow(n as u32).with_depth(depth) == l.with_depth(depth))
}

/// `dL/dt_i - sign * [L, (L^{i/N})_+]`.
pub fn lax_residual(l: &PsiDO, i: u32, sign: i64) -> Result<PsiDO> {
    let depth = l.depth();
    let root = nth_root(&l.with_depth(depth + i as i64 + 1), depth + i as i64 + 1)?;
    let b = root.pow(i).plus_part().with_depth(depth);
    let bracket = l.commutator(&b).scale(&BigRational::from_integer(sign.into()));
    Ok(l.derivative(Var::Time(i)).sub(&bracket).with_depth(depth))
}

/// Bracket sign that makes the residual vanish on `l` for flow `i`, if any.
pub fn pin_lax_sign(l: &PsiDO, i: u32) -> Result<Option<i64>> {
    for sign in [LAX_SIGN, -LAX_SIGN] {
        if lax_residual(l, i, sign)?.is_zero() {
            return Ok(Some(sign));
        }
    }
    Ok(None)
}

/// A monic order-`n` operator whose lower coefficients, down to `d^{-1}`,
/// are random polynomials of degree at most 1 in `x` and `t`.
pub fn random_monic<R: rand::Rng>(rng: &mut R, n: i64, depth: i64) -> PsiDO {
    let mut terms = vec![(n, RationalFunction::one())];
    for a in -1..n {
        let c = small_rational(rng, 3);
        let cx = small_rational(rng, 3);
        let ct = small_rational(rng, 3);
        let p = Polynomial::constant(c)
            + Polynomial::var(Var::X).scale(&cx)
            + Polynomial::var(Var::T).scale(&ct);
        terms.push((a, RationalFunction::from_poly(p)));
    }
    PsiDO::from_terms(terms, depth)
}

/// `d^2 - 2x/(3t+1)`.
pub fn kdv_example(depth: i64) -> PsiDO {
    let q = parse_rational_function("-2*x/(3*t+1)").expect("literal");
    PsiDO::from_terms([(2, RationalFunction::one()), (0, q)], depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunction {
        parse_rational_function(s).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(-1, 3), BigRational::from_integer((-1).into()));
        assert_eq!(binomial(-2, 2), BigRational::from_integer(3.into()));
        assert_eq!(binomial(3, 4), BigRational::zero());
        for a in -3..=3 {
            for i in 1..6 {
                let rec = binomial(a, i - 1) * BigRational::new((a - i as i64 + 1).into(), (i as i64).into());
                assert_eq!(binomial(a, i), rec);
            }
        }
    }

    #[test]
    fn leibniz_rules() {
        let x = PsiDO::monomial(rf("x"), 0, 6);
        assert_eq!(PsiDO::d(1, 6).compose(&x), PsiDO::from_terms([(1, rf("x")), (0, rf("1"))], 6));
        let f = PsiDO::monomial(rf("x^3"), 0, 4);
        let got = PsiDO::d(-1, 4).compose(&f);
        let expect = PsiDO::from_terms([(-1, rf("x^3")), (-2, rf("-3*x^2")), (-3, rf("6*x")), (-4, rf("-6"))], 4);
        assert_eq!(got, expect);
        assert_eq!(PsiDO::d(2, 6).compose(&PsiDO::d(-2, 6)), PsiDO::one(6));
        assert_eq!(PsiDO::d(1, 6).compose(&PsiDO::d(-1, 6)), PsiDO::one(6));
    }

    #[test]
    fn parts() {
        let a = PsiDO::from_terms([(1, rf("1")), (-1, rf("x"))], 6);
        assert_eq!(a.plus_part(), PsiDO::d(1, 6));
        assert_eq!(a.plus_part().add(&a.minus_part()), a);
        assert!(PsiDO::d(-1, 6).plus_part().is_zero());
    }

    #[test]
    fn commutators() {
        let x = PsiDO::monomial(rf("x"), 0, 6);
        assert_eq!(PsiDO::d(1, 6).commutator(&x), PsiDO::one(6));
        assert_eq!(PsiDO::d(2, 6).commutator(&x), PsiDO::d(1, 6).scale(&BigRational::from_integer(2.into())));
        let a = kdv_example(6);
        assert!(a.commutator(&a).is_zero());
    }

    #[test]
    fn roots() {
        assert_eq!(nth_root(&PsiDO::d(2, 6), 6).unwrap(), PsiDO::d(1, 6));
        let l = kdv_example(4);
        let r = nth_root(&l, 4).unwrap();
        assert_eq!(r.coeff(-1), rf("-x/(3*t+1)"));
        assert_ne!(r.pow(2), l);
        assert!(root_round_trip(&l, 4).unwrap());
        let first = PsiDO::from_terms([(1, rf("1")), (-1, rf("x*y"))], 6);
        assert_eq!(nth_root(&first, 6).unwrap(), first);
        let mut rng = crate::random::stream_rng(1, 0);
        for n in 2..=3 {
            assert!(root_round_trip(&random_monic(&mut rng, n, 4), 4).unwrap());
        }
        let bad = PsiDO::monomial(rf("2"), 2, 6);
        assert_eq!(nth_root(&bad, 6), Err(Error::NonMonic));
    }

    #[test]
    fn kdv_flows() {
        let l = kdv_example(6);
        assert!(lax_residual(&l, 2, LAX_SIGN).unwrap().is_zero());
        assert!(lax_residual(&l, 3, LAX_SIGN).unwrap().is_zero());
        assert!(!lax_residual(&l, 3, -LAX_SIGN).unwrap().is_zero());
        assert_eq!(pin_lax_sign(&l, 3).unwrap(), Some(LAX_SIGN));
        for i in 1..=4 {
            assert!(lax_residual(&PsiDO::d(2, 6), i, LAX_SIGN).unwrap().is_zero());
        }
    }

    #[test]
    fn json_round_trip() {
        let l = kdv_example(5);
        assert_eq!(PsiDO::from_json(&l.to_json()).unwrap(), l);
    }
}
