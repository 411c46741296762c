//! Rational functions over the rationals.
//!
//! The denominator is kept as a product of powers of primitive polynomials
//! with positive leading coefficient. Common factors are cancelled only when
//! a stored factor divides the numerator exactly; no multivariate gcd is
//! computed, and equality is decided by cross-multiplication.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Polynomial, Var};
use crate::error::{Error, Result};
use crate::scalar::{ExactDiv, Field, Ring};

#[derive(Clone, Debug, Default)]
pub struct RationalFunction {
    num: Polynomial,
    /// Factor -> multiplicity. Factors are primitive, non-constant, with
    /// positive leading coefficient.
    den: BTreeMap<Polynomial, u32>,
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: BTreeMap::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Polynomial::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    /// `num / den`; fails on a zero denominator.
    pub fn new(num: Polynomial, den: &Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DegenerateSubstitution);
        }
        let mut rf = Self::from_poly(num);
        rf.divide_by_poly(den, 1);
        rf.cancel();
        Ok(rf)
    }

    /// `num / prod(base^e)`, keeping the product factored.
    pub fn with_factors(num: Polynomial, factors: &[(Polynomial, u32)]) -> Result<Self> {
        let mut rf = Self::from_poly(num);
        for (b, e) in factors {
            if b.is_zero() {
                return Err(Error::DegenerateSubstitution);
            }
            rf.divide_by_poly(b, *e);
        }
        rf.cancel();
        Ok(rf)
    }

    fn divide_by_poly(&mut self, d: &Polynomial, e: u32) {
        if e == 0 {
            return;
        }
        let (c, base) = d.primitive_part();
        self.num = self.num.scale(&crate::scalar::pow(&c, e).recip());
        if !base.is_constant() {
            *self.den.entry(base).or_insert(0) += e;
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    /// Denominator factors with multiplicities.
    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Polynomial, u32)> {
        self.den.iter().map(|(b, e)| (b, *e))
    }

    /// Expanded denominator.
    pub fn denominator(&self) -> Polynomial {
        self.den.iter().fold(Polynomial::one(), |acc, (b, e)| acc * b.pow(*e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.num.depends_on(v) || self.den.keys().any(|b| b.depends_on(v))
    }

    /// Remove denominator factors that divide the numerator exactly.
    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut keep = BTreeMap::new();
        for (base, mut e) in std::mem::take(&mut self.den) {
            while e > 0 {
                match self.num.exact_div(&base) {
                    Some(q) => {
                        self.num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                keep.insert(base, e);
            }
        }
        self.den = keep;
    }

    fn scaled_num(&self, target: &BTreeMap<Polynomial, u32>) -> Polynomial {
        let mut n = self.num.clone();
        for (b, &e) in target {
            let have = self.den.get(b).copied().unwrap_or(0);
            if e > have {
                n = n * b.pow(e - have);
            }
        }
        n
    }

    fn common_den(&self, other: &Self) -> BTreeMap<Polynomial, u32> {
        let mut out = self.den.clone();
        for (b, &e) in &other.den {
            let slot = out.entry(b.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        out
    }

    /// Cross-multiplication equality: `a.num * den(b) == b.num * den(a)`.
    pub fn rf_equal(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let common = self.common_den(other);
        self.scaled_num(&common) == other.scaled_num(&common)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        out.num = out.num.scale(c);
        if out.num.is_zero() {
            out.den.clear();
        }
        out
    }

    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DegenerateSubstitution);
        }
        let mut out = Self::from_poly(self.denominator());
        out.divide_by_poly(&self.num, 1);
        out.cancel();
        Ok(out)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = RationalFunction {
            num: self.num.pow(e),
            den: self.den.iter().map(|(b, m)| (b.clone(), m * e)).collect(),
        };
        if e == 0 {
            out.den.clear();
        }
        out
    }

    /// Partial derivative by the quotient rule on the factored denominator:
    /// d(p / prod b_i^e_i) = (p' prod b_i - p sum e_i b_i' prod_{j!=i} b_j) / prod b_i^(e_i+1),
    /// where the products run over factors that depend on `v`.
    pub fn derivative(&self, v: Var) -> Self {
        let moving: Vec<(&Polynomial, u32)> =
            self.den.iter().filter(|(b, _)| b.depends_on(v)).map(|(b, e)| (b, *e)).collect();
        if moving.is_empty() {
            let num = self.num.derivative(v);
            let den = if num.is_zero() { BTreeMap::new() } else { self.den.clone() };
            return RationalFunction { num, den };
        }
        let prod_all = moving.iter().fold(Polynomial::one(), |acc, (b, _)| acc * *b);
        let mut num = self.num.derivative(v) * &prod_all;
        for (i, (b, e)) in moving.iter().enumerate() {
            let others = moving
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(Polynomial::one(), |acc, (_, (c, _))| acc * *c);
            let term = (&self.num * &b.derivative(v)) * others;
            num -= &term.scale(&BigRational::from_integer((*e as i64).into()));
        }
        let mut den = self.den.clone();
        for (b, _) in &moving {
            *den.get_mut(*b).expect("factor present") += 1;
        }
        let mut out = RationalFunction { num, den };
        out.cancel();
        out
    }

    pub fn derivative_n(&self, v: Var, n: u32) -> Self {
        (0..n).fold(self.clone(), |f, _| f.derivative(v))
    }

    /// Simultaneous substitution of rational functions for variables.
    pub fn substitute(&self, bindings: &BTreeMap<Var, RationalFunction>) -> Result<Self> {
        let num = substitute_poly(&self.num, bindings)?;
        let mut den = RationalFunction::one();
        for (b, e) in &self.den {
            den = den * substitute_poly(b, bindings)?.pow(*e);
        }
        if den.is_zero() {
            return Err(Error::DegenerateSubstitution);
        }
        num.checked_div(&den)
    }

    pub fn eval<F: Field>(&self, value: impl Fn(Var) -> F + Copy, coeff: impl Fn(&BigRational) -> F + Copy) -> F {
        let mut d = F::one();
        for (b, e) in &self.den {
            d = d * crate::scalar::pow(&b.eval(value, coeff), *e);
        }
        self.num.eval(value, coeff) / d
    }

    pub fn eval_f64(&self, value: impl Fn(Var) -> f64 + Copy) -> f64 {
        self.eval(value, crate::scalar::rational_to_f64)
    }

    pub fn eval_rational(&self, value: impl Fn(Var) -> BigRational + Copy) -> Option<BigRational> {
        let mut d = BigRational::one();
        for (b, e) in &self.den {
            d *= crate::scalar::pow(&b.eval_rational(value), *e);
        }
        (!d.is_zero()).then(|| self.num.eval_rational(value) / d)
    }
}

/// Substitute into a polynomial; unbound variables persist.
pub fn substitute_poly(p: &Polynomial, bindings: &BTreeMap<Var, RationalFunction>) -> Result<RationalFunction> {
    let mut out = RationalFunction::zero();
    for (m, c) in p.terms() {
        let mut t = RationalFunction::constant(c.clone());
        for &(v, e) in m.powers() {
            let factor = match bindings.get(&v) {
                Some(r) => r.pow(e),
                None => RationalFunction::var(v).pow(e),
            };
            t = t * factor;
        }
        out = out + t;
    }
    Ok(out)
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.rf_equal(other)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, "/")?;
        let factors: Vec<String> = self
            .den
            .iter()
            .map(|(b, e)| {
                let base = if b.num_terms() > 1 { format!("({b})") } else { b.to_string() };
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        if factors.len() == 1 {
            write!(f, "{}", factors[0])
        } else {
            write!(f, "({})", factors.join("*"))
        }
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let common = self.common_den(rhs);
        let num = self.scaled_num(&common) + rhs.scaled_num(&common);
        let mut out = RationalFunction { num, den: common };
        out.cancel();
        out
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let mut den = self.den.clone();
        for (b, e) in &rhs.den {
            *den.entry(b.clone()).or_insert(0) += e;
        }
        let mut out = RationalFunction { num: &self.num * &rhs.num, den };
        if !self.den.is_empty() || !rhs.den.is_empty() {
            out.cancel();
        }
        out
    }
}

impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: RationalFunction) -> RationalFunction { (&self).$f(&rhs) }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: &RationalFunction) -> RationalFunction { (&self).$f(rhs) }
        }
        impl $tr<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: RationalFunction) -> RationalFunction { self.$f(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl Ring for RationalFunction {
    fn from_i64(v: i64) -> Self {
        RationalFunction::from_int(v)
    }
}

impl ExactDiv for RationalFunction {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.checked_div(divisor).ok()
    }
}

impl Field for RationalFunction {}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var(Var::X)
    }
    fn rf(num: Polynomial, den: Polynomial) -> RationalFunction {
        RationalFunction::new(num, &den).unwrap()
    }

    #[test]
    fn cancels_exact_common_factor() {
        let one = Polynomial::one();
        let a = rf(x().pow(2) - &one, x() - &one);
        assert!(a.is_polynomial());
        assert_eq!(a, RationalFunction::from_poly(x() + one));
    }

    #[test]
    fn cross_multiplication_equality() {
        let one = Polynomial::one();
        let y = Polynomial::var(Var::Y);
        assert_ne!(rf(one.clone(), x()), rf(one.clone(), y.clone()));
        assert_eq!(rf(Polynomial::zero(), x()), rf(Polynomial::zero(), y));
        // 2/(2x) and 1/x
        assert_eq!(rf(Polynomial::from_int(2), x().scale(&BigRational::from_integer(2.into()))), rf(one, x()));
    }

    #[test]
    fn quotient_rule() {
        let inv = rf(Polynomial::one(), x());
        let d = inv.derivative(Var::X);
        assert_eq!(d, rf(Polynomial::from_int(-1), x().pow(2)));
    }

    #[test]
    fn derivative_degree_stays_linear() {
        let tau = x().pow(3) + Polynomial::var(Var::Y) * x() + Polynomial::one();
        let f = rf(x(), tau.clone());
        let d4 = f.derivative_n(Var::X, 4);
        let (_, e) = d4.denominator_factors().next().unwrap();
        assert_eq!(e, 5);
        assert_eq!(d4.denominator_factors().count(), 1);
    }

    #[test]
    fn denominator_normalized_positive() {
        let f = rf(Polynomial::one(), -(x()) - Polynomial::one());
        let (b, _) = f.denominator_factors().next().unwrap();
        assert!(b.leading_term().unwrap().1 > &BigRational::zero());
        assert_eq!(f, rf(Polynomial::from_int(-1), x() + Polynomial::one()));
    }

    #[test]
    fn substitution() {
        let t = Polynomial::var(Var::T);
        let mut b = BTreeMap::new();
        b.insert(Var::X, RationalFunction::from_poly(t.clone() + Polynomial::one()));
        let p = RationalFunction::from_poly(x().pow(2));
        let expect = t.pow(2) + t.scale(&BigRational::from_integer(2.into())) + Polynomial::one();
        assert_eq!(p.substitute(&b).unwrap(), RationalFunction::from_poly(expect));

        let mut b2 = BTreeMap::new();
        b2.insert(Var::X, rf(Polynomial::one(), t.clone()));
        let xy = RationalFunction::from_poly(x() * Polynomial::var(Var::Y));
        assert_eq!(xy.substitute(&b2).unwrap(), rf(Polynomial::var(Var::Y), t));
        assert_eq!(xy.substitute(&BTreeMap::new()).unwrap(), xy);
    }

    #[test]
    fn degenerate_substitution_reported() {
        let mut b = BTreeMap::new();
        b.insert(Var::X, RationalFunction::from_int(1));
        let f = rf(Polynomial::one(), x() - Polynomial::one());
        assert_eq!(f.substitute(&b), Err(Error::DegenerateSubstitution));
    }
}
