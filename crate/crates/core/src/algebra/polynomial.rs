//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Var;
use crate::scalar::{ExactDiv, Field, Ring};

/// Power product of variables; sorted by variable, exponents nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers<I: IntoIterator<Item = (Var, u32)>>(powers: I) -> Self {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in powers {
            let slot = acc.entry(v).or_insert(0);
            *slot = slot.checked_add(e).expect("exponent overflow in monomial");
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1.checked_add(b[j].1).expect("exponent overflow in monomial");
                    out.push((a[i].0, e));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / divisor` when `divisor` divides `self`.
    pub fn div(&self, divisor: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < divisor.0.len() && divisor.0[j].0 < v {
                return None;
            }
            if j < divisor.0.len() && divisor.0[j].0 == v {
                let d = divisor.0[j].1;
                if d > e {
                    return None;
                }
                if e > d {
                    out.push((v, e - d));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        (j == divisor.0.len()).then_some(Monomial(out))
    }

    /// Split into the part in variables selected by `keep` and the rest.
    pub fn split(&self, keep: impl Fn(Var) -> bool) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().partition(|(v, _)| keep(*v));
        (Monomial(a), Monomial(b))
    }
}

/// Graded lexicographic order; earlier variables in the global order are
/// more significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (&(va, ea), &(vb, eb)) in self.0.iter().zip(other.0.iter()) {
            if va != vb {
                // The monomial carrying the earlier variable is larger.
                return if va < vb { Ordering::Greater } else { Ordering::Less };
            }
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, (v, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial over the rationals. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(q(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(BigRational::one(), Monomial::var(v))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.powers().iter().map(|&(v, _)| v)).collect()
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.degree_in(v) > 0)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        crate::scalar::pow(self, e)
    }

    /// Formal partial derivative.
    pub fn derivative(&self, v: Var) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.degree_in(v);
            if e == 0 {
                continue;
            }
            let reduced = m.div(&Monomial::var(v)).expect("variable present");
            out.add_term(reduced, c * q(e as i64));
        }
        out
    }

    /// Repeated partial derivative.
    pub fn derivative_n(&self, v: Var, n: u32) -> Polynomial {
        (0..n).fold(self.clone(), |p, _| p.derivative(v))
    }

    /// Evaluate with every variable mapped into a field.
    pub fn eval<F: Field>(&self, value: impl Fn(Var) -> F, coeff: impl Fn(&BigRational) -> F) -> F {
        let mut cache: HashMap<Var, F> = HashMap::new();
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = coeff(c);
            for &(v, e) in m.powers() {
                let base = cache.entry(v).or_insert_with(|| value(v)).clone();
                t = t * crate::scalar::pow(&base, e);
            }
            acc = acc + t;
        }
        acc
    }

    /// Evaluate at rational values; unbound variables are an error of the caller.
    pub fn eval_rational(&self, value: impl Fn(Var) -> BigRational) -> BigRational {
        self.eval(value, |c| c.clone())
    }

    pub fn eval_f64(&self, value: impl Fn(Var) -> f64) -> f64 {
        self.eval(value, crate::scalar::rational_to_f64)
    }

    /// Substitute polynomials for some variables; the rest persist.
    pub fn compose(&self, bindings: &BTreeMap<Var, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::term(c.clone(), Monomial::one());
            let mut rest = Vec::new();
            for &(v, e) in m.powers() {
                match bindings.get(&v) {
                    Some(p) => t = &t * &p.pow(e),
                    None => rest.push((v, e)),
                }
            }
            out += &t.mul_monomial(&Monomial::from_powers(rest), &BigRational::one());
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (dm, dc) = d.leading_term()?;
        if d.terms.len() == 1 {
            let mut out = BTreeMap::new();
            for (m, c) in &self.terms {
                out.insert(m.div(dm)?, c / dc);
            }
            return Some(Polynomial { terms: out });
        }
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Split off the rational content: `self = c * p` with `p` having coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn primitive_part(&self) -> (BigRational, Polynomial) {
        let Some((_, lead)) = self.leading_term() else {
            return (BigRational::one(), Polynomial::zero());
        };
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if lead.is_negative() {
            content = -content;
        }
        let p = self.scale(&content.recip());
        (content, p)
    }

    /// Coefficients with respect to the variables selected by `outer`:
    /// returns `m -> c_m` with `self = sum_m m * c_m` and `c_m` free of the
    /// selected variables.
    pub fn coefficients_in(&self, outer: impl Fn(Var) -> bool) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (o, inner) = m.split(&outer);
            out.entry(o).or_default().add_term(inner, c.clone());
        }
        out
    }
}

impl From<BigRational> for Polynomial {
    fn from(c: BigRational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut acc: HashMap<Monomial, BigRational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let prod = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += prod,
                }
            }
        }
        Polynomial { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial { (&self).$f(&rhs) }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial { (&self).$f(rhs) }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial { self.$f(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Polynomial {
    fn one() -> Self {
        Polynomial::one()
    }
}

impl Ring for Polynomial {
    fn from_i64(v: i64) -> Self {
        Polynomial::from_int(v)
    }
}

impl ExactDiv for Polynomial {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        Polynomial::exact_div(self, divisor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var(Var::X)
    }
    fn y() -> Polynomial {
        Polynomial::var(Var::Y)
    }

    #[test]
    fn difference_of_squares() {
        let one = Polynomial::one();
        let p = (x() + &one) * (x() - &one);
        assert_eq!(p, x().pow(2) - one);
    }

    #[test]
    fn additive_identity() {
        let p = x() * y() + Polynomial::from_int(3);
        assert_eq!(&p + &Polynomial::zero(), p);
    }

    #[test]
    fn binomial_square() {
        let lhs = (x() + y()).pow(2);
        let rhs = x().pow(2) + Polynomial::from_int(2) * x() * y() + y().pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivatives() {
        assert_eq!(x().pow(3).derivative(Var::X), Polynomial::from_int(3) * x().pow(2));
        assert!(x().pow(3).derivative(Var::Y).is_zero());
    }

    #[test]
    fn graded_lex_order() {
        let mx2 = Monomial::from_powers([(Var::X, 2)]);
        let mxy = Monomial::from_powers([(Var::X, 1), (Var::Y, 1)]);
        let my2 = Monomial::from_powers([(Var::Y, 2)]);
        let mx = Monomial::var(Var::X);
        assert!(mx2 > mxy && mxy > my2 && my2 > mx);
        assert!(mx > Monomial::one());
    }

    #[test]
    fn exact_division() {
        let a = x().pow(2) - y().pow(2);
        let b = x() - y();
        assert_eq!(a.exact_div(&b), Some(x() + y()));
        assert_eq!((x().pow(2) + y()).exact_div(&b), None);
        assert_eq!(a.exact_div(&Polynomial::zero()), None);
        let c = Polynomial::from_int(2) * x();
        assert_eq!((x().pow(3)).exact_div(&c), Some(x().pow(2).scale(&BigRational::new(1.into(), 2.into()))));
    }

    #[test]
    fn primitive_part_normalizes() {
        let p = x().scale(&BigRational::new((-3).into(), 4.into())) + Polynomial::from_int(3);
        let (c, pp) = p.primitive_part();
        assert_eq!(c, BigRational::new((-3).into(), 4.into()));
        assert_eq!(pp, x() - Polynomial::from_int(4));
        assert_eq!(pp.scale(&c), p);
    }

    #[test]
    fn display_reads_naturally() {
        let p = x().pow(2).scale(&BigRational::new(3.into(), 4.into())) - y() + Polynomial::one();
        assert_eq!(p.to_string(), "3/4*x^2 - y + 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn coefficient_grouping() {
        let p = x() * Polynomial::var(Var::Pi(0)) + x() * Polynomial::var(Var::Pi(1)) + y();
        let groups = p.coefficients_in(|v| matches!(v, Var::Time(_)));
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[&Monomial::var(Var::X)], Polynomial::var(Var::Pi(0)) + Polynomial::var(Var::Pi(1)));
    }
}
