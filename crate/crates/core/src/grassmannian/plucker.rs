//! Pluecker coordinates of points of Gr(k, n) and the quadratic exchange
//! relations that cut out the Grassmannian.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;

use crate::algebra::{Monomial, Polynomial, Var};
use crate::error::{Error, Result};
use crate::linalg::{gauss_det, rank, Matrix};
use crate::scalar::{Field, Ring};

/// All `k`-subsets of `{1, ..., n}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            if n - v + 1 < k - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

fn check_range(k: usize, n: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::InvalidRange { k: k as i64, n: n as i64 });
    }
    Ok(())
}

/// Homogeneous coordinates indexed by sorted 1-based `k`-subsets.
#[derive(Clone, Debug, PartialEq)]
pub struct PluckerVector<T> {
    k: usize,
    n: usize,
    coords: BTreeMap<Vec<usize>, T>,
}

impl<T: Ring> PluckerVector<T> {
    /// Coordinates listed in `k_subsets(n, k)` order.
    pub fn new(k: usize, n: usize, values: Vec<T>) -> Result<Self> {
        check_range(k, n)?;
        let subsets = k_subsets(n, k);
        if values.len() != subsets.len() {
            return Err(Error::InvalidRange { k: k as i64, n: n as i64 });
        }
        Ok(PluckerVector { k, n, coords: subsets.into_iter().zip(values).collect() })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, subset: &[usize]) -> T {
        self.coords.get(subset).cloned().unwrap_or_else(T::zero)
    }

    pub fn coords(&self) -> impl Iterator<Item = (&Vec<usize>, &T)> {
        self.coords.iter()
    }

    pub fn values(&self) -> Vec<T> {
        self.coords.values().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.values().all(|c| c.is_zero())
    }
}

/// The maximal minors of a `k x n` matrix.
pub fn minors<T: Field>(a: &Matrix<T>) -> Result<PluckerVector<T>> {
    let (k, n) = (a.rows(), a.cols());
    check_range(k, n)?;
    if rank(a) < k {
        return Err(Error::RankDeficient);
    }
    let rows: Vec<usize> = (0..k).collect();
    let values = k_subsets(n, k)
        .iter()
        .map(|s| {
            let cols: Vec<usize> = s.iter().map(|c| c - 1).collect();
            gauss_det(&a.select(&rows, &cols))
        })
        .collect();
    PluckerVector::new(k, n, values)
}

/// A quadratic form in Pluecker coordinates with integer coefficients.
/// Keys are unordered pairs of subsets stored with the smaller first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadraticForm {
    terms: BTreeMap<(Vec<usize>, Vec<usize>), i64>,
}

impl QuadraticForm {
    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<usize>, Vec<usize>), &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&mut self, a: Vec<usize>, b: Vec<usize>, c: i64) {
        let key = if a <= b { (a, b) } else { (b, a) };
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    /// Divide by the content and make the first coefficient positive.
    fn normalized(mut self) -> Self {
        let g = self.terms.values().fold(0i64, |g, &c| g.gcd(&c));
        let first_neg = self.terms.values().next().is_some_and(|&c| c < 0);
        let d = if first_neg { -g } else { g };
        if d != 0 {
            for c in self.terms.values_mut() {
                *c /= d;
            }
        }
        self
    }

    pub fn eval<T: Ring>(&self, v: &PluckerVector<T>) -> T {
        self.terms.iter().fold(T::zero(), |acc, ((a, b), &c)| {
            let p = v.get(a) * v.get(b);
            if p.is_zero() {
                acc
            } else {
                acc + T::from_i64(c) * p
            }
        })
    }

    /// The form as a polynomial, with a variable chosen per subset.
    pub fn to_polynomial(&self, var: impl Fn(&[usize]) -> Var) -> Polynomial {
        let mut p = Polynomial::zero();
        for ((a, b), &c) in &self.terms {
            let m = Monomial::var(var(a)).mul(&Monomial::var(var(b)));
            p.add_term(m, BigRational::from_integer(c.into()));
        }
        p
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = |s: &[usize]| {
            let sep = if s.iter().any(|&v| v > 9) { "," } else { "" };
            format!("p{}", s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep))
        };
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, ((a, b), &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (idx, c.abs()) {
                (0, 1) if c < 0 => write!(f, "-")?,
                (0, 1) => {}
                (0, m) => write!(f, "{}{m}*", if c < 0 { "-" } else { "" })?,
                (_, 1) => write!(f, " {sign} ")?,
                (_, m) => write!(f, " {sign} {m}*")?,
            }
            write!(f, "{}*{}", label(a), label(b))?;
        }
        Ok(())
    }
}

/// Sign and sorted form of a list of distinct indices, or `None` on a repeat.
fn sort_with_sign(mut v: Vec<usize>) -> Option<(i64, Vec<usize>)> {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// The nontrivial quadratic exchange relations of Gr(k, n), deduplicated up
/// to scalars, in a deterministic order.
pub fn exchange_relations(k: usize, n: usize) -> Result<Vec<QuadraticForm>> {
    check_range(k, n)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for i_set in k_subsets(n, k - 1) {
        for j_set in k_subsets(n, k + 1) {
            let mut q = QuadraticForm { terms: BTreeMap::new() };
            for (l, &j) in j_set.iter().enumerate() {
                let mut left = i_set.clone();
                left.push(j);
                let Some((s1, left)) = sort_with_sign(left) else { continue };
                let right: Vec<usize> = j_set.iter().copied().filter(|&v| v != j).collect();
                let sign = if l % 2 == 0 { 1 } else { -1 };
                q.add(left, right, sign * s1);
            }
            if q.is_zero() {
                continue;
            }
            let q = q.normalized();
            if seen.insert(q.clone()) {
                out.push(q);
            }
        }
    }
    Ok(out)
}

/// True iff every exchange relation vanishes on `v`.
pub fn plucker_check<T: Ring>(v: &PluckerVector<T>) -> bool {
    match exchange_relations(v.k(), v.n()) {
        Ok(rels) => rels.iter().all(|q| q.eval(v).is_zero()),
        Err(_) => false,
    }
}
