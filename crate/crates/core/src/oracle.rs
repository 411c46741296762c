//! Slow, independent reference implementations used to cross-check the
//! fast paths in tests.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{Polynomial, Var};
use crate::linalg::Matrix;
use crate::nschur::ExpSign;
use crate::scalar::Ring;
use crate::sequences::{partitions_of, Partition};

/// Determinant by Laplace expansion along the first row.
pub fn cofactor_det<T: Ring>(m: &Matrix<T>) -> T {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return T::one();
    }
    if n == 1 {
        return m[(0, 0)].clone();
    }
    let rows: Vec<usize> = (1..n).collect();
    let mut acc = T::zero();
    for c in 0..n {
        if m[(0, c)].is_zero() {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|&j| j != c).collect();
        let term = m[(0, c)].clone() * cofactor_det(&m.select(&rows, &cols));
        acc = if c % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |a, k| a * k)
}

/// `h_k = sum over partitions mu of k of sign^len(mu) prod t_i^{m_i} / m_i!`.
pub fn complete_homogeneous(k: u32, sign: ExpSign) -> Polynomial {
    let mut acc = Polynomial::zero();
    for mu in partitions_of(k) {
        let mut mult = std::collections::BTreeMap::<u32, u32>::new();
        for &p in mu.parts() {
            *mult.entry(p).or_default() += 1;
        }
        let mut den = BigInt::from(1);
        let mut powers = Vec::new();
        for (&i, &m) in &mult {
            den *= factorial(m);
            powers.push((Var::Time(i), m));
        }
        let s = if mu.len() % 2 == 1 { sign.value() } else { 1 };
        let c = BigRational::new(BigInt::from(s), den);
        acc.add_term(crate::algebra::Monomial::from_powers(powers), c);
    }
    acc
}

/// Jacobi-Trudi: `s_lambda = det(h_{lambda_i - i + j})`.
pub fn jacobi_trudi(lambda: &Partition, sign: ExpSign) -> Polynomial {
    let l = lambda.len();
    let parts = lambda.parts();
    let m = Matrix::from_fn(l, l, |i, j| {
        let k = parts[i] as i64 - i as i64 + j as i64;
        if k < 0 {
            Polynomial::zero()
        } else {
            complete_homogeneous(k as u32, sign)
        }
    });
    cofactor_det(&m)
}

/// Number of partitions of `n`, by direct recursion on the largest part.
pub fn partition_count(n: u32) -> u64 {
    fn go(n: u32, max: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|p| go(n - p, p)).sum()
    }
    go(n, n)
}
