//! Dense matrices and determinants over the generic scalar traits.

use std::ops::{Index, IndexMut};

use crate::scalar::{ExactDiv, Field, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        Matrix::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                if self[(r, k)].is_zero() || other[(k, c)].is_zero() {
                    acc
                } else {
                    acc + self[(r, k)].clone() * other[(k, c)].clone()
                }
            })
        })
    }

    pub fn add(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() + other[(r, c)].clone())
    }

    pub fn scale(&self, s: &T) -> Matrix<T> {
        self.map(|v| v.clone() * s.clone())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

/// Fraction-free (Bareiss) determinant. Every division is exact, so this
/// runs over polynomial rings without any gcd computation.
pub fn fraction_free_det<T: ExactDiv>(m: &Matrix<T>) -> T {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return T::one();
    }
    let mut a = m.clone();
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                return T::zero();
            };
            for c in 0..n {
                a.data.swap(k * n + c, p * n + c);
            }
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[(k, k)].clone() * a[(i, j)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                a[(i, j)] = if v.is_zero() {
                    v
                } else {
                    v.exact_div(&prev).expect("Bareiss step must divide exactly")
                };
            }
            a[(i, k)] = T::zero();
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

/// Determinant by Gaussian elimination with pivoting on `pivot_weight`.
pub fn gauss_det<T: Field>(m: &Matrix<T>) -> T {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut det = T::one();
    for k in 0..n {
        let (p, w) = (k..n)
            .map(|r| (r, a[(r, k)].pivot_weight()))
            .fold((k, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if w == 0.0 {
            return T::zero();
        }
        if p != k {
            for c in 0..n {
                a.data.swap(k * n + c, p * n + c);
            }
            det = -det;
        }
        let pivot = a[(k, k)].clone();
        det = det * pivot.clone();
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = a[(i, k)].clone() / pivot.clone();
            for j in k + 1..n {
                if !a[(k, j)].is_zero() {
                    a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
                }
            }
            a[(i, k)] = T::zero();
        }
    }
    det
}

/// Inverse by Gauss-Jordan elimination; `None` when singular.
pub fn inverse<T: Field>(m: &Matrix<T>) -> Option<Matrix<T>> {
    assert!(m.is_square(), "inverse of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = Matrix::<T>::identity(n);
    for k in 0..n {
        let (p, w) = (k..n)
            .map(|r| (r, a[(r, k)].pivot_weight()))
            .fold((k, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if w == 0.0 {
            return None;
        }
        for c in 0..n {
            a.data.swap(k * n + c, p * n + c);
            inv.data.swap(k * n + c, p * n + c);
        }
        let pivot = a[(k, k)].clone();
        for c in 0..n {
            a[(k, c)] = a[(k, c)].clone() / pivot.clone();
            inv[(k, c)] = inv[(k, c)].clone() / pivot.clone();
        }
        for i in 0..n {
            if i == k || a[(i, k)].is_zero() {
                continue;
            }
            let f = a[(i, k)].clone();
            for c in 0..n {
                a[(i, c)] = a[(i, c)].clone() - f.clone() * a[(k, c)].clone();
                inv[(i, c)] = inv[(i, c)].clone() - f.clone() * inv[(k, c)].clone();
            }
        }
    }
    Some(inv)
}

/// Rank over a field.
pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (p, w) = (r..rows)
            .map(|i| (i, a[(i, c)].pivot_weight()))
            .fold((r, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if w == 0.0 {
            continue;
        }
        for j in 0..cols {
            a.data.swap(r * cols + j, p * cols + j);
        }
        let pivot = a[(r, c)].clone();
        for i in r + 1..rows {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone() / pivot.clone();
            for j in c..cols {
                a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Polynomial, Var};
    use num_rational::BigRational;

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect())
    }

    #[test]
    fn identity_det() {
        let i3 = Matrix::<Polynomial>::identity(3);
        assert_eq!(fraction_free_det(&i3), Polynomial::one());
    }

    #[test]
    fn symbolic_two_by_two() {
        let v = |n| Polynomial::var(Var::Aux(n));
        let m = Matrix::from_rows(vec![vec![v(0), v(1)], vec![v(2), v(3)]]);
        assert_eq!(fraction_free_det(&m), v(0) * v(3) - v(1) * v(2));
    }

    #[test]
    fn zero_pivot_needs_swap() {
        let m = qm(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        let expect = BigRational::from_integer((-2).into());
        assert_eq!(fraction_free_det(&m), expect);
        assert_eq!(gauss_det(&m), expect);
    }

    #[test]
    fn singular_matrix() {
        let m = qm(&[&[1, 2], &[2, 4]]);
        assert_eq!(gauss_det(&m), BigRational::from_integer(0.into()));
        assert!(inverse(&m).is_none());
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let m = qm(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
    }

    #[test]
    fn float_pivoting() {
        let m = Matrix::from_rows(vec![vec![1e-20f64, 1.0], vec![1.0, 1.0]]);
        assert!((gauss_det(&m) + 1.0).abs() < 1e-12);
    }
}
