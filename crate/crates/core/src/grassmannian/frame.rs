//! Points of the Grassmannian that differ from `H_+` in finitely many
//! directions. A frame lists `w_0, ..., w_{r-1}` supported on basis indices
//! `-d..r`; every later basis vector is `w_i = e_i`. Basis vector `e_s` is
//! `z^{floor(s/N)} e_{s mod N}`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use super::plucker::k_subsets;
use crate::algebra::rational_from_str;
use crate::error::{Error, Result};
use crate::linalg::{gauss_det, rank, Matrix};
use crate::random::small_rational;
use crate::sequences::VirtualSequence;

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteFrame {
    n_block: u32,
    r: usize,
    d: usize,
    columns: Vec<BTreeMap<i64, BigRational>>,
}

impl FiniteFrame {
    pub fn new(n_block: u32, r: usize, d: usize, columns: Vec<BTreeMap<i64, BigRational>>) -> Result<Self> {
        if n_block == 0 {
            return Err(Error::InvalidFrame("N must be positive".into()));
        }
        if columns.len() != r {
            return Err(Error::InvalidFrame(format!("expected {r} columns, got {}", columns.len())));
        }
        let lo = -(d as i64);
        let hi = r as i64;
        let mut cleaned = Vec::with_capacity(r);
        for col in columns {
            let mut c = BTreeMap::new();
            for (idx, v) in col {
                if idx < lo || idx >= hi {
                    return Err(Error::InvalidFrame(format!("index {idx} outside {lo}..{hi}")));
                }
                if !v.is_zero() {
                    c.insert(idx, v);
                }
            }
            cleaned.push(c);
        }
        let frame = FiniteFrame { n_block, r, d, columns: cleaned };
        if rank(&frame.dense()) < r {
            return Err(Error::InvalidFrame("columns are linearly dependent".into()));
        }
        Ok(frame)
    }

    /// `H_+` itself.
    pub fn standard(n_block: u32) -> Self {
        FiniteFrame { n_block, r: 0, d: 0, columns: Vec::new() }
    }

    /// The frame with basis `{e_{s_0}, e_{s_1}, ...}`.
    pub fn from_sequence(s: &VirtualSequence, n_block: u32) -> Self {
        let prefix = s.prefix();
        let d = prefix.first().map_or(0, |&s0| (-s0).max(0) as usize);
        let columns = prefix.iter().map(|&v| BTreeMap::from([(v, BigRational::one())])).collect();
        FiniteFrame::new(n_block, prefix.len(), d, columns).expect("sequence frames are valid")
    }

    /// The row space of a full-rank `k x n` matrix, with column `c` placed
    /// at basis index `c + k - n`. Then `<S|W>` for `S` in `S_{k,n}` is the
    /// minor at `subset_label(S)`.
    pub fn from_matrix(a: &Matrix<BigRational>, n_block: u32) -> Result<Self> {
        let (k, n) = (a.rows(), a.cols());
        let columns = (0..k)
            .map(|j| (0..n).map(|c| (c as i64 + k as i64 - n as i64, a[(j, c)].clone())).collect())
            .collect();
        FiniteFrame::new(n_block, k, n.saturating_sub(k), columns)
    }

    /// Random frame with entries `a/b`, `|a|, b <= bound`.
    pub fn random<R: Rng>(rng: &mut R, n_block: u32, r: usize, d: usize, bound: i64) -> Self {
        loop {
            let columns = (0..r)
                .map(|_| {
                    let mut col = BTreeMap::new();
                    for idx in -(d as i64)..r as i64 {
                        if rng.gen_bool(0.7) {
                            col.insert(idx, small_rational(rng, bound));
                        }
                    }
                    col
                })
                .collect();
            if let Ok(f) = FiniteFrame::new(n_block, r, d, columns) {
                return f;
            }
        }
    }

    pub fn n_block(&self) -> u32 {
        self.n_block
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn column(&self, j: usize) -> &BTreeMap<i64, BigRational> {
        &self.columns[j]
    }

    /// Entry of `w_j` at basis index `idx`, for any `j`.
    pub fn entry(&self, idx: i64, j: usize) -> BigRational {
        if j < self.r {
            self.columns[j].get(&idx).cloned().unwrap_or_else(BigRational::zero)
        } else if idx == j as i64 {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    }

    /// Rows `-d..r`, columns `0..r`.
    pub fn dense(&self) -> Matrix<BigRational> {
        let d = self.d as i64;
        Matrix::from_fn(self.d + self.r, self.r, |row, j| self.entry(row as i64 - d, j))
    }

    pub fn scale_column(&self, j: usize, c: &BigRational) -> Result<Self> {
        if c.is_zero() || j >= self.r {
            return Err(Error::InvalidFrame("scale needs a nonzero factor and an existing column".into()));
        }
        let mut f = self.clone();
        for v in f.columns[j].values_mut() {
            *v *= c;
        }
        Ok(f)
    }

    /// `<S|W>`: the determinant of the rows of the frame indexed by `S`, taken
    /// in increasing order.
    pub fn plucker_coord(&self, s: &VirtualSequence) -> BigRational {
        let len = s.prefix().len();
        if (self.r..len.max(self.r)).any(|j| s.get(j) != j as i64) {
            return BigRational::zero();
        }
        if self.r == 0 {
            return BigRational::one();
        }
        if s.get(0) < -(self.d as i64) {
            return BigRational::zero();
        }
        let m = Matrix::from_fn(self.r, self.r, |i, j| self.entry(s.get(i), j));
        gauss_det(&m)
    }

    /// All `S` with `<S|W> != 0`, in enumeration order.
    pub fn plucker_support(&self) -> Vec<(VirtualSequence, BigRational)> {
        let lo = -(self.d as i64);
        k_subsets(self.d + self.r, self.r)
            .into_iter()
            .filter_map(|sub| {
                let prefix: Vec<i64> = sub.iter().map(|&v| v as i64 - 1 + lo).collect();
                let s = VirtualSequence::new(prefix).expect("subsets are increasing and bounded");
                let c = self.plucker_coord(&s);
                (!c.is_zero()).then_some((s, c))
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let columns: Vec<Value> = self
            .columns
            .iter()
            .map(|c| Value::Array(c.iter().map(|(i, v)| json!([i, v.to_string()])).collect()))
            .collect();
        json!({ "N": self.n_block, "r": self.r, "d": self.d, "columns": columns })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidFrame(m.to_string());
        let field = |name: &str| v.get(name).and_then(Value::as_u64).ok_or_else(|| bad(&format!("missing {name}")));
        let (n, r, d) = (field("N")? as u32, field("r")? as usize, field("d")? as usize);
        let cols = v.get("columns").and_then(Value::as_array).ok_or_else(|| bad("missing columns"))?;
        let mut columns = Vec::new();
        for col in cols {
            let mut map = BTreeMap::new();
            for pair in col.as_array().ok_or_else(|| bad("column must be an array"))? {
                let (idx, val) = match pair.as_array().map(Vec::as_slice) {
                    Some([i, val]) => (i.as_i64().ok_or_else(|| bad("index must be an integer"))?, val),
                    _ => return Err(bad("entries are [index, rational] pairs")),
                };
                let q = match val {
                    Value::String(s) => rational_from_str(s)?,
                    Value::Number(num) => rational_from_str(&num.to_string())?,
                    _ => return Err(bad("rational must be a string or integer")),
                };
                map.insert(idx, q);
            }
            columns.push(map);
        }
        FiniteFrame::new(n, r, d, columns)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmannian::minors;
    use crate::random::{random_full_rank, stream_rng};
    use crate::sequences::{enumerate_by_weight, enumerate_skn, subset_label};

    #[test]
    fn standard_frame_coords() {
        let w = FiniteFrame::standard(2);
        assert_eq!(w.plucker_coord(&VirtualSequence::vacuum()), BigRational::one());
        for s in enumerate_by_weight(4).into_iter().skip(1) {
            assert!(w.plucker_coord(&s).is_zero());
        }
    }

    #[test]
    fn sequence_frames_are_delta() {
        let all = enumerate_by_weight(4);
        for s in &all {
            let w = FiniteFrame::from_sequence(s, 1);
            for t in &all {
                let expect = if s == t { BigRational::one() } else { BigRational::zero() };
                assert_eq!(w.plucker_coord(t), expect, "{s} vs {t}");
            }
        }
    }

    #[test]
    fn coords_match_minors() {
        let mut rng = stream_rng(11, 0);
        for (k, n) in [(2, 4), (1, 3), (2, 5), (3, 5)] {
            let a = random_full_rank(&mut rng, k, n, 4);
            let w = FiniteFrame::from_matrix(&a, 1).unwrap();
            let p = minors(&a).unwrap();
            for s in enumerate_skn(k as i64, n as i64).unwrap() {
                assert_eq!(w.plucker_coord(&s), p.get(&subset_label(&s, k as i64, n as i64).unwrap()));
            }
        }
    }

    #[test]
    fn support_and_json() {
        let mut rng = stream_rng(5, 1);
        let w = FiniteFrame::random(&mut rng, 2, 2, 3, 3);
        let support = w.plucker_support();
        assert!(!support.is_empty());
        for (s, c) in &support {
            assert_eq!(&w.plucker_coord(s), c);
        }
        assert_eq!(FiniteFrame::from_json(&w.to_json()).unwrap(), w);
    }

    #[test]
    fn rejects_bad_frames() {
        let col = |pairs: &[(i64, i64)]| pairs.iter().map(|&(i, v)| (i, BigRational::from_integer(v.into()))).collect();
        assert!(FiniteFrame::new(1, 1, 1, vec![col(&[(-2, 1)])]).is_err());
        assert!(FiniteFrame::new(1, 2, 1, vec![col(&[(0, 1)]), col(&[(0, 2)])]).is_err());
        assert!(FiniteFrame::new(1, 1, 1, vec![]).is_err());
    }
}
