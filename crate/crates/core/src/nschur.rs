//! N-Schur functions.
//!
//! For a sequence `S` and block size `N`, the matrix `M_S` has entry
//! `(l, c) = h^{i,j}_k` with `i = 1 + (l mod N)`, `j = 1 + (s_c mod N)` and
//! `k = floor(l/N) - floor(s_c/N)` (zero when `k < 0`), using floored
//! division for negative indices. `f_S^N = det(M_S|mN) / det(H_0)^m` for any
//! `m` with `s_i = i` for all `i >= mN`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{parse_rational_function, Polynomial, RationalFunction, Var};
use crate::error::{Error, Result};
use crate::linalg::{fraction_free_det, gauss_det, Matrix};
use crate::scalar::{Field, Ring};
use crate::sequences::{Partition, VirtualSequence};

/// Sign in `exp(sign * sum_i t_i z^i)` for the one-component series model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpSign {
    #[default]
    Plus,
    Minus,
}

impl ExpSign {
    pub fn value(self) -> i64 {
        match self {
            ExpSign::Plus => 1,
            ExpSign::Minus => -1,
        }
    }
}

#[derive(Clone, Debug)]
pub enum HMode {
    /// `h^{i,j}_k` stay symbols.
    Formal,
    /// Finite support; missing entries are zero.
    Assigned(BTreeMap<(u32, u32, u32), RationalFunction>),
    /// `N = 1`, `h_k` = coefficient of `z^k` in `exp(sign * sum t_i z^i)`, `k <= k_max`.
    Exponential { sign: ExpSign, series: Vec<Polynomial> },
}

/// Assignment of the symbols `h^{i,j}_k`.
#[derive(Clone, Debug)]
pub struct HModel {
    n: u32,
    mode: HMode,
}

/// Coefficients of `exp(sign * sum_{i>=1} t_i z^i)` up to `z^k_max`, via
/// `k h_k = sign * sum_{i=1}^k i t_i h_{k-i}`.
pub fn exponential_series(sign: ExpSign, k_max: u32) -> Vec<Polynomial> {
    let mut h = vec![Polynomial::one()];
    for k in 1..=k_max {
        let mut acc = Polynomial::zero();
        for i in 1..=k {
            let t = Polynomial::var(Var::Time(i)).scale(&BigRational::from_integer((i as i64).into()));
            acc += &(&t * &h[(k - i) as usize]);
        }
        let c = BigRational::new((sign.value()).into(), (k as i64).into());
        h.push(acc.scale(&c));
    }
    h
}

impl HModel {
    pub fn formal(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModel("N must be positive".into()));
        }
        Ok(HModel { n, mode: HMode::Formal })
    }

    pub fn assigned(n: u32, entries: BTreeMap<(u32, u32, u32), RationalFunction>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModel("N must be positive".into()));
        }
        for &(i, j, _) in entries.keys() {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::InvalidModel(format!("h index ({i},{j}) outside 1..={n}")));
            }
        }
        Ok(HModel { n, mode: HMode::Assigned(entries) })
    }

    /// Assigned model from numeric matrices `H_0, H_1, ...`.
    pub fn from_matrices(hs: &[Matrix<BigRational>]) -> Result<Self> {
        let n = hs.first().map_or(0, Matrix::rows) as u32;
        let mut entries = BTreeMap::new();
        for (k, h) in hs.iter().enumerate() {
            if h.rows() != n as usize || h.cols() != n as usize {
                return Err(Error::InvalidModel("H_k must all be N x N".into()));
            }
            for i in 0..n as usize {
                for j in 0..n as usize {
                    if !num_traits::Zero::is_zero(&h[(i, j)]) {
                        entries.insert((i as u32 + 1, j as u32 + 1, k as u32), RationalFunction::constant(h[(i, j)].clone()));
                    }
                }
            }
        }
        Self::assigned(n, entries)
    }

    pub fn exponential(sign: ExpSign, k_max: u32) -> Self {
        HModel { n: 1, mode: HMode::Exponential { sign, series: exponential_series(sign, k_max) } }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mode(&self) -> &HMode {
        &self.mode
    }

    /// `h^{i,j}_k`; zero for `k < 0` and outside a finite support.
    pub fn h(&self, i: u32, j: u32, k: i64) -> RationalFunction {
        if k < 0 {
            return RationalFunction::zero();
        }
        let k = k as u32;
        match &self.mode {
            HMode::Formal => RationalFunction::var(Var::h(i, j, k)),
            HMode::Assigned(map) => map.get(&(i, j, k)).cloned().unwrap_or_default(),
            HMode::Exponential { series, .. } => {
                series.get(k as usize).cloned().map(RationalFunction::from_poly).unwrap_or_default()
            }
        }
    }

    /// `H_k` as an `N x N` matrix.
    pub fn matrix(&self, k: u32) -> Matrix<RationalFunction> {
        Matrix::from_fn(self.n as usize, self.n as usize, |r, c| self.h(r as u32 + 1, c as u32 + 1, k as i64))
    }

    /// Largest `k` with a possibly nonzero `H_k`, when finite.
    pub fn support(&self) -> Option<u32> {
        match &self.mode {
            HMode::Formal => None,
            HMode::Assigned(map) => Some(map.keys().map(|&(_, _, k)| k).max().unwrap_or(0)),
            HMode::Exponential { series, .. } => Some(series.len() as u32 - 1),
        }
    }

    pub fn to_json(&self) -> Value {
        match &self.mode {
            HMode::Formal => json!({ "N": self.n, "mode": "formal" }),
            HMode::Assigned(map) => {
                let entries: Vec<Value> = map
                    .iter()
                    .map(|(&(i, j, k), v)| json!({ "i": i, "j": j, "k": k, "value": v.to_json() }))
                    .collect();
                json!({ "N": self.n, "mode": "assigned", "entries": entries })
            }
            HMode::Exponential { sign, series } => {
                json!({ "N": 1, "mode": "exponential", "sign": sign, "K": series.len() - 1 })
            }
        }
    }

    /// Parse the model file format. Entry values may be rational-function
    /// JSON or an infix string.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidModel(m.to_string());
        let n = v.get("N").and_then(Value::as_u64).ok_or_else(|| bad("missing N"))? as u32;
        match v.get("mode").and_then(Value::as_str).unwrap_or("assigned") {
            "formal" => Self::formal(n),
            "exponential" => {
                if n != 1 {
                    return Err(bad("exponential model requires N = 1"));
                }
                let sign = match v.get("sign") {
                    Some(s) => serde_json::from_value(s.clone()).map_err(|e| bad(&e.to_string()))?,
                    None => ExpSign::default(),
                };
                let k = v.get("K").and_then(Value::as_u64).ok_or_else(|| bad("missing K"))? as u32;
                Ok(Self::exponential(sign, k))
            }
            "assigned" => {
                let entries = v.get("entries").and_then(Value::as_array).ok_or_else(|| bad("missing entries"))?;
                let mut map = BTreeMap::new();
                for e in entries {
                    let idx = |name: &str| {
                        e.get(name).and_then(Value::as_u64).map(|x| x as u32).ok_or_else(|| bad(&format!("entry missing {name}")))
                    };
                    let (i, j, k) = (idx("i")?, idx("j")?, idx("k")?);
                    let value = match e.get("value") {
                        Some(Value::String(s)) => parse_rational_function(s)?,
                        Some(val) => RationalFunction::from_json(val)?,
                        None => return Err(bad("entry missing value")),
                    };
                    if !value.is_zero() {
                        map.insert((i, j, k), value);
                    }
                }
                Self::assigned(n, map)
            }
            other => Err(bad(&format!("unknown mode {other:?}"))),
        }
    }
}

/// `(i, j, k)` of entry `(l, col)` of `M_S`, or `None` when `k < 0`.
pub fn ms_entry(s: &VirtualSequence, n: u32, l: usize, col: usize) -> Option<(u32, u32, u32)> {
    let n = n as i64;
    let l = l as i64;
    let sc = s.get(col);
    let k = l.div_euclid(n) - sc.div_euclid(n);
    (k >= 0).then(|| ((1 + l.rem_euclid(n)) as u32, (1 + sc.rem_euclid(n)) as u32, k as u32))
}

/// Smallest `m >= 1` with `s_i = i` for every `i >= mN`.
pub fn stabilization_m(s: &VirtualSequence, n: u32) -> usize {
    let len = s.prefix().len();
    len.div_ceil(n as usize).max(1)
}

/// Top-left `mN x mN` block of `M_S` with entries from `h(i, j, k)`.
pub fn ms_block<T: Ring>(s: &VirtualSequence, n: u32, m: usize, mut h: impl FnMut(u32, u32, u32) -> T) -> Matrix<T> {
    let size = m * n as usize;
    Matrix::from_fn(size, size, |l, c| match ms_entry(s, n, l, c) {
        Some((i, j, k)) => h(i, j, k),
        None => T::zero(),
    })
}

fn resolve_m(s: &VirtualSequence, n: u32, m_override: Option<usize>) -> Result<usize> {
    let m0 = stabilization_m(s, n);
    match m_override {
        Some(m) if m < m0 => Err(Error::InvalidModel(format!("m = {m} below the stabilization bound {m0}"))),
        Some(m) => Ok(m),
        None => Ok(m0),
    }
}

fn det_rf(m: &Matrix<RationalFunction>) -> RationalFunction {
    let all_poly = (0..m.rows()).all(|r| m.row(r).iter().all(RationalFunction::is_polynomial));
    if all_poly {
        let p = m.map(|e| e.as_polynomial().expect("checked").clone());
        RationalFunction::from_poly(fraction_free_det(&p))
    } else {
        gauss_det(m)
    }
}

/// `f_S^N` under an h-model, exactly.
pub fn nschur(s: &VirtualSequence, model: &HModel, m_override: Option<usize>) -> Result<RationalFunction> {
    let n = model.n();
    let m = resolve_m(s, n, m_override)?;
    let block = ms_block(s, n, m, |i, j, k| model.h(i, j, k as i64));
    let h0 = det_rf(&model.matrix(0));
    if h0.is_zero() {
        return Err(Error::SingularH0);
    }
    let num = det_rf(&block);
    match h0.as_polynomial() {
        Some(p) => {
            let pow = m as u32;
            let (num_p, factors) = match num.as_polynomial() {
                Some(q) => (q.clone(), vec![(p.clone(), pow)]),
                None => return num.checked_div(&h0.pow(pow)),
            };
            RationalFunction::with_factors(num_p, &factors)
        }
        None => num.checked_div(&h0.pow(m as u32)),
    }
}

/// `f_S^N` over any field, from the matrices `H_0, H_1, ...` (zero beyond).
pub fn nschur_numeric<T: Field>(s: &VirtualSequence, hs: &[Matrix<T>], m_override: Option<usize>) -> Result<T> {
    let n = hs.first().ok_or_else(|| Error::InvalidModel("no H_0".into()))?.rows() as u32;
    let m = resolve_m(s, n, m_override)?;
    let h0 = gauss_det(&hs[0]);
    if h0.is_zero() {
        return Err(Error::SingularH0);
    }
    let block = ms_block(s, n, m, |i, j, k| {
        hs.get(k as usize).map(|h| h[(i as usize - 1, j as usize - 1)].clone()).unwrap_or_else(T::zero)
    });
    Ok(gauss_det(&block) / crate::scalar::pow(&h0, m as u32))
}

/// Grading `kN + i - j` of `h^{i,j}_k`; other variables weigh nothing.
pub fn grading_weight(v: Var, n: u32) -> i64 {
    match v {
        Var::H { k, i, j } => k as i64 * n as i64 + i as i64 - j as i64,
        _ => 0,
    }
}

/// Schur polynomial of `lambda` in the times `t_1, ..., t_|lambda|`, the
/// `N = 1` function under the exponential model.
pub fn schur_polynomial(lambda: &Partition) -> Polynomial {
    schur_polynomial_signed(lambda, ExpSign::default())
}

pub fn schur_polynomial_signed(lambda: &Partition, sign: ExpSign) -> Polynomial {
    let model = HModel::exponential(sign, lambda.size());
    let s = VirtualSequence::from_partition(lambda);
    let f = nschur(&s, &model, None).expect("h_0 = 1 is never singular");
    f.as_polynomial().cloned().expect("Schur functions are polynomials when h_0 = 1")
}
