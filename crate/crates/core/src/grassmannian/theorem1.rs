//! The action of `g = sum_k H_k z^k` on finite frames and the expansion
//! `<0|g|W> = sum_S <S|W> f_S^N`.
//!
//! With `a = pi_+ g pi_+` and `G = a^{-1}` (multiplication by `g^{-1}`), the
//! frame `g w a^{-1}` of `gW` projects to `Y = I + pi_+ g (w - id) G` on `H_+`.
//! Columns of `Y` past the support of `w - id` are identity columns, so
//! `<0|gW>` is the determinant of a finite leading block.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::Rng;
use serde_json::{json, Value};

use super::frame::FiniteFrame;
use crate::algebra::RationalFunction;
use crate::error::{Error, Result};
use crate::linalg::{gauss_det, inverse, Matrix};
use crate::nschur::{nschur, HModel};
use crate::random::{small_rational, stream_rng};
use crate::scalar::Field;
use crate::sequences::VirtualSequence;

/// Largest truncation tried before giving up.
pub const DEFAULT_CEILING: usize = 512;

/// `g` with finitely many nonzero `H_k`, `k <= k_max`.
#[derive(Clone, Debug)]
pub struct GOperator {
    model: HModel,
    k_max: u32,
}

impl GOperator {
    /// Formal models need `k_max`; finite models use their own support,
    /// cut to `k_max` when given.
    pub fn new(model: &HModel, k_max: Option<u32>) -> Result<Self> {
        let k = match (model.support(), k_max) {
            (Some(s), Some(k)) => s.min(k),
            (Some(s), None) => s,
            (None, Some(k)) => k,
            (None, None) => return Err(Error::InvalidModel("formal g needs a degree bound".into())),
        };
        let n = model.n();
        let mut entries = BTreeMap::new();
        for kk in 0..=k {
            for i in 1..=n {
                for j in 1..=n {
                    let v = model.h(i, j, kk as i64);
                    if !v.is_zero() {
                        entries.insert((i, j, kk), v);
                    }
                }
            }
        }
        Ok(GOperator { model: HModel::assigned(n, entries)?, k_max: k })
    }

    /// Random `H_0, ..., H_K` with invertible `H_0`.
    pub fn random<R: Rng>(rng: &mut R, n: u32, k_max: u32, bound: i64) -> Self {
        loop {
            let hs: Vec<Matrix<BigRational>> = (0..=k_max)
                .map(|_| {
                    Matrix::from_fn(n as usize, n as usize, |_, _| {
                        if rng.gen_bool(0.75) {
                            small_rational(rng, bound)
                        } else {
                            BigRational::from_integer(0.into())
                        }
                    })
                })
                .collect();
            if inverse(&hs[0]).is_none() {
                continue;
            }
            let model = HModel::from_matrices(&hs).expect("square blocks");
            return GOperator { model, k_max };
        }
    }

    pub fn model(&self) -> &HModel {
        &self.model
    }

    pub fn n(&self) -> u32 {
        self.model.n()
    }

    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    fn constant_blocks(&self) -> Option<Vec<Matrix<BigRational>>> {
        (0..=self.k_max)
            .map(|k| {
                let m = self.model.matrix(k);
                let entries: Option<Vec<BigRational>> =
                    (0..m.rows()).flat_map(|r| m.row(r).to_vec()).map(|e| e.as_constant()).collect();
                entries.map(|e| {
                    let n = m.rows();
                    Matrix::from_fn(n, n, |r, c| e[r * n + c].clone())
                })
            })
            .collect()
    }

    fn blocks(&self) -> Vec<Matrix<RationalFunction>> {
        (0..=self.k_max).map(|k| self.model.matrix(k)).collect()
    }
}

/// `<0|g|W>` and the truncation that certified it.
#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    pub value: RationalFunction,
    pub m_used: usize,
}

fn block_entry<T: Field>(blocks: &[Matrix<T>], n: i64, l: i64, col: i64) -> T {
    let k = l.div_euclid(n) - col.div_euclid(n);
    if k < 0 || k as usize >= blocks.len() {
        return T::zero();
    }
    blocks[k as usize][(l.rem_euclid(n) as usize, col.rem_euclid(n) as usize)].clone()
}

fn lhs_over<T: Field>(
    hs: &[Matrix<T>],
    w: &FiniteFrame,
    conv: impl Fn(&BigRational) -> T,
    m_start: usize,
    ceiling: usize,
) -> Result<(T, usize)> {
    let n = hs[0].rows();
    let ni = n as i64;
    let r = w.r();
    let h0_inv = inverse(&hs[0]).ok_or(Error::SingularH0)?;

    // G_0 = H_0^{-1}, G_k = -H_0^{-1} sum_{j=1}^k H_j G_{k-j}.
    let kg = r / n + 1;
    let mut gs: Vec<Matrix<T>> = vec![h0_inv.clone()];
    for k in 1..=kg {
        let mut acc = Matrix::<T>::zeros(n, n);
        for j in 1..=k.min(hs.len() - 1) {
            acc = acc.add(&hs[j].mul(&gs[k - j]));
        }
        gs.push(h0_inv.mul(&acc).scale(&T::from_i64(-1)));
    }

    // U = (w - id) G restricted to rows -d..r; column s is zero once s >= r rounded up.
    let d = w.d() as i64;
    let u_col = |s: usize| -> Vec<T> {
        let mut out = vec![T::zero(); w.d() + r];
        for q in 0..r {
            let gq = block_entry(&gs, ni, q as i64, s as i64);
            if gq.is_zero() {
                continue;
            }
            for (p, slot) in out.iter_mut().enumerate() {
                let idx = p as i64 - d;
                let mut v = w.entry(idx, q);
                if idx == q as i64 {
                    v -= BigRational::from_integer(1.into());
                }
                if !num_traits::Zero::is_zero(&v) {
                    *slot = slot.clone() + conv(&v) * gq.clone();
                }
            }
        }
        out
    };

    let mut m = m_start.div_ceil(n).max(1) * n;
    loop {
        if m > ceiling {
            return Err(Error::NonStabilizing { ceiling });
        }
        let tail_identity = (m..m + n).all(|s| u_col(s).iter().all(|v| v.is_zero()));
        if !tail_identity {
            m += n;
            continue;
        }
        let cols: Vec<Vec<T>> = (0..m).map(u_col).collect();
        let y = Matrix::from_fn(m, m, |l, s| {
            let mut v = if l == s { T::one() } else { T::zero() };
            for (p, us) in cols[s].iter().enumerate() {
                if us.is_zero() {
                    continue;
                }
                let g = block_entry(hs, ni, l as i64, p as i64 - d);
                if !g.is_zero() {
                    v = v + g * us.clone();
                }
            }
            v
        });
        return Ok((gauss_det(&y), m));
    }
}

/// `<0|g|W>` using at least `m_start` rows.
pub fn expansion_lhs_at(g: &GOperator, w: &FiniteFrame, m_start: usize, ceiling: usize) -> Result<Expansion> {
    if w.n_block() != g.n() {
        return Err(Error::InvalidFrame(format!("frame has N = {}, operator has N = {}", w.n_block(), g.n())));
    }
    let (value, m_used) = match g.constant_blocks() {
        Some(hs) => {
            let (v, m) = lhs_over(&hs, w, |q| q.clone(), m_start, ceiling)?;
            (RationalFunction::constant(v), m)
        }
        None => lhs_over(&g.blocks(), w, |q| RationalFunction::constant(q.clone()), m_start, ceiling)?,
    };
    Ok(Expansion { value, m_used })
}

/// Starting truncation from the declared supports.
pub fn default_truncation(g: &GOperator, w: &FiniteFrame) -> usize {
    let n = g.n() as usize;
    w.r() + n * g.k_max() as usize + n * w.d().div_ceil(n)
}

pub fn expansion_lhs(g: &GOperator, w: &FiniteFrame) -> Result<Expansion> {
    expansion_lhs_at(g, w, default_truncation(g, w), DEFAULT_CEILING)
}

/// Both sides of the expansion, computed independently.
#[derive(Clone, Debug)]
pub struct Theorem1Report {
    pub lhs: RationalFunction,
    pub rhs: RationalFunction,
    pub equal: bool,
    pub m_used: usize,
    pub support: Vec<(VirtualSequence, BigRational)>,
}

impl Theorem1Report {
    pub fn to_json(&self) -> Value {
        let support: Vec<Value> =
            self.support.iter().map(|(s, c)| json!({ "sequence": s.prefix(), "coord": c.to_string() })).collect();
        json!({
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "equal": self.equal,
            "M_used": self.m_used,
            "support": support,
        })
    }
}

pub fn theorem1_check(g: &GOperator, w: &FiniteFrame) -> Result<Theorem1Report> {
    let lhs = expansion_lhs(g, w)?;
    let support = w.plucker_support();
    let mut rhs = RationalFunction::zero();
    for (s, c) in &support {
        rhs = rhs + nschur(s, g.model(), None)?.scale(c);
    }
    let equal = lhs.value.rf_equal(&rhs);
    Ok(Theorem1Report { lhs: lhs.value, rhs, equal, m_used: lhs.m_used, support })
}

/// A randomized instance: `N` in 1..=3, `K <= 2`, `r <= 3`, `d <= 2N`.
pub fn random_instance(seed: u64, index: u64) -> (GOperator, FiniteFrame) {
    let mut rng = stream_rng(seed, index);
    let n = rng.gen_range(1..=3u32);
    let k = rng.gen_range(0..=2u32);
    let r = rng.gen_range(1..=3usize);
    let d = rng.gen_range(0..=2 * n as usize);
    let g = GOperator::random(&mut rng, n, k, 4);
    let w = FiniteFrame::random(&mut rng, n, r, d, 4);
    (g, w)
}

/// Formal symbols `h[i,j,k]` for `k <= k_max` used by symbolic checks.
pub fn formal_operator(n: u32, k_max: u32) -> GOperator {
    GOperator::new(&HModel::formal(n).expect("positive N"), Some(k_max)).expect("bounded")
}
