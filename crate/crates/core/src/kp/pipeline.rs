//! `H_k` as `z`-Taylor coefficients of `Psi^{-1}` for the 2-KdV solution
//! `d^2 - 2x/(3t+1)`, and the identification of the resulting `f_S^2`,
//! `S` in `S_{2,4}`, with the example tau-functions.
//!
//! With `zeta = 4^{-1/3} z` and `Theta = theta + beta z`,
//! `beta = (1+3t)^{2/3} / 2^{2/3}`, every entry of `Psi^{-1}` is a product of
//! `phi(y,z) = sqrt(3) G(1/3) G(2/3) e^{-yz}` with Airy functions of `zeta`
//! and `Theta`, so each has an explicit Taylor series.

use serde::Serialize;
use serde_json::{json, Value};

use super::airy::{airy_constants, airy_taylor, Airy, GAMMA_ONE_THIRD, GAMMA_TWO_THIRDS};
use super::example::ExampleTau;
use super::numeric::{Bijection, Point};
use crate::error::{Error, Result};
use crate::grassmannian::k_subsets;
use crate::linalg::Matrix;
use crate::nschur::{nschur_numeric, stabilization_m};
use crate::sequences::{enumerate_skn, VirtualSequence};

pub const DEFAULT_K: usize = 6;

type Series = Vec<f64>;

fn mul(a: &[f64], b: &[f64]) -> Series {
    let n = a.len().min(b.len());
    (0..n).map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum()).collect()
}

fn sub(a: &[f64], b: &[f64]) -> Series {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale(a: &[f64], c: f64) -> Series {
    a.iter().map(|x| x * c).collect()
}

/// Series of `f(center + step z)` and `f'(center + step z)` in `z`.
fn shifted(center: f64, f0: f64, f1: f64, step: f64, len: usize) -> (Series, Series) {
    let b = airy_taylor(center, f0, f1, len + 1);
    let val = (0..len).map(|m| b[m] * step.powi(m as i32)).collect();
    let der = (0..len).map(|m| (m + 1) as f64 * b[m + 1] * step.powi(m as i32)).collect();
    (val, der)
}

/// `H_0, ..., H_K` at `(x, y, t)`.
pub fn psi_inverse_taylor(airy: &Airy, p: Point, k_max: usize) -> Result<Vec<Matrix<f64>>> {
    let [x, y, t] = p;
    let s = 1.0 + 3.0 * t;
    if s <= 0.0 {
        return Err(Error::PoleNearSample { value: s, floor: 0.0 });
    }
    let len = k_max + 1;
    let c6 = s.powf(1.0 / 6.0);
    let theta = ExampleTau::theta(x, t);
    let beta = s.powf(2.0 / 3.0) / 2f64.powf(2.0 / 3.0);
    let zstep = 4f64.powf(-1.0 / 3.0);

    let (c1, c2) = airy_constants::<f64>();
    let s3 = 3f64.sqrt();
    let (ai_z, aip_z) = shifted(0.0, c1, -c2, zstep, len);
    let (bi_z, bip_z) = shifted(0.0, s3 * c1, s3 * c2, zstep, len);
    let v = airy.eval(theta)?;
    let (ai_t, aip_t) = shifted(theta, v.ai, v.aip, beta, len);
    let (bi_t, bip_t) = shifted(theta, v.bi, v.bip, beta, len);

    let amp = s3 * GAMMA_ONE_THIRD * GAMMA_TWO_THIRDS;
    let mut phi = vec![0.0; len];
    let mut term = amp;
    for (m, slot) in phi.iter_mut().enumerate() {
        *slot = term;
        term *= -y / (m + 1) as f64;
    }

    let e11 = scale(&sub(&mul(&ai_z, &bip_t), &mul(&aip_t, &bi_z)), 1.0 / (2.0 * c6));
    let e12 = scale(&sub(&mul(&ai_t, &bi_z), &mul(&ai_z, &bi_t)), c6 / (2.0 * 2f64.cbrt()));
    let e21 = scale(&sub(&mul(&aip_z, &bip_t), &mul(&aip_t, &bip_z)), 1.0 / (2f64.powf(2.0 / 3.0) * c6));
    let e22 = scale(&sub(&mul(&ai_t, &bip_z), &mul(&aip_z, &bi_t)), c6 / 2.0);
    let entries = [mul(&phi, &e11), mul(&phi, &e12), mul(&phi, &e21), mul(&phi, &e22)];
    Ok((0..len).map(|k| Matrix::from_rows(vec![vec![entries[0][k], entries[1][k]], vec![entries[2][k], entries[3][k]]])).collect())
}

/// Whether `H_k` enters `M_S` as printed or transposed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Direct,
    Transposed,
}

impl Orientation {
    fn apply(self, hs: &[Matrix<f64>]) -> Vec<Matrix<f64>> {
        match self {
            Orientation::Direct => hs.to_vec(),
            Orientation::Transposed => hs.iter().map(Matrix::transpose).collect(),
        }
    }
}

/// `f_S^2` for every `S` in `S_{2,4}` at one point.
pub fn nschur_values(hs: &[Matrix<f64>], orientation: Orientation, m_extra: usize) -> Result<Vec<f64>> {
    let hs = orientation.apply(hs);
    enumerate_skn(2, 4)?
        .iter()
        .map(|s| nschur_numeric(s, &hs, Some(stabilization_m(s, 2) + m_extra)))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub sequence: Vec<i64>,
    pub subset: Vec<usize>,
    pub tau: usize,
    pub ratio: f64,
    pub relative_spread: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub orientation: Option<Orientation>,
    pub pairs: Vec<PairReport>,
    pub bijection: Option<Bijection>,
    pub max_relative_spread: f64,
    pub k: usize,
    pub k_change: f64,
    pub m_change: f64,
    pub vacuum_is_one: bool,
    /// The Gr(2,4) relation in tau labels, when a bijection was found.
    pub relation: Option<String>,
    pub points: Vec<Point>,
}

impl PipelineReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).unwrap_or_else(|e| json!({ "error": e.to_string() }))
    }

    pub fn passes(&self, ratio_tol: f64, k_tol: f64) -> bool {
        self.bijection.is_some() && self.max_relative_spread <= ratio_tol && self.k_change <= k_tol && self.vacuum_is_one
    }
}

fn spread(ratios: &[f64]) -> (f64, f64) {
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let dev = ratios.iter().map(|r| (r - mean).abs()).fold(0.0, f64::max);
    (mean, dev / mean.abs().max(f64::MIN_POSITIVE))
}

/// Relation `p12 p34 - p13 p24 + p14 p23` rewritten in `pi_i` for `tau_i`.
pub fn relation_in_tau_labels(bijection: &Bijection) -> String {
    let subsets = k_subsets(4, 2);
    let label = |a: usize, b: usize| bijection[subsets.iter().position(|s| s == &[a, b]).expect("2-subset")];
    let terms = [(1, label(1, 2), label(3, 4)), (-1, label(1, 3), label(2, 4)), (1, label(1, 4), label(2, 3))];
    let mut terms: Vec<(i64, usize, usize)> = terms.iter().map(|&(c, a, b)| (c, a.min(b), a.max(b))).collect();
    terms.sort_by_key(|&(_, a, b)| (a, b));
    let mut out = String::new();
    for (idx, (c, a, b)) in terms.iter().enumerate() {
        match (idx, *c < 0) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&format!("pi{a}*pi{b}"));
    }
    out
}

/// Match each `f_S^2` to the `tau_i` it is a constant multiple of.
pub fn psi_inverse_pipeline(points: &[Point], k_max: usize, ratio_tol: f64) -> Result<PipelineReport> {
    let airy = Airy::default();
    let ex = ExampleTau::new(airy);
    let seqs: Vec<VirtualSequence> = enumerate_skn(2, 4)?;
    let labels = k_subsets(4, 2);
    let taus: Vec<[f64; 6]> = points.iter().map(|&[x, y, t]| ex.eval(x, y, t).map(|v| v.taus)).collect::<Result<_>>()?;
    let hs: Vec<Vec<Matrix<f64>>> = points.iter().map(|&p| psi_inverse_taylor(&airy, p, k_max)).collect::<Result<_>>()?;
    let hs_more: Vec<Vec<Matrix<f64>>> =
        points.iter().map(|&p| psi_inverse_taylor(&airy, p, k_max + 1)).collect::<Result<_>>()?;

    let mut chosen = None;
    for orientation in [Orientation::Direct, Orientation::Transposed] {
        let values: Vec<Vec<f64>> = hs.iter().map(|h| nschur_values(h, orientation, 0)).collect::<Result<_>>()?;
        let mut pairs = Vec::new();
        let mut used = [false; 6];
        for (si, s) in seqs.iter().enumerate() {
            let best = (1..=6)
                .map(|i| {
                    let ratios: Vec<f64> = values.iter().zip(&taus).map(|(f, tau)| f[si] / tau[i - 1]).collect();
                    let (mean, rel) = spread(&ratios);
                    (i, mean, rel)
                })
                .filter(|&(_, mean, rel)| rel.is_finite() && mean.is_finite())
                .min_by(|a, b| a.2.total_cmp(&b.2));
            let Some((i, ratio, rel)) = best else { break };
            if rel > ratio_tol || used[i - 1] {
                break;
            }
            used[i - 1] = true;
            pairs.push(PairReport {
                sequence: s.prefix().to_vec(),
                subset: labels[si].clone(),
                tau: i,
                ratio,
                relative_spread: rel,
            });
        }
        if pairs.len() == seqs.len() {
            chosen = Some((orientation, pairs, values));
            break;
        }
    }

    let vacuum_pos = seqs.iter().position(VirtualSequence::is_vacuum).expect("S_{2,4} contains the vacuum");
    let Some((orientation, pairs, values)) = chosen else {
        let values: Vec<Vec<f64>> = hs.iter().map(|h| nschur_values(h, Orientation::Direct, 0)).collect::<Result<_>>()?;
        return Ok(PipelineReport {
            orientation: None,
            pairs: Vec::new(),
            bijection: None,
            max_relative_spread: f64::INFINITY,
            k: k_max,
            k_change: f64::NAN,
            m_change: f64::NAN,
            vacuum_is_one: values.iter().all(|v| v[vacuum_pos] == 1.0),
            relation: None,
            points: points.to_vec(),
        });
    };

    let mut k_change = 0.0f64;
    let mut m_change = 0.0f64;
    for (idx, h) in hs_more.iter().enumerate() {
        let more = nschur_values(h, orientation, 0)?;
        let bigger_m = nschur_values(h, orientation, 1)?;
        for si in 0..seqs.len() {
            let base = values[idx][si];
            k_change = k_change.max((more[si] - base).abs() / base.abs().max(1.0));
            m_change = m_change.max((bigger_m[si] - base).abs() / base.abs().max(1.0));
        }
    }
    let bijection: Bijection = std::array::from_fn(|pos| pairs[pos].tau);
    let max_relative_spread = pairs.iter().map(|p| p.relative_spread).fold(0.0, f64::max);
    Ok(PipelineReport {
        orientation: Some(orientation),
        relation: Some(relation_in_tau_labels(&bijection)),
        bijection: Some(bijection),
        pairs,
        max_relative_spread,
        k: k_max,
        k_change,
        m_change,
        vacuum_is_one: values.iter().all(|v| v[vacuum_pos] == 1.0),
        points: points.to_vec(),
    })
}

/// Fails with `TruncationInsufficient` when `K -> K+1` moves any value by
/// more than `tolerance`.
pub fn check_truncation(report: &PipelineReport, tolerance: f64) -> Result<()> {
    if report.k_change > tolerance || report.k_change.is_nan() {
        return Err(Error::TruncationInsufficient { k: report.k, change: report.k_change, tolerance });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kp::numeric::SAMPLE_POINTS;
    use crate::linalg::{gauss_det, inverse};

    #[test]
    fn identity_at_origin() {
        let hs = psi_inverse_taylor(&Airy::default(), [0.0, 0.0, 0.0], 3).unwrap();
        let h0 = &hs[0];
        assert!((h0[(0, 0)] - 1.0).abs() < 1e-12 && (h0[(1, 1)] - 1.0).abs() < 1e-12);
        assert!(h0[(0, 1)].abs() < 1e-12 && h0[(1, 0)].abs() < 1e-12);
    }

    #[test]
    fn h0_invertible_at_samples() {
        for &p in &SAMPLE_POINTS {
            let hs = psi_inverse_taylor(&Airy::default(), p, 2).unwrap();
            assert!(gauss_det(&hs[0]).abs() > 1e-6);
            assert!(inverse(&hs[0]).is_some());
        }
    }

    #[test]
    fn discovers_bijection() {
        let rep = psi_inverse_pipeline(&SAMPLE_POINTS, DEFAULT_K, 1e-5).unwrap();
        assert_eq!(rep.orientation, Some(Orientation::Transposed));
        assert_eq!(rep.bijection, Some([6, 4, 5, 2, 3, 1]));
        assert!(rep.passes(1e-5, 1e-7));
        assert_eq!(rep.relation.as_deref(), Some("pi1*pi6 + pi2*pi5 - pi3*pi4"));
        check_truncation(&rep, 1e-7).unwrap();
    }
}
