//! Airy functions from their Maclaurin series, and Taylor coefficients of
//! solutions of `f'' = x f` about any center.

use num_traits::{Float, FloatConst};

use crate::error::{Error, Result};

pub const GAMMA_ONE_THIRD: f64 = 2.678_938_534_707_747_6;
pub const GAMMA_TWO_THIRDS: f64 = 1.354_117_939_426_400_4;

/// Largest `|x|` accepted by the series evaluator.
pub const SERIES_LIMIT: f64 = 8.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryValues<T> {
    pub ai: T,
    pub bi: T,
    pub aip: T,
    pub bip: T,
}

fn c<T: Float>(v: f64) -> T {
    T::from(v).expect("float literal")
}

/// `Ai(0)` and `-Ai'(0)`.
pub fn airy_constants<T: Float>() -> (T, T) {
    let three = c::<T>(3.0);
    let c1 = three.powf(c(-2.0 / 3.0)) / c(GAMMA_TWO_THIRDS);
    let c2 = three.powf(c(-1.0 / 3.0)) / c(GAMMA_ONE_THIRD);
    (c1, c2)
}

/// First `len` Taylor coefficients about `center` of the solution of
/// `f'' = x f` with `f(center) = f0`, `f'(center) = f1`:
/// `a_{m+2} = (center a_m + a_{m-1}) / ((m+1)(m+2))`.
pub fn airy_taylor<T: Float>(center: T, f0: T, f1: T, len: usize) -> Vec<T> {
    let mut a = vec![T::zero(); len.max(2)];
    a[0] = f0;
    a[1] = f1;
    for m in 0..len.saturating_sub(2) {
        let prev = if m >= 1 { a[m - 1] } else { T::zero() };
        let denom = c::<T>(((m + 1) * (m + 2)) as f64);
        a[m + 2] = (center * a[m] + prev) / denom;
    }
    a.truncate(len);
    a
}

/// Value, first and second derivative of a power series at `x`.
fn sum_series<T: Float>(coeffs: &[T], x: T) -> (T, T, T) {
    let mut v = T::zero();
    let mut d = T::zero();
    let mut dd = T::zero();
    for (k, &a) in coeffs.iter().enumerate().rev() {
        v = v * x + a;
        if k >= 1 {
            d = d * x + a * c(k as f64);
        }
        if k >= 2 {
            dd = dd * x + a * c((k * (k - 1)) as f64);
        }
    }
    (v, d, dd)
}

#[derive(Clone, Copy, Debug)]
pub struct Airy {
    /// Maclaurin terms kept; 160 is ample for `|x| <= 8` in double precision.
    pub terms: usize,
}

impl Default for Airy {
    fn default() -> Self {
        Airy { terms: 160 }
    }
}

impl Airy {
    fn series<T: Float>(&self, x: T) -> Result<(Vec<T>, Vec<T>)> {
        let xf = x.to_f64().unwrap_or(f64::INFINITY);
        if !(xf.abs() <= SERIES_LIMIT) {
            return Err(Error::DomainExceeded(xf));
        }
        let (c1, c2) = airy_constants::<T>();
        let f = airy_taylor(T::zero(), T::one(), T::zero(), self.terms);
        let g = airy_taylor(T::zero(), T::zero(), T::one(), self.terms);
        let s3 = c::<T>(3.0).sqrt();
        let ai = f.iter().zip(&g).map(|(&a, &b)| c1 * a - c2 * b).collect();
        let bi = f.iter().zip(&g).map(|(&a, &b)| s3 * (c1 * a + c2 * b)).collect();
        Ok((ai, bi))
    }

    pub fn eval<T: Float + FloatConst>(&self, x: T) -> Result<AiryValues<T>> {
        let (ai, bi) = self.series(x)?;
        let (a, ap, _) = sum_series(&ai, x);
        let (b, bp, _) = sum_series(&bi, x);
        Ok(AiryValues { ai: a, bi: b, aip: ap, bip: bp })
    }

    /// Wronskian `Ai Bi' - Ai' Bi`; `1/pi` exactly.
    pub fn wronskian<T: Float + FloatConst>(&self, x: T) -> Result<T> {
        let v = self.eval(x)?;
        Ok(v.ai * v.bip - v.aip * v.bi)
    }

    /// `Ai''(x) - x Ai(x)` with `Ai''` from the differentiated series.
    pub fn ode_residual(&self, x: f64) -> Result<f64> {
        let (ai, _) = self.series(x)?;
        let (a, _, app) = sum_series(&ai, x);
        Ok(app - x * a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gamma_literals() {
        let prod = GAMMA_ONE_THIRD * GAMMA_TWO_THIRDS;
        assert!((prod - 2.0 * PI / 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn values_at_zero() {
        let v = Airy::default().eval(0.0f64).unwrap();
        assert!((v.ai - 0.355_028_053_887_817_2).abs() < 1e-14);
        assert!((v.aip + 0.258_819_403_792_806_8).abs() < 1e-14);
        assert!((v.bi - 0.614_926_627_446_000_7).abs() < 1e-14);
        assert!((v.bip - 0.448_288_357_353_826_4).abs() < 1e-14);
    }

    #[test]
    fn reference_values() {
        let a = Airy::default();
        let v = a.eval(2.0f64).unwrap();
        assert!((v.ai - 0.034_924_130_423_274_38).abs() < 1e-12);
        assert!((v.bi - 3.298_094_999_978_214).abs() < 1e-11);
        let w = a.eval(-3.0f64).unwrap();
        assert!((w.ai + 0.378_814_293_677_658).abs() < 1e-12);
        assert!((w.bi + 0.198_289_626_374_926_4).abs() < 1e-12);
    }

    #[test]
    fn wronskian_and_ode() {
        let a = Airy::default();
        for x in [-5.0, -3.0, -1.0, 0.0, 1.0, 3.0, 5.0] {
            assert!((a.wronskian(x).unwrap() - 1.0 / PI).abs() < 1e-10, "x = {x}");
        }
        assert!(a.ode_residual(1.5).unwrap().abs() < 1e-9);
        let w32 = a.wronskian(1.0f32).unwrap();
        assert!((w32 - 1.0 / std::f32::consts::PI).abs() < 1e-5);
    }

    #[test]
    fn domain() {
        assert!(matches!(Airy::default().eval(9.0f64), Err(Error::DomainExceeded(_))));
    }

    #[test]
    fn taylor_matches_evaluation() {
        let a = Airy::default();
        let c0 = 0.7;
        let v = a.eval(c0).unwrap();
        let coeffs = airy_taylor(c0, v.ai, v.aip, 30);
        let (val, der, _) = sum_series(&coeffs, 0.4);
        let w = a.eval(c0 + 0.4).unwrap();
        assert!((val - w.ai).abs() < 1e-13);
        assert!((der - w.aip).abs() < 1e-13);
    }
}
