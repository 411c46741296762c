//! The Airy tau-functions `tau_0, ..., tau_6` of the 2-KdV solution
//! `L = d^2 - 2x/(3t+1)`, with `theta = 2^{1/3} x / (1+3t)^{1/3}`.

use super::airy::{Airy, GAMMA_ONE_THIRD as G1, GAMMA_TWO_THIRDS as G2};
use crate::error::{Error, Result};

/// `tau_0` and `tau_1..tau_6` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TauValues {
    pub tau0: f64,
    pub taus: [f64; 6],
}

impl TauValues {
    /// `tau_i`, `1 <= i <= 6`.
    pub fn tau(&self, i: usize) -> f64 {
        self.taus[i - 1]
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ExampleTau {
    airy: Airy,
}

impl ExampleTau {
    pub fn new(airy: Airy) -> Self {
        ExampleTau { airy }
    }

    pub fn theta(x: f64, t: f64) -> f64 {
        2f64.cbrt() * x / (1.0 + 3.0 * t).cbrt()
    }

    pub fn eval(&self, x: f64, y: f64, t: f64) -> Result<TauValues> {
        let s = 1.0 + 3.0 * t;
        if s.abs() < 1e-12 {
            return Err(Error::PoleNearSample { value: s, floor: 1e-12 });
        }
        let cr = s.cbrt();
        let v = self.airy.eval(Self::theta(x, t))?;
        let (a, b, ap, bp) = (v.ai, v.bi, v.aip, v.bip);
        let s3 = 3f64.sqrt();
        let c2 = 2f64.cbrt();

        let tau0 = (-x * x * x / (6.0 * s)).exp();
        let core = cr * G1 * G2 / 4f64.powf(4.0 / 3.0)
            * (-c2 * x * (3.0 * a * a - b * b) + cr * (3.0 * ap * ap - bp * bp));
        let quad = 3.0 * ap * ap + 2.0 * s3 * ap * bp + bp * bp;
        let lin = 6.0 * x * a * a + 4.0 * s3 * x * a * b + 2.0 * x * b * b;
        let tau3 = (3.0 * s).cbrt() * G2 * G2 / 8.0 * (-lin + 4f64.cbrt() * cr * quad);
        let tau4 = -0.5
            + cr * G1 * G1 / (8.0 * 3f64.powf(5.0 / 6.0))
                * (-3.0 * c2 * s3 * x * a * a + 6.0 * c2 * x * a * b - c2 * s3 * x * b * b
                    + cr * (3.0 * s3 * ap * ap - 6.0 * ap * bp + s3 * bp * bp));
        let tau6 = -x * s / 2.0 + y * y + (3.0 * s).cbrt() * G2 * G2 / 16.0 * (lin - 4f64.cbrt() * cr * quad);
        Ok(TauValues { tau0, taus: [1.0, y + core, tau3, tau4, -y + core, tau6] })
    }

    /// `tau_0 * sum_i pi_i tau_i`.
    pub fn combination(&self, pi: &[f64; 6], x: f64, y: f64, t: f64) -> Result<f64> {
        let v = self.eval(x, y, t)?;
        Ok(v.tau0 * pi.iter().zip(v.taus).map(|(p, tau)| p * tau).sum::<f64>())
    }
}
