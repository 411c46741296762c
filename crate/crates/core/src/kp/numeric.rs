//! Finite-difference KP residuals with Richardson extrapolation.
//!
//! Derivatives use tensor products of central differences
//! `delta^n f(x) = sum_i (-1)^i C(n,i) f(x + (n/2 - i) h) / h^n`, whose error
//! expands in even powers of `h`; three step levels remove the `h^2` and
//! `h^4` terms.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde::Serialize;

use super::example::ExampleTau;
use crate::error::{Error, Result};
use crate::grassmannian::{k_subsets, minors};
use crate::random::{random_full_rank, stream_rng};

/// Base steps in `(x, y, t)`; `t` is kept small because of the pole at
/// `t = -1/3`.
pub const DEFAULT_STEP: Point = [0.6, 0.2, 0.05];
pub const DEFAULT_FLOOR: f64 = 1e-6;
/// Number of step halvings in the Richardson table.
pub const LEVELS: usize = 5;

/// A point `(x, y, t)`.
pub type Point = [f64; 3];

/// A multi-index of partial derivatives in `(x, y, t)`.
pub type Index = [u32; 3];

/// Extrapolated value and the change from the previous level.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub stability: f64,
}

fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |a, k| a * k as f64)
}

/// Samples of `f` on the half-step lattice around `p`, cached.
struct Grid<'a> {
    f: &'a dyn Fn(Point) -> Result<f64>,
    p: Point,
    h: Point,
    cache: HashMap<[i32; 3], f64>,
}

impl Grid<'_> {
    fn at(&mut self, k: [i32; 3]) -> Result<f64> {
        if let Some(&v) = self.cache.get(&k) {
            return Ok(v);
        }
        let q = std::array::from_fn(|d| self.p[d] + k[d] as f64 * self.h[d] / 2.0);
        let v = (self.f)(q)?;
        self.cache.insert(k, v);
        Ok(v)
    }

    fn difference(&mut self, orders: Index) -> Result<f64> {
        let stencil = |n: u32| -> Vec<(i32, f64)> {
            (0..=n).map(|i| (n as i32 - 2 * i as i32, if i % 2 == 0 { 1.0 } else { -1.0 } * binom(n, i))).collect()
        };
        let (sx, sy, st) = (stencil(orders[0]), stencil(orders[1]), stencil(orders[2]));
        let mut acc = 0.0;
        for &(kx, wx) in &sx {
            for &(ky, wy) in &sy {
                for &(kt, wt) in &st {
                    acc += wx * wy * wt * self.at([kx, ky, kt])?;
                }
            }
        }
        let scale: f64 = (0..3).map(|d| self.h[d].powi(orders[d] as i32)).product();
        Ok(acc / scale)
    }
}

/// Central-difference estimate of one partial derivative at steps `h`.
pub fn mixed_difference(f: &dyn Fn(Point) -> Result<f64>, p: Point, orders: Index, h: Point) -> Result<f64> {
    Grid { f, p, h, cache: HashMap::new() }.difference(orders)
}

/// Romberg table for an even-power error expansion; returns the final
/// diagonal entry and the one before it.
fn extrapolate(a: &[f64]) -> (f64, f64) {
    let mut row = a.to_vec();
    let mut prev = row[row.len().saturating_sub(2)];
    let mut factor = 4.0;
    while row.len() > 1 {
        prev = row[row.len() - 2];
        row = row.windows(2).map(|w| (factor * w[1] - w[0]) / (factor - 1.0)).collect();
        factor *= 4.0;
    }
    (row[0], prev)
}

/// Richardson extrapolation of an `O(h^2)` estimator over `levels` halvings.
pub fn richardson(est: impl Fn(f64) -> Result<f64>, scale: f64, levels: usize) -> Result<Estimate> {
    let a: Vec<f64> = (0..levels).map(|l| est(scale * 0.5f64.powi(l as i32))).collect::<Result<_>>()?;
    let (value, prev) = extrapolate(&a);
    Ok(Estimate { value, stability: (value - prev).abs() })
}

/// Partial derivatives over `set`, as extrapolated values and as the
/// two-level values used for the stability indicator.
pub fn partials(
    f: &dyn Fn(Point) -> Result<f64>,
    p: Point,
    set: &[Index],
    h: Point,
) -> Result<(BTreeMap<Index, f64>, BTreeMap<Index, f64>)> {
    let mut grids: Vec<Grid> = (0..LEVELS)
        .map(|l| {
            let s = 0.5f64.powi(l as i32);
            Grid { f, p, h: h.map(|v| v * s), cache: HashMap::new() }
        })
        .collect();
    let mut best = BTreeMap::new();
    let mut prev = BTreeMap::new();
    for &idx in set {
        let a: Vec<f64> = grids.iter_mut().map(|g| g.difference(idx)).collect::<Result<_>>()?;
        let (v, r1) = extrapolate(&a);
        best.insert(idx, v);
        prev.insert(idx, r1);
    }
    Ok((best, prev))
}

pub fn derivative(f: &dyn Fn(Point) -> Result<f64>, p: Point, orders: Index, h: Point) -> Result<Estimate> {
    let (best, prev) = partials(f, p, &[orders], h)?;
    Ok(Estimate { value: best[&orders], stability: (best[&orders] - prev[&orders]).abs() })
}

/// Truncated Taylor polynomial over a downward-closed index set; entries
/// are `d^a f / a!`.
#[derive(Clone, Debug)]
struct Jet {
    set: Vec<Index>,
    c: BTreeMap<Index, f64>,
}

impl Jet {
    fn from_partials(set: &[Index], d: &BTreeMap<Index, f64>) -> Jet {
        let c = set.iter().map(|&i| (i, d[&i] / i.iter().map(|&k| factorial(k)).product::<f64>())).collect();
        Jet { set: set.to_vec(), c }
    }

    fn get(&self, i: Index) -> f64 {
        self.c.get(&i).copied().unwrap_or(0.0)
    }

    fn mul(&self, o: &Jet) -> Jet {
        let mut c = BTreeMap::new();
        for &k in &self.set {
            let mut acc = 0.0;
            for a in 0..=k[0] {
                for b in 0..=k[1] {
                    for e in 0..=k[2] {
                        acc += self.get([a, b, e]) * o.get([k[0] - a, k[1] - b, k[2] - e]);
                    }
                }
            }
            c.insert(k, acc);
        }
        Jet { set: self.set.clone(), c }
    }

    /// `log` via `log(c + d) = log c + sum_k (-1)^{k+1} (d/c)^k / k`.
    fn ln(&self) -> Jet {
        let c0 = self.get([0, 0, 0]);
        let mut delta = self.clone();
        for v in delta.c.values_mut() {
            *v /= c0;
        }
        delta.c.insert([0, 0, 0], 0.0);
        let max_degree = self.set.iter().map(|i| i.iter().sum::<u32>()).max().unwrap_or(0);
        let mut out = Jet { set: self.set.clone(), c: self.set.iter().map(|&i| (i, 0.0)).collect() };
        out.c.insert([0, 0, 0], c0.abs().ln());
        let mut power = delta.clone();
        for k in 1..=max_degree {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            for (i, v) in &power.c {
                *out.c.get_mut(i).expect("same set") += sign * v / k as f64;
            }
            power = power.mul(&delta);
        }
        out
    }

    fn derivative(&self, i: Index) -> f64 {
        self.get(i) * i.iter().map(|&k| factorial(k)).product::<f64>()
    }
}

fn downward_closure(tops: &[Index]) -> Vec<Index> {
    let mut set = std::collections::BTreeSet::new();
    for t in tops {
        for a in 0..=t[0] {
            for b in 0..=t[1] {
                for c in 0..=t[2] {
                    set.insert([a, b, c]);
                }
            }
        }
    }
    set.into_iter().collect()
}

fn kp_from_phi(phi: &Jet) -> f64 {
    let d = |i: Index| phi.derivative(i);
    1.5 * d([2, 2, 0]) - 2.0 * d([3, 0, 1])
        + 6.0 * (d([3, 0, 0]).powi(2) + d([2, 0, 0]) * d([4, 0, 0]))
        + 0.5 * d([6, 0, 0])
}

/// KP residual of `u = 2 (log tau)_xx` from samples of `tau`:
/// `3/2 phi_xxyy - 2 phi_xxxt + 6 (phi_xxx^2 + phi_xx phi_xxxx) + 1/2 phi_xxxxxx`
/// with `phi = log tau` expanded from the Taylor jet of `tau`.
pub fn kp_residual_from_tau(tau: &dyn Fn(Point) -> Result<f64>, p: Point, h: Point, floor: f64) -> Result<Estimate> {
    let set = downward_closure(&[[2, 2, 0], [3, 0, 1], [6, 0, 0]]);
    let (best, prev) = partials(tau, p, &set, h)?;
    let t0 = best[&[0, 0, 0]];
    if t0.abs() < floor {
        return Err(Error::PoleNearSample { value: t0.abs(), floor });
    }
    let value = kp_from_phi(&Jet::from_partials(&set, &best).ln());
    let coarse = kp_from_phi(&Jet::from_partials(&set, &prev).ln());
    Ok(Estimate { value, stability: (value - coarse).abs() })
}

/// `3/4 u_yy - u_xt + 3/2 (u_x^2 + u u_xx) + 1/4 u_xxxx` sampled directly.
pub fn kp_residual_from_u(u: &dyn Fn(Point) -> Result<f64>, p: Point, h: Point) -> Result<Estimate> {
    let set = [[0, 0, 0], [0, 2, 0], [1, 0, 1], [1, 0, 0], [2, 0, 0], [4, 0, 0]];
    let (best, prev) = partials(u, p, &set, h)?;
    let kp = |d: &BTreeMap<Index, f64>| {
        let g = |i: Index| d[&i];
        0.75 * g([0, 2, 0]) - g([1, 0, 1])
            + 1.5 * (g([1, 0, 0]).powi(2) + g([0, 0, 0]) * g([2, 0, 0]))
            + 0.25 * g([4, 0, 0])
    };
    let value = kp(&best);
    Ok(Estimate { value, stability: (value - kp(&prev)).abs() })
}

/// `u = 2 (log tau)_xx` from samples of `tau`.
pub fn u_from_tau_samples(tau: &dyn Fn(Point) -> Result<f64>, p: Point, h: Point, floor: f64) -> Result<Estimate> {
    let set = downward_closure(&[[2, 0, 0]]);
    let (best, prev) = partials(tau, p, &set, h)?;
    if best[&[0, 0, 0]].abs() < floor {
        return Err(Error::PoleNearSample { value: best[&[0, 0, 0]].abs(), floor });
    }
    let value = 2.0 * Jet::from_partials(&set, &best).ln().derivative([2, 0, 0]);
    let coarse = 2.0 * Jet::from_partials(&set, &prev).ln().derivative([2, 0, 0]);
    Ok(Estimate { value, stability: (value - coarse).abs() })
}

/// `tau_0 sum_i pi_i tau_i`.
pub fn combination(ex: &ExampleTau, pi: [f64; 6]) -> impl Fn(Point) -> Result<f64> + '_ {
    move |[x, y, t]: Point| ex.combination(&pi, x, y, t)
}

fn unit(i: usize) -> [f64; 6] {
    let mut pi = [0.0; 6];
    pi[i - 1] = 1.0;
    pi
}

/// `u_i = 2 (log tau_0 tau_i)_xx`.
pub fn example_u(ex: &ExampleTau, i: usize, p: Point, h: Point, floor: f64) -> Result<Estimate> {
    u_from_tau_samples(&combination(ex, unit(i)), p, h, floor)
}

pub fn example_kp_residual(ex: &ExampleTau, pi: [f64; 6], p: Point, h: Point, floor: f64) -> Result<Estimate> {
    kp_residual_from_tau(&combination(ex, pi), p, h, floor)
}

/// Regular sample points used by the example checks: every `|tau_i|`
/// exceeds 0.2 at each of them.
pub const SAMPLE_POINTS: [Point; 5] =
    [[-0.8, -0.6, 0.2], [-0.7, 0.5, 0.15], [-0.6, 0.4, 0.2], [-0.5, -0.5, 0.2], [-0.8, 0.6, 0.1]];

/// Per-point comparison of the largest residual over quadric-satisfying
/// coefficients with the smallest over quadric-violating ones.
#[derive(Clone, Debug, Serialize)]
pub struct SeparationPoint {
    pub point: Point,
    pub max_satisfying: f64,
    pub min_violating: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Separation {
    pub points: Vec<SeparationPoint>,
    pub min_ratio: f64,
}

/// `tau_i` index (1-based) for each 2-subset of `{1..4}` in lexicographic order.
pub type Bijection = [usize; 6];

/// Evaluate `pi_1 pi_6 ...` style quadric in tau labels: the Gr(2,4) relation
/// `p12 p34 - p13 p24 + p14 p23` pulled back through `bijection`.
pub fn quadric_value(pi: &[f64; 6], bijection: &Bijection) -> f64 {
    let p = |a: usize, b: usize| {
        let pos = k_subsets(4, 2).iter().position(|s| s == &[a, b]).expect("2-subset");
        pi[bijection[pos] - 1]
    };
    p(1, 2) * p(3, 4) - p(1, 3) * p(2, 4) + p(1, 4) * p(2, 3)
}

fn draw_satisfying<R: Rng>(rng: &mut R, bijection: &Bijection) -> [f64; 6] {
    let a = random_full_rank(rng, 2, 4, 3);
    let v = minors(&a).expect("full rank").values();
    let mut pi = [0.0; 6];
    for (pos, c) in v.iter().enumerate() {
        pi[bijection[pos] - 1] = crate::scalar::rational_to_f64(c);
    }
    pi
}

fn draw_violating<R: Rng>(rng: &mut R, bijection: &Bijection) -> [f64; 6] {
    loop {
        let pi: [f64; 6] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        if quadric_value(&pi, bijection).abs() > 0.25 {
            return pi;
        }
    }
}

/// Combinations whose value falls below this fraction of
/// `sum |pi_i tau_i|` at a sample point are redrawn.
pub const MIN_CONDITIONING: f64 = 0.2;

/// `|sum pi_i tau_i| / sum |pi_i tau_i|` at `p`.
pub fn conditioning(ex: &ExampleTau, pi: &[f64; 6], p: Point) -> Result<f64> {
    let v = ex.eval(p[0], p[1], p[2])?;
    let num: f64 = pi.iter().zip(v.taus).map(|(a, t)| a * t).sum();
    let den: f64 = pi.iter().zip(v.taus).map(|(a, t)| (a * t).abs()).sum();
    Ok(if den == 0.0 { 0.0 } else { num.abs() / den })
}

/// Residuals with redraws when the combination nearly vanishes at a point.
fn residuals_for(
    ex: &ExampleTau,
    points: &[Point],
    h: Point,
    floor: f64,
    draw: &mut dyn FnMut() -> [f64; 6],
) -> Vec<f64> {
    loop {
        let pi = draw();
        let regular = points.iter().all(|&p| conditioning(ex, &pi, p).is_ok_and(|c| c >= MIN_CONDITIONING));
        if !regular {
            continue;
        }
        let r: Result<Vec<f64>> =
            points.iter().map(|&p| example_kp_residual(ex, pi, p, h, floor).map(|e| e.value.abs())).collect();
        if let Ok(r) = r {
            return r;
        }
    }
}

pub fn quadric_separation(
    ex: &ExampleTau,
    bijection: &Bijection,
    points: &[Point],
    count: usize,
    seed: u64,
    h: Point,
) -> Separation {
    let mut max_sat = vec![0.0f64; points.len()];
    let mut min_vio = vec![f64::INFINITY; points.len()];
    for j in 0..count {
        let mut rng = stream_rng(seed, 2 * j as u64);
        let sat = residuals_for(ex, points, h, DEFAULT_FLOOR, &mut || draw_satisfying(&mut rng, bijection));
        let mut rng = stream_rng(seed, 2 * j as u64 + 1);
        let vio = residuals_for(ex, points, h, DEFAULT_FLOOR, &mut || draw_violating(&mut rng, bijection));
        for k in 0..points.len() {
            max_sat[k] = max_sat[k].max(sat[k]);
            min_vio[k] = min_vio[k].min(vio[k]);
        }
    }
    let pts: Vec<SeparationPoint> = points
        .iter()
        .enumerate()
        .map(|(k, &point)| SeparationPoint {
            point,
            max_satisfying: max_sat[k],
            min_violating: min_vio[k],
            ratio: min_vio[k] / max_sat[k].max(f64::MIN_POSITIVE),
        })
        .collect();
    let min_ratio = pts.iter().map(|p| p.ratio).fold(f64::INFINITY, f64::min);
    Separation { points: pts, min_ratio }
}
