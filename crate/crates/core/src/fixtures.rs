// SPDX-License-Identifier: MIT

//! Built-in test signals with known analytic properties.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::{gamma, gamma_lr};

use crate::grid::{Grid, SampledSignal};

/// Catalog signal on R^n.
#[derive(Debug, Clone, PartialEq)]
pub enum Fixture {
    /// `amplitude * exp(-|t - center|^2 / (2 sigma^2))`
    Gaussian { center: Vec<f64>, sigma: f64, amplitude: f64 },
    /// Gaussian envelope times `exp(i <freq, t>)`.
    Packet { sigma: f64, freq: Vec<f64> },
    /// Indicator of the box `[-half_width, half_width]^n`.
    Indicator { half_width: f64 },
    /// Hermite function of order `k` along every axis, shifted by `center`.
    Hermite { order: usize, center: Vec<f64> },
    /// Sum of random modulated Gaussian atoms.
    Random { seed: u64, atoms: usize, spread: f64 },
}

#[derive(Debug, Clone)]
struct Atom {
    amp: Complex64,
    center: Vec<f64>,
    sigma: f64,
    freq: Vec<f64>,
}

fn atoms(seed: u64, count: usize, dim: usize, spread: f64) -> Vec<Atom> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Atom {
            amp: Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            center: (0..dim).map(|_| rng.gen_range(-spread..spread)).collect(),
            sigma: rng.gen_range(0.6..1.2),
            freq: (0..dim).map(|_| rng.gen_range(-spread..spread)).collect(),
        })
        .collect()
}

/// Hermite function `H_k(t) exp(-t^2/2)` (physicists' polynomial),
/// normalized to unit L2 norm.
pub fn hermite_function(k: usize, t: f64) -> f64 {
    let (mut h0, mut h1) = (1.0, 2.0 * t);
    let hk = match k {
        0 => h0,
        1 => h1,
        _ => {
            for j in 1..k {
                let h2 = 2.0 * t * h1 - 2.0 * j as f64 * h0;
                h0 = h1;
                h1 = h2;
            }
            h1
        }
    };
    // ||H_k e^{-t^2/2}||^2 = 2^k k! sqrt(pi)
    let norm = (2f64.powi(k as i32) * gamma(k as f64 + 1.0) * PI.sqrt()).sqrt();
    hk * (-0.5 * t * t).exp() / norm
}

/// Twenty 1-D signals: six Gaussians, Hermite functions of order 0 to 5 and
/// eight random atom mixtures.
pub fn suite() -> Vec<Fixture> {
    let mut v = Vec::new();
    for (s, c) in [(0.5, 0.0), (0.8, 0.0), (1.0, 0.0), (1.5, 0.0), (1.0, 1.5), (0.7, -2.0)] {
        v.push(Fixture::Gaussian { center: vec![c], sigma: s, amplitude: 1.0 });
    }
    for k in 0..6 {
        v.push(Fixture::Hermite { order: k, center: vec![if k % 2 == 0 { 0.0 } else { 0.5 }] });
    }
    for seed in 1..=8 {
        v.push(Fixture::Random { seed, atoms: 3, spread: 2.0 });
    }
    v
}

impl Fixture {
    /// Short label used in report records.
    pub fn label(&self) -> String {
        match self {
            Fixture::Gaussian { center, sigma, amplitude } => {
                format!("gaussian(sigma={sigma},center={center:?},amp={amplitude})")
            }
            Fixture::Packet { sigma, freq } => format!("packet(sigma={sigma},freq={freq:?})"),
            Fixture::Indicator { half_width } => format!("indicator(h={half_width})"),
            Fixture::Hermite { order, center } => format!("hermite(k={order},center={center:?})"),
            Fixture::Random { seed, atoms, spread } => format!("random(seed={seed},atoms={atoms},spread={spread})"),
        }
    }

    pub fn gaussian(sigma: f64) -> Self {
        Fixture::Gaussian { center: vec![], sigma, amplitude: 1.0 }
    }

    /// Evaluates the fixture at `x` (dimension taken from `x`).
    pub fn eval(&self, x: &[f64]) -> Complex64 {
        match self {
            Fixture::Gaussian { center, sigma, amplitude } => {
                let r2: f64 = x
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v - center.get(i).copied().unwrap_or(0.0)).powi(2))
                    .sum();
                Complex64::new(amplitude * (-r2 / (2.0 * sigma * sigma)).exp(), 0.0)
            }
            Fixture::Packet { sigma, freq } => {
                let r2: f64 = x.iter().map(|v| v * v).sum();
                let ph: f64 =
                    x.iter().enumerate().map(|(i, v)| v * freq.get(i).copied().unwrap_or(0.0)).sum();
                Complex64::from_polar((-r2 / (2.0 * sigma * sigma)).exp(), ph)
            }
            Fixture::Indicator { half_width } => {
                let inside = x.iter().all(|v| v.abs() <= *half_width);
                Complex64::new(if inside { 1.0 } else { 0.0 }, 0.0)
            }
            Fixture::Hermite { order, center } => {
                let v: f64 = x
                    .iter()
                    .enumerate()
                    .map(|(i, v)| hermite_function(*order, v - center.get(i).copied().unwrap_or(0.0)))
                    .product();
                Complex64::new(v, 0.0)
            }
            Fixture::Random { seed, atoms: count, spread } => {
                let mut acc = Complex64::new(0.0, 0.0);
                for a in atoms(*seed, *count, x.len(), *spread) {
                    let r2: f64 = x.iter().zip(&a.center).map(|(v, c)| (v - c).powi(2)).sum();
                    let ph: f64 = x.iter().zip(&a.freq).map(|(v, w)| v * w).sum();
                    acc += a.amp * Complex64::from_polar((-r2 / (2.0 * a.sigma * a.sigma)).exp(), ph);
                }
                acc
            }
        }
    }

    pub fn sample(&self, grid: &Grid) -> SampledSignal {
        if let Fixture::Random { seed, atoms: count, spread } = self {
            let list = atoms(*seed, *count, grid.dim(), *spread);
            return SampledSignal::from_fn(grid.clone(), |x| {
                let mut acc = Complex64::new(0.0, 0.0);
                for a in &list {
                    let r2: f64 = x.iter().zip(&a.center).map(|(v, c)| (v - c).powi(2)).sum();
                    let ph: f64 = x.iter().zip(&a.freq).map(|(v, w)| v * w).sum();
                    acc += a.amp * Complex64::from_polar((-r2 / (2.0 * a.sigma * a.sigma)).exp(), ph);
                }
                acc
            });
        }
        SampledSignal::from_fn(grid.clone(), |x| self.eval(x))
    }

    /// Closed-form `L^{1,nu}` Morrey norm, when known.
    ///
    /// Gaussian: the sup over balls is attained at balls centered on the
    /// peak, so it reduces to a one-parameter maximization of
    /// `r^-nu * mass(B(0, r))` with the ball mass from the regularized
    /// incomplete gamma function. Indicator (1-D only):
    /// `sup_r min(2r, 2h) r^-nu`.
    pub fn morrey_norm(&self, dim: usize, nu: f64) -> Option<f64> {
        match self {
            Fixture::Gaussian { sigma, amplitude, .. } => {
                let total = amplitude.abs() * (2.0 * PI * sigma * sigma).powf(dim as f64 / 2.0);
                if nu == 0.0 {
                    return Some(total);
                }
                let mass = |r: f64| total * gamma_lr(dim as f64 / 2.0, r * r / (2.0 * sigma * sigma));
                let obj = |lr: f64| {
                    let r = lr.exp();
                    r.powf(-nu) * mass(r)
                };
                Some(golden_max(obj, (sigma * 1e-4).ln(), (sigma * 1e4).ln()))
            }
            Fixture::Indicator { half_width } if dim == 1 => {
                let h = *half_width;
                if nu == 0.0 {
                    return Some(2.0 * h);
                }
                if nu > 1.0 {
                    return None;
                }
                // increasing as 2 r^(1-nu) up to r = h, then 2h r^-nu
                Some(2.0 * h.powf(1.0 - nu))
            }
            _ => None,
        }
    }

    /// Closed-form L1 norm, when known.
    pub fn l1_norm(&self, dim: usize) -> Option<f64> {
        self.morrey_norm(dim, 0.0)
    }
}

/// Maximizes a unimodal function by a dense scan followed by golden-section
/// refinement.
fn golden_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    let n = 400;
    let step = (hi - lo) / n as f64;
    let (mut best, mut bx) = (f64::NEG_INFINITY, lo);
    for k in 0..=n {
        let x = lo + k as f64 * step;
        let v = f(x);
        if v > best {
            best = v;
            bx = x;
        }
    }
    let (mut a, mut b) = (bx - step, bx + step);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    best.max(f(0.5 * (a + b)))
}
