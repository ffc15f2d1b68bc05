// SPDX-License-Identifier: MIT

//! Morrey norms (`p = 1`)
//!
//! ```text
//! ||f||_M = sup_{x, r > 0} r^-nu int_{B(x, r)} |f|
//! ```
//!
//! estimated over a finite scan of centers and radii, and the fixed-scale
//! CFrWT bounds on `L^{1,nu}_M`.

use rayon::prelude::*;
use serde::Serialize;

use crate::cfrwt::cfrwt_slice;
use crate::error::{FrwtError, Result};
use crate::fixtures::Fixture;
use crate::frft::TransformOrder;
use crate::grid::{Grid, SampledSignal};
use crate::report::VerificationReport;
use crate::uncertainty::fit_slope;
use crate::wavelet::WaveletSpec;

/// Scan of ball centers and radii.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MorreyConfig {
    pub nu: f64,
    pub centers: Vec<Vec<f64>>,
    pub radii: Vec<f64>,
}

fn hull_centers(grid: &Grid, per_axis: usize) -> Vec<Vec<f64>> {
    let per_axis = per_axis.max(1);
    let mut out = vec![vec![]];
    for ax in grid.axes() {
        let (lo, hi) = (ax.start, ax.end());
        let coords: Vec<f64> = if per_axis == 1 {
            vec![0.5 * (lo + hi)]
        } else {
            (0..per_axis).map(|k| lo + (hi - lo) * k as f64 / (per_axis - 1) as f64).collect()
        };
        out = out
            .into_iter()
            .flat_map(|p| {
                coords.iter().map(move |c| {
                    let mut q = p.clone();
                    q.push(*c);
                    q
                })
            })
            .collect();
    }
    out
}

fn log_radii(r_min: f64, r_max: f64, count: usize) -> Vec<f64> {
    if count <= 1 {
        return vec![r_max];
    }
    let q = (r_max / r_min).ln() / (count - 1) as f64;
    (0..count).map(|k| r_min * (k as f64 * q).exp()).collect()
}

impl MorreyConfig {
    pub fn new(nu: f64, centers: Vec<Vec<f64>>, radii: Vec<f64>) -> Result<Self> {
        if !(nu >= 0.0 && nu.is_finite()) {
            return Err(FrwtError::InvalidParameter(format!("nu = {nu}")));
        }
        if centers.is_empty() || radii.is_empty() {
            return Err(FrwtError::EmptyScan);
        }
        if radii.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
            return Err(FrwtError::InvalidParameter("radii must be positive".into()));
        }
        Ok(Self { nu, centers, radii })
    }

    /// 64 centers spanning the grid hull (a tensor lattice in higher
    /// dimensions) and 32 log-spaced radii from two steps to the domain
    /// half-width.
    pub fn default_for(grid: &Grid, nu: f64) -> Result<Self> {
        let per_axis = (64f64.powf(1.0 / grid.dim() as f64)).ceil() as usize;
        let step = grid.axes().iter().map(|a| a.step).fold(f64::INFINITY, f64::min);
        let half = grid.axes().iter().map(|a| 0.5 * (a.end() - a.start)).fold(0.0, f64::max);
        Self::new(nu, hull_centers(grid, per_axis), log_radii(2.0 * step, half, 32))
    }

    /// `per_axis` centers per axis spanning the hull and radii
    /// `r_min * 2^(k / per_octave)` up to `r_max`.
    pub fn octave_scan(grid: &Grid, nu: f64, per_axis: usize, r_min: f64, r_max: f64, per_octave: usize) -> Result<Self> {
        let count = ((r_max / r_min).log2() * per_octave as f64).round() as usize + 1;
        Self::new(nu, hull_centers(grid, per_axis), log_radii(r_min, r_max, count))
    }

    fn validate_for(&self, grid: &Grid) -> Result<()> {
        for c in &self.centers {
            if c.len() != grid.dim() {
                return Err(FrwtError::DimensionMismatch { expected: grid.dim(), got: c.len() });
            }
            let inside = c.iter().zip(grid.axes()).all(|(v, a)| {
                let tol = 1e-9 * a.step;
                *v >= a.start - tol && *v <= a.end() + tol
            });
            if !inside {
                return Err(FrwtError::InvalidParameter(format!("center {c:?} outside the grid hull")));
            }
        }
        Ok(())
    }
}

/// Scanned Morrey norm with its maximizing ball.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MorreyEstimate {
    pub value: f64,
    pub center: Vec<f64>,
    pub radius: f64,
}

/// Ball masses of `|f|` treated as constant on each sample's cell.
enum BallMass {
    /// Cumulative mass at cell edges.
    Line { edges: Vec<f64>, cum: Vec<f64> },
    /// Points, cell masses and cell half-diagonal.
    Cells { points: Vec<Vec<f64>>, mass: Vec<f64>, steps: Vec<f64>, half_diag: f64 },
}

impl BallMass {
    fn new(f: &SampledSignal) -> Self {
        let grid = f.grid();
        if grid.dim() == 1 {
            let ax = grid.axis(0);
            let h = ax.step;
            let mut edges = Vec::with_capacity(ax.count + 1);
            edges.push(ax.start);
            for k in 0..ax.count - 1 {
                edges.push(ax.coord(k) + 0.5 * h);
            }
            edges.push(ax.end());
            let mut cum = vec![0.0; ax.count + 1];
            for k in 0..ax.count {
                cum[k + 1] = cum[k] + f.values()[k].norm() * (edges[k + 1] - edges[k]);
            }
            return BallMass::Line { edges, cum };
        }
        let w = grid.weights().flatten();
        let steps: Vec<f64> = grid.axes().iter().map(|a| a.step).collect();
        let half_diag = 0.5 * steps.iter().map(|s| s * s).sum::<f64>().sqrt();
        BallMass::Cells {
            points: grid.points(),
            mass: f.values().iter().zip(&w).map(|(z, wk)| z.norm() * wk).collect(),
            steps,
            half_diag,
        }
    }

    fn cumulative(edges: &[f64], cum: &[f64], x: f64) -> f64 {
        if x <= edges[0] {
            return 0.0;
        }
        let last = edges.len() - 1;
        if x >= edges[last] {
            return cum[last];
        }
        let j = edges.partition_point(|e| *e <= x) - 1;
        let frac = (x - edges[j]) / (edges[j + 1] - edges[j]);
        cum[j] + frac * (cum[j + 1] - cum[j])
    }

    fn mass(&self, c: &[f64], r: f64) -> f64 {
        match self {
            BallMass::Line { edges, cum } => {
                Self::cumulative(edges, cum, c[0] + r) - Self::cumulative(edges, cum, c[0] - r)
            }
            BallMass::Cells { points, mass, steps, half_diag } => {
                const SUB: usize = 4;
                let n = steps.len();
                let mut acc = 0.0;
                for (p, m) in points.iter().zip(mass) {
                    if *m == 0.0 {
                        continue;
                    }
                    let d = p.iter().zip(c).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
                    if d <= r - half_diag {
                        acc += m;
                    } else if d < r + half_diag {
                        // inside fraction from a SUB^n sub-lattice of the cell
                        let total = SUB.pow(n as u32);
                        let mut hit = 0usize;
                        for s in 0..total {
                            let mut q = s;
                            let mut d2 = 0.0;
                            for i in 0..n {
                                let k = q % SUB;
                                q /= SUB;
                                let off = ((k as f64 + 0.5) / SUB as f64 - 0.5) * steps[i];
                                d2 += (p[i] + off - c[i]).powi(2);
                            }
                            if d2 <= r * r {
                                hit += 1;
                            }
                        }
                        acc += m * hit as f64 / total as f64;
                    }
                }
                acc
            }
        }
    }
}

/// `max r^-nu int_{B(x, r)} |f|` over the scan; a lower bound of the norm.
pub fn morrey_norm(f: &SampledSignal, cfg: &MorreyConfig) -> Result<MorreyEstimate> {
    cfg.validate_for(f.grid())?;
    if cfg.centers.is_empty() || cfg.radii.is_empty() {
        return Err(FrwtError::EmptyScan);
    }
    let bm = BallMass::new(f);
    let best = cfg
        .centers
        .par_iter()
        .map(|c| {
            let mut best = (f64::NEG_INFINITY, 0.0);
            for r in &cfg.radii {
                let v = bm.mass(c, *r) * r.powf(-cfg.nu);
                if v > best.0 {
                    best = (v, *r);
                }
            }
            (best.0, best.1, c.clone())
        })
        .reduce_with(|a, b| if b.0 > a.0 { b } else { a })
        .ok_or(FrwtError::EmptyScan)?;
    Ok(MorreyEstimate { value: best.0, center: best.2, radius: best.1 })
}

/// Samples with an optional closed-form Morrey norm.
#[derive(Debug, Clone, PartialEq)]
pub struct MorreyOperand {
    pub signal: SampledSignal,
    pub known_norm: Option<f64>,
}

impl MorreyOperand {
    pub fn sampled(signal: SampledSignal) -> Self {
        Self { signal, known_norm: None }
    }

    /// Samples a catalog fixture and attaches its closed-form norm.
    pub fn fixture(fx: &Fixture, grid: &Grid, nu: f64) -> Self {
        Self { signal: fx.sample(grid), known_norm: fx.morrey_norm(grid.dim(), nu) }
    }

    /// Upper-bound factor: the larger of the scan and the closed form.
    pub fn norm(&self, cfg: &MorreyConfig) -> Result<f64> {
        let scan = morrey_norm(&self.signal, cfg)?.value;
        Ok(self.known_norm.map_or(scan, |k| k.max(scan)))
    }
}

fn abs_product(a: &[f64]) -> f64 {
    a.iter().map(|v| v.abs()).product()
}

/// `||W_psi f(., a)||_M <= sqrt(|a|_p) ||psi||_1 ||f||_M`.
pub fn morrey_bound_check(
    f: &MorreyOperand,
    psi: &WaveletSpec,
    a: &[f64],
    order: TransformOrder,
    cfg: &MorreyConfig,
    tolerance: f64,
) -> Result<VerificationReport> {
    let w = cfrwt_slice(&f.signal, psi, order, a)?;
    let lhs = morrey_norm(&w, cfg)?.value;
    let rhs = abs_product(a).sqrt() * psi.l1_norm() * f.norm(cfg)?;
    Ok(VerificationReport::upper_bound("morrey_bound", lhs, rhs, tolerance).with_grid(f.signal.grid()))
}

/// Growth of the scanned `||W_psi f(., s 1)||_M` in `|a|_p = s^n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthFit {
    pub scales: Vec<f64>,
    pub norms: Vec<f64>,
    pub exponent: f64,
}

/// Log-log slope of the fixed-scale Morrey norm against `|a|_p` for
/// isotropic scales `a = (s, ..., s)`.
pub fn morrey_growth(
    f: &SampledSignal,
    psi: &WaveletSpec,
    order: TransformOrder,
    cfg: &MorreyConfig,
    scales: &[f64],
) -> Result<GrowthFit> {
    if scales.len() < 2 {
        return Err(FrwtError::EmptyScan);
    }
    let n = f.dim();
    let norms: Vec<f64> = scales
        .iter()
        .map(|s| morrey_norm(&cfrwt_slice(f, psi, order, &vec![*s; n])?, cfg).map(|e| e.value))
        .collect::<Result<_>>()?;
    let x: Vec<f64> = scales.iter().map(|s| n as f64 * s.abs().ln()).collect();
    let y: Vec<f64> = norms.iter().map(|v| v.ln()).collect();
    Ok(GrowthFit { scales: scales.to_vec(), exponent: fit_slope(&x, &y), norms })
}

/// Growth exponent expected to be `1/2` within `tolerance`.
pub fn morrey_growth_check(
    f: &SampledSignal,
    psi: &WaveletSpec,
    order: TransformOrder,
    cfg: &MorreyConfig,
    scales: &[f64],
    tolerance: f64,
) -> Result<VerificationReport> {
    let g = morrey_growth(f, psi, order, cfg, scales)?;
    let mut r = VerificationReport::deviation("morrey_growth", g.exponent, 0.5, (g.exponent - 0.5).abs(), tolerance)
        .with_grid(f.grid());
    for (s, v) in g.scales.iter().zip(&g.norms) {
        r = r.budget_line(&format!("norm_at_{s}"), *v);
    }
    Ok(r)
}

/// Wavelet-perturbation, signal-perturbation and combined distance bounds at
/// one scale:
///
/// ```text
/// ||W_phi f - W_psi f||_M <= sqrt(|a|_p) ||f||_M ||phi - psi||_1
/// ||W_psi f - W_psi g||_M <= sqrt(|a|_p) ||f - g||_M ||psi||_1
/// ||W_phi f - W_psi g||_M <= sqrt(|a|_p) (||f||_M ||phi - psi||_1 + ||f - g||_M ||psi||_1)
/// ```
///
/// `diff_norm` is a closed-form `||f - g||_M` when known.
#[allow(clippy::too_many_arguments)]
pub fn morrey_distance_checks(
    f: &MorreyOperand,
    g: &SampledSignal,
    diff_norm: Option<f64>,
    phi: &WaveletSpec,
    psi: &WaveletSpec,
    a: &[f64],
    order: TransformOrder,
    cfg: &MorreyConfig,
    tolerance: f64,
) -> Result<Vec<VerificationReport>> {
    let fs = &f.signal;
    let wphi_f = cfrwt_slice(fs, phi, order, a)?;
    let wpsi_f = cfrwt_slice(fs, psi, order, a)?;
    let wpsi_g = cfrwt_slice(g, psi, order, a)?;
    let sa = abs_product(a).sqrt();
    let dwave = phi.plus(num_complex::Complex64::new(-1.0, 0.0), psi)?.l1_norm();
    let diff = MorreyOperand { signal: fs.sub(g)?, known_norm: diff_norm };
    let (nf, nd, npsi) = (f.norm(cfg)?, diff.norm(cfg)?, psi.l1_norm());

    let l43 = morrey_norm(&wphi_f.sub(&wpsi_f)?, cfg)?.value;
    let l44 = morrey_norm(&wpsi_f.sub(&wpsi_g)?, cfg)?.value;
    let l45 = morrey_norm(&wphi_f.sub(&wpsi_g)?, cfg)?.value;
    let r43 = sa * nf * dwave;
    let r44 = sa * nd * npsi;
    let grid = fs.grid();
    Ok(vec![
        VerificationReport::upper_bound("morrey_wavelet_distance", l43, r43, tolerance).with_grid(grid),
        VerificationReport::upper_bound("morrey_signal_distance", l44, r44, tolerance).with_grid(grid),
        VerificationReport::upper_bound("morrey_combined_distance", l45, r43 + r44, tolerance).with_grid(grid),
    ])
}
