// SPDX-License-Identifier: MIT

//! Dispersion moments and uncertainty inequalities in two fractional
//! domains and for the CFrWT.
//!
//! ```text
//! D_theta(f) = int |t|^(2 theta) |f(t)|^2 dt
//! D_1(F_beta f) D_1(F_alpha f) >= (n^2/4) sin^2(alpha - beta) ||f||^4
//! ```

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::cfrwt::{cfrwt_fast, CfrwtCoefficients};
use crate::error::{FrwtError, Result};
use crate::frft::{frft_fast, frft_points, TransformOrder};
use crate::grid::{l2_norm, CompensatedSum, SampledSignal};
use crate::report::VerificationReport;
use crate::wavelet::{admissibility_constant, ScaleGrid, UGrid, WaveletSpec};

/// Largest share of a moment allowed to come from the outer octave of the
/// grid.
pub const TAIL_SHARE: f64 = 0.01;
/// Two-domain Heisenberg slack.
pub const HEISENBERG_SLACK: f64 = 1e-3;
/// CFrWT Heisenberg slack.
pub const CFRWT_HEISENBERG_SLACK: f64 = 0.05;
/// Allowed distance of the small-ball slope from `2 theta / n`.
pub const SLOPE_SLACK: f64 = 0.1;

/// Moment exponent `theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentSpec {
    theta: f64,
}

impl MomentSpec {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta <= 8.0) {
            return Err(FrwtError::InvalidParameter(format!("moment exponent {theta} outside (0, 8]")));
        }
        Ok(Self { theta })
    }

    /// Exponent for local uncertainty in dimension `n`; rejects `n/2`.
    pub fn local(theta: f64, n: usize) -> Result<Self> {
        let m = Self::new(theta)?;
        if (theta - n as f64 / 2.0).abs() < 1e-6 {
            return Err(FrwtError::ThetaAtBoundary { theta });
        }
        Ok(m)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// `D_theta(f)` and the share contributed by points with `|t| > R/2`, `R`
/// the smallest per-axis half extent of the grid about the origin.
pub fn dispersion_with_tail(f: &SampledSignal, theta: f64) -> Result<(f64, f64)> {
    MomentSpec::new(theta)?;
    let grid = f.grid();
    let r = grid
        .axes()
        .iter()
        .map(|a| a.start.abs().max(a.end().abs()))
        .fold(f64::INFINITY, f64::min);
    let cut2 = 0.25 * r * r;
    let w = grid.weights().flatten();
    let mut p = vec![0.0; grid.dim()];
    let (mut total, mut tail) = (CompensatedSum::new(), CompensatedSum::new());
    for (k, z) in f.values().iter().enumerate() {
        grid.point(k, &mut p);
        let r2: f64 = p.iter().map(|v| v * v).sum();
        let v = r2.powf(theta) * z.norm_sqr() * w[k];
        total.add(v);
        if r2 > cut2 {
            tail.add(v);
        }
    }
    let (total, tail) = (total.value(), tail.value());
    Ok((total, if total > 0.0 { tail / total } else { 0.0 }))
}

/// `int |t|^(2 theta) |f(t)|^2 dt` by tensor trapezoid quadrature.
pub fn dispersion(f: &SampledSignal, theta: f64) -> Result<f64> {
    let (total, share) = dispersion_with_tail(f, theta)?;
    if share > TAIL_SHARE {
        return Err(FrwtError::TailDominated { share });
    }
    Ok(total)
}

/// Both sides of a Heisenberg-type inequality `lhs >= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub alpha: f64,
    pub beta: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub slack: f64,
    pub pass: bool,
    /// CFrWT only: the per-scale Heisenberg product normalized by the
    /// computed coefficient energy; gates `pass`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized_ratio: Option<f64>,
    /// CFrWT only: relative deviation of the moment identity
    /// `int int |xi|^2 |F_alpha W|^2 = C_{psi,alpha}/|C_alpha|^2 int |xi|^2 |F_alpha f|^2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl UncertaintyReport {
    fn new(alpha: f64, beta: f64, lhs: f64, rhs: f64, slack: f64) -> Self {
        let ratio = quotient(lhs, rhs);
        Self {
            alpha,
            beta,
            lhs,
            rhs,
            ratio,
            slack,
            pass: ratio >= 1.0 - slack,
            normalized_ratio: None,
            identity_deviation: None,
            warnings: Vec::new(),
        }
    }

    /// As a generic lower-bound record. For the CFrWT variant the ratio
    /// field carries the normalized ratio.
    pub fn to_verification(&self, name: &str) -> VerificationReport {
        let mut r = VerificationReport::lower_bound(name, self.lhs, self.rhs, self.slack);
        if let Some(nr) = self.normalized_ratio {
            r.ratio = nr;
            r.pass = self.pass;
            r = r.budget_line("raw_ratio", self.ratio);
        }
        if let Some(d) = self.identity_deviation {
            r = r.budget_line("moment_identity_deviation", d);
        }
        for w in &self.warnings {
            r = r.warn(w.clone());
        }
        r
    }
}

fn quotient(lhs: f64, rhs: f64) -> f64 {
    if rhs > 0.0 {
        lhs / rhs
    } else if lhs == 0.0 {
        1.0
    } else {
        f64::INFINITY
    }
}

fn angle_gap(alpha: TransformOrder, beta: TransformOrder) -> Result<f64> {
    let d = TransformOrder::of(alpha.alpha() - beta.alpha());
    if !d.is_generic() {
        return Err(FrwtError::InvalidAnglePair { alpha: alpha.alpha(), beta: beta.alpha() });
    }
    Ok(d.sin())
}

/// `D_1(F_beta f) D_1(F_alpha f) >= (n^2/4) sin^2(alpha - beta) ||f||^4`.
pub fn heisenberg_two_domain(
    f: &SampledSignal,
    alpha: TransformOrder,
    beta: TransformOrder,
) -> Result<UncertaintyReport> {
    let s = angle_gap(alpha, beta)?;
    let n = f.dim() as f64;
    let db = dispersion(&frft_fast(f, beta)?, 1.0)?;
    let da = dispersion(&frft_fast(f, alpha)?, 1.0)?;
    let rhs = 0.25 * n * n * s * s * l2_norm(f).powi(4);
    Ok(UncertaintyReport::new(alpha.alpha(), beta.alpha(), db * da, rhs, HEISENBERG_SLACK))
}

/// Per-scale moments of a coefficient array.
struct ScaleMoments {
    /// `int int |t|^2 |F_beta W|^2 dt da/|a|_p^2`
    time: f64,
    /// `int int |xi|^2 |F_alpha W|^2 dxi da/|a|_p^2`
    freq: f64,
    /// `int int |W|^2 db da/|a|_p^2`
    energy: f64,
    /// Largest outer-octave share over the slices.
    tail: f64,
}

fn scale_moments(coeffs: &CfrwtCoefficients, beta: TransformOrder) -> Result<ScaleMoments> {
    let alpha = coeffs.order();
    let ag = coeffs.a_grid();
    let per: Vec<(f64, f64, f64, f64)> = (0..ag.len())
        .into_par_iter()
        .map(|k| {
            let w = coeffs.slice_signal(k);
            let (t, s1) = dispersion_with_tail(&frft_fast(&w, beta)?, 1.0)?;
            let (x, s2) = dispersion_with_tail(&frft_fast(&w, alpha)?, 1.0)?;
            Ok((t, x, l2_norm(&w).powi(2), s1.max(s2)))
        })
        .collect::<Result<_>>()?;
    let (mut t, mut x, mut e) = (CompensatedSum::new(), CompensatedSum::new(), CompensatedSum::new());
    let mut tail: f64 = 0.0;
    for ((a, b, c, s), w) in per.into_iter().zip(ag.weights()) {
        t.add(a * w);
        x.add(b * w);
        e.add(c * w);
        tail = tail.max(s);
    }
    Ok(ScaleMoments { time: t.value(), freq: x.value(), energy: e.value(), tail })
}

/// CFrWT Heisenberg inequality from precomputed coefficients and
/// `C_{psi,alpha}`.
///
/// Raw ratio:
/// `[int int |t|^2 |F_beta W|^2] [int |xi|^2 |F_alpha f|^2] / ((n^2 C_{psi,alpha} / 4|C_alpha|^2) sin^2 ||f||^4)`.
/// Normalized ratio (gates the verdict):
/// `[int int |t|^2 |F_beta W|^2] [int int |xi|^2 |F_alpha W|^2] / ((n^2/4) sin^2 E_W^2)`
/// with `E_W` the computed coefficient energy, so scale truncation enters
/// both sides alike.
pub fn heisenberg_cfrwt_with(
    coeffs: &CfrwtCoefficients,
    f: &SampledSignal,
    c_psi_alpha: f64,
    beta: TransformOrder,
) -> Result<UncertaintyReport> {
    let alpha = coeffs.order();
    let s = angle_gap(alpha, beta)?;
    let n = f.dim() as f64;
    let m = scale_moments(coeffs, beta)?;
    let sf = dispersion(&frft_fast(f, alpha)?, 1.0)?;
    let c2 = alpha.c_alpha(f.dim()).norm_sqr();
    let k = c_psi_alpha / c2;
    let rhs = 0.25 * n * n * k * s * s * l2_norm(f).powi(4);
    let mut r = UncertaintyReport::new(alpha.alpha(), beta.alpha(), m.time * sf, rhs, CFRWT_HEISENBERG_SLACK);
    let norm = quotient(m.time * m.freq, 0.25 * n * n * s * s * m.energy * m.energy);
    r.normalized_ratio = Some(norm);
    r.pass = norm >= 1.0 - CFRWT_HEISENBERG_SLACK;
    let target = k * sf;
    r.identity_deviation = Some(if target > 0.0 { (m.freq - target).abs() / target } else { m.freq });
    if m.tail > TAIL_SHARE {
        r.warnings.push(format!("coefficient slices carry up to {:.3} of their moment in the outer octave", m.tail));
    }
    r.warnings.extend(coeffs.warnings().iter().cloned());
    Ok(r)
}

/// CFrWT Heisenberg inequality, computing the coefficients and the
/// admissibility constant.
pub fn heisenberg_cfrwt(
    f: &SampledSignal,
    psi: &WaveletSpec,
    alpha: TransformOrder,
    beta: TransformOrder,
    a_grid: &ScaleGrid,
    ug: &UGrid,
) -> Result<UncertaintyReport> {
    angle_gap(alpha, beta)?;
    let adm = admissibility_constant(psi, alpha, ug)?;
    adm.require_finite()?;
    let w = cfrwt_fast(f, psi, alpha, a_grid)?;
    heisenberg_cfrwt_with(&w, f, adm.c_psi_alpha, beta)
}

/// Moment identity
/// `int int |xi|^2 |F_alpha W(., a)|^2 dxi da/|a|_p^2 = C_{psi,alpha}/|C_alpha|^2 int |xi|^2 |F_alpha f|^2`
/// as a relative deviation.
pub fn moment_identity_check(
    coeffs: &CfrwtCoefficients,
    f: &SampledSignal,
    c_psi_alpha: f64,
    tolerance: f64,
) -> Result<VerificationReport> {
    let alpha = coeffs.order();
    let m = scale_moments(coeffs, alpha)?;
    let rhs = c_psi_alpha / alpha.c_alpha(f.dim()).norm_sqr() * dispersion(&frft_fast(f, alpha)?, 1.0)?;
    let dev = if rhs > 0.0 { (m.freq - rhs).abs() / rhs } else { m.freq };
    Ok(VerificationReport::deviation("moment_identity", m.freq, rhs, dev, tolerance).with_grid(f.grid()))
}

/// Ball or axis-aligned box in the fractional domain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Region {
    Ball { center: Vec<f64>, radius: f64 },
    Box { lo: Vec<f64>, hi: Vec<f64> },
}

/// Composite Simpson nodes and weights on `[lo, hi]` with `panels` (even)
/// subintervals.
fn simpson(lo: f64, hi: f64, panels: usize) -> (Vec<f64>, Vec<f64>) {
    let m = panels.max(2).next_multiple_of(2);
    let h = (hi - lo) / m as f64;
    let x = (0..=m).map(|k| lo + k as f64 * h).collect();
    let w = (0..=m)
        .map(|k| {
            let c = if k == 0 || k == m {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            c * h / 3.0
        })
        .collect();
    (x, w)
}

impl Region {
    pub fn ball(center: Vec<f64>, radius: f64) -> Self {
        Region::Ball { center, radius }
    }

    pub fn dim(&self) -> usize {
        match self {
            Region::Ball { center, .. } => center.len(),
            Region::Box { lo, .. } => lo.len(),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self {
            Region::Ball { center, radius } => {
                *radius > 0.0 && radius.is_finite() && !center.is_empty() && center.len() <= 3
            }
            Region::Box { lo, hi } => {
                !lo.is_empty() && lo.len() == hi.len() && lo.iter().zip(hi).all(|(a, b)| b > a)
            }
        };
        if !ok {
            return Err(FrwtError::InvalidParameter(format!("region {self:?} has no interior")));
        }
        Ok(())
    }

    /// Lebesgue measure.
    pub fn measure(&self) -> f64 {
        match self {
            Region::Ball { center, radius } => {
                let n = center.len() as f64;
                PI.powf(n / 2.0) / statrs::function::gamma::gamma(n / 2.0 + 1.0) * radius.powf(n)
            }
            Region::Box { lo, hi } => lo.iter().zip(hi).map(|(a, b)| b - a).product(),
        }
    }

    /// Product quadrature: Simpson in every Cartesian or radial/polar
    /// coordinate, trapezoid in the periodic azimuth.
    pub fn quadrature(&self, panels: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
        let mut pts = Vec::new();
        let mut wts = Vec::new();
        match self {
            Region::Box { lo, hi } => {
                let rules: Vec<_> = lo.iter().zip(hi).map(|(a, b)| simpson(*a, *b, panels)).collect();
                let shape: Vec<usize> = rules.iter().map(|r| r.0.len()).collect();
                let total: usize = shape.iter().product();
                for mut flat in 0..total {
                    let mut p = vec![0.0; shape.len()];
                    let mut w = 1.0;
                    for i in (0..shape.len()).rev() {
                        let k = flat % shape[i];
                        flat /= shape[i];
                        p[i] = rules[i].0[k];
                        w *= rules[i].1[k];
                    }
                    pts.push(p);
                    wts.push(w);
                }
            }
            Region::Ball { center, radius } => {
                let (rs, rw) = simpson(0.0, *radius, panels);
                let az = 2 * panels;
                let dphi = 2.0 * PI / az as f64;
                match center.len() {
                    1 => return Region::Box { lo: vec![center[0] - radius], hi: vec![center[0] + radius] }.quadrature(panels),
                    2 => {
                        for (r, w) in rs.iter().zip(&rw) {
                            for j in 0..az {
                                let (s, c) = (j as f64 * dphi).sin_cos();
                                pts.push(vec![center[0] + r * c, center[1] + r * s]);
                                wts.push(w * r * dphi);
                            }
                        }
                    }
                    _ => {
                        let (ths, thw) = simpson(0.0, PI, panels);
                        for (r, w) in rs.iter().zip(&rw) {
                            for (th, tw) in ths.iter().zip(&thw) {
                                let (st, ct) = th.sin_cos();
                                for j in 0..az {
                                    let (s, c) = (j as f64 * dphi).sin_cos();
                                    pts.push(vec![
                                        center[0] + r * st * c,
                                        center[1] + r * st * s,
                                        center[2] + r * ct,
                                    ]);
                                    wts.push(w * tw * r * r * st * dphi);
                                }
                            }
                        }
                    }
                }
            }
        }
        (pts, wts)
    }
}

/// Quadrature panels per coordinate for region integrals.
pub const REGION_PANELS: usize = 64;

/// `int_E |F_alpha f|^2`, evaluating the transform directly at the
/// quadrature nodes.
pub fn region_energy(f: &SampledSignal, alpha: TransformOrder, region: &Region) -> Result<f64> {
    region.validate()?;
    if region.dim() != f.dim() {
        return Err(FrwtError::DimensionMismatch { expected: f.dim(), got: region.dim() });
    }
    let panels = if f.dim() == 1 { REGION_PANELS } else { REGION_PANELS / 4 };
    let (pts, wts) = region.quadrature(panels);
    let v = frft_points(f, alpha, &pts)?;
    let mut acc = CompensatedSum::new();
    v.iter().zip(&wts).for_each(|(z, w)| acc.add(z.norm_sqr() * w));
    Ok(acc.value())
}

/// Region energy identity
/// `int int_E |F_alpha W(., a)|^2 dxi da/|a|_p^2 = C_{psi,alpha}/|C_alpha|^2 int_E |F_alpha f|^2`.
pub fn region_identity_check(
    coeffs: &CfrwtCoefficients,
    f: &SampledSignal,
    c_psi_alpha: f64,
    region: &Region,
    tolerance: f64,
) -> Result<VerificationReport> {
    let alpha = coeffs.order();
    let ag = coeffs.a_grid();
    let per: Vec<f64> = (0..ag.len())
        .into_par_iter()
        .map(|k| region_energy(&coeffs.slice_signal(k), alpha, region))
        .collect::<Result<_>>()?;
    let mut acc = CompensatedSum::new();
    per.iter().zip(ag.weights()).for_each(|(e, w)| acc.add(e * w));
    let lhs = acc.value();
    let rhs = c_psi_alpha / alpha.c_alpha(f.dim()).norm_sqr() * region_energy(f, alpha, region)?;
    let dev = if rhs > 0.0 { (lhs - rhs).abs() / rhs } else { lhs };
    Ok(VerificationReport::deviation("region_energy_identity", lhs, rhs, dev, tolerance).with_grid(f.grid()))
}

/// Which side of `theta = n/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `theta < n/2`: bound `sin^-2theta lambda^(2 theta/n) D_theta(F_beta f)`.
    Below,
    /// `theta > n/2`: bound `sin^-n lambda ||f||^(2 - n/theta) D_theta(F_beta f)^(n/2theta)`.
    Above,
}

/// One `(signal, region)` evaluation with `A_theta = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalEntry {
    pub signal: usize,
    pub region: Region,
    pub measure: f64,
    pub energy: f64,
    pub bound: f64,
    pub ratio: f64,
}

/// Log-log fit of region energy against measure over concentric balls.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeFit {
    pub signal: usize,
    pub center: Vec<f64>,
    pub slope: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalUncertaintyReport {
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub branch: Branch,
    pub entries: Vec<LocalEntry>,
    /// Empirical constant: the largest ratio over all entries.
    pub a_theta: f64,
    pub argmax: usize,
    /// Below branch only: one fit per signal and ball center with at least
    /// three radii.
    pub slopes: Vec<SlopeFit>,
    /// `2 theta / n`.
    pub exponent: f64,
}

impl LocalUncertaintyReport {
    pub fn max_slope(&self) -> Option<f64> {
        self.slopes.iter().map(|s| s.slope).reduce(f64::max)
    }

    pub fn min_slope(&self) -> Option<f64> {
        self.slopes.iter().map(|s| s.slope).reduce(f64::min)
    }

    /// Every small-ball slope is at most `2 theta / n + 0.1`.
    pub fn slope_upper_holds(&self) -> bool {
        self.max_slope().is_some_and(|s| s <= self.exponent + SLOPE_SLACK)
    }

    /// Every small-ball slope is at least `2 theta / n - 0.1`, i.e. the
    /// energy shrinks at least as fast as `lambda^(2 theta/n)`.
    pub fn slope_lower_holds(&self) -> bool {
        self.min_slope().is_some_and(|s| s >= self.exponent - SLOPE_SLACK)
    }
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// Local uncertainty ratios
/// `int_E |F_alpha f|^2 / bound_theta(E, f)` with `A_theta = 1` over every
/// signal and region, the empirical constant and small-ball slopes.
pub fn local_uncertainty_scan(
    family: &[SampledSignal],
    alpha: TransformOrder,
    beta: TransformOrder,
    theta: f64,
    regions: &[Region],
) -> Result<LocalUncertaintyReport> {
    let Some(first) = family.first() else {
        return Err(FrwtError::EmptyScan);
    };
    if regions.is_empty() {
        return Err(FrwtError::EmptyScan);
    }
    let n = first.dim();
    MomentSpec::local(theta, n)?;
    alpha.require_generic()?;
    let s = angle_gap(alpha, beta)?.abs();
    let nf = n as f64;
    let branch = if theta < nf / 2.0 { Branch::Below } else { Branch::Above };
    let per: Vec<Vec<LocalEntry>> = family
        .par_iter()
        .enumerate()
        .map(|(i, f)| {
            if f.dim() != n {
                return Err(FrwtError::DimensionMismatch { expected: n, got: f.dim() });
            }
            let d = dispersion(&frft_fast(f, beta)?, theta)?;
            let norm2 = l2_norm(f).powi(2);
            regions
                .iter()
                .map(|e| {
                    let lam = e.measure();
                    let energy = region_energy(f, alpha, e)?;
                    let bound = match branch {
                        Branch::Below => s.powf(-2.0 * theta) * lam.powf(2.0 * theta / nf) * d,
                        Branch::Above => {
                            s.powf(-nf) * lam * norm2.powf(1.0 - nf / (2.0 * theta)) * d.powf(nf / (2.0 * theta))
                        }
                    };
                    let ratio = if bound > 0.0 { energy / bound } else { 0.0 };
                    Ok(LocalEntry { signal: i, region: e.clone(), measure: lam, energy, bound, ratio })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let entries: Vec<LocalEntry> = per.into_iter().flatten().collect();
    let (argmax, a_theta) = entries
        .iter()
        .enumerate()
        .map(|(k, e)| (k, e.ratio))
        .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });

    let mut slopes = Vec::new();
    if branch == Branch::Below {
        for i in 0..family.len() {
            let mut centers: Vec<&Vec<f64>> = Vec::new();
            for e in entries.iter().filter(|e| e.signal == i) {
                if let Region::Ball { center, .. } = &e.region {
                    if !centers.contains(&center) {
                        centers.push(center);
                    }
                }
            }
            for c in centers {
                let (xs, ys): (Vec<f64>, Vec<f64>) = entries
                    .iter()
                    .filter(|e| e.signal == i && e.energy > 0.0)
                    .filter(|e| matches!(&e.region, Region::Ball { center, .. } if center == c))
                    .map(|e| (e.measure.ln(), e.energy.ln()))
                    .unzip();
                if xs.len() >= 3 {
                    slopes.push(SlopeFit { signal: i, center: c.clone(), slope: fit_slope(&xs, &ys), points: xs.len() });
                }
            }
        }
    }
    Ok(LocalUncertaintyReport {
        theta,
        alpha: alpha.alpha(),
        beta: beta.alpha(),
        branch,
        entries,
        a_theta,
        argmax,
        slopes,
        exponent: 2.0 * theta / nf,
    })
}

/// Concentric balls with log-spaced radii in `[r_min, r_max]`.
pub fn nested_balls(center: &[f64], r_min: f64, r_max: f64, count: usize) -> Vec<Region> {
    let count = count.max(2);
    let q = (r_max / r_min).ln() / (count - 1) as f64;
    (0..count).map(|k| Region::ball(center.to_vec(), r_min * (k as f64 * q).exp())).collect()
}
