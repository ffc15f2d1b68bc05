// SPDX-License-Identifier: MIT

//! Mother wavelets, fractional daughters, scale grids and admissibility
//! constants.
//!
//! A wavelet is a finite sum of separable terms `c * prod_i p_i(t_i)`, where
//! every axis profile `p_i` is a sum of `poly(t) exp(-t^2/2) exp(i w t)`
//! pieces. That covers the catalog (Mexican hat, Morlet, derivatives of
//! Gaussian, raw Gaussian), tensor products of them, and linear combinations
//! of wavelets.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{FrwtError, Result};
use crate::frft::{frft_points, TransformOrder};
use crate::grid::{Grid, SampledSignal};

/// `coef * poly(t) * exp(-t^2/2) * exp(i freq t)`, `poly` in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub coef: Complex64,
    pub poly: Vec<f64>,
    pub freq: f64,
}

impl Piece {
    fn eval(&self, t: f64) -> Complex64 {
        let p = self.poly.iter().rev().fold(0.0, |acc, c| acc * t + c);
        self.coef * p * (-0.5 * t * t).exp() * Complex64::from_polar(1.0, self.freq * t)
    }

    /// Unitary Fourier transform, from `FT[t^k g](u) = (-i)^k He_k(u) g(u)`
    /// for `g = exp(-t^2/2)` and the modulation shift.
    fn spectrum(&self, u: f64) -> Complex64 {
        let v = u - self.freq;
        let mut acc = Complex64::new(0.0, 0.0);
        let (mut h0, mut h1) = (1.0, v);
        let mut phase = Complex64::new(1.0, 0.0);
        for (k, c) in self.poly.iter().enumerate() {
            let hk = match k {
                0 => 1.0,
                1 => v,
                _ => {
                    let h2 = v * h1 - (k - 1) as f64 * h0;
                    h0 = h1;
                    h1 = h2;
                    h2
                }
            };
            acc += phase * c * hk;
            phase *= Complex64::new(0.0, -1.0);
        }
        self.coef * acc * (-0.5 * v * v).exp()
    }
}

/// One-dimensional factor: a sum of pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub pieces: Vec<Piece>,
}

impl Profile {
    pub fn eval(&self, t: f64) -> Complex64 {
        self.pieces.iter().map(|p| p.eval(t)).sum()
    }

    pub fn spectrum(&self, u: f64) -> Complex64 {
        self.pieces.iter().map(|p| p.spectrum(u)).sum()
    }

    /// Smallest `r` with `|p(t)| <= level * max|p|` for all `|t| >= r`.
    fn radius(&self, level: f64) -> f64 {
        let h = 0.01;
        let vals: Vec<f64> = (0..=8000).map(|k| self.eval(k as f64 * h).norm().max(self.eval(-(k as f64) * h).norm())).collect();
        let peak = vals.iter().cloned().fold(0.0, f64::max);
        let last = vals.iter().rposition(|v| *v > level * peak).unwrap_or(0);
        (last + 1) as f64 * h
    }
}

/// Separable term `coef * prod_i factors[i](t_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coef: Complex64,
    pub factors: Vec<Profile>,
}

/// Mother wavelet on R^n.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletSpec {
    name: String,
    dim: usize,
    terms: Vec<Term>,
    support_radius: f64,
    tail_radius: f64,
}

/// Catalog names accepted by [`WaveletSpec::catalog`].
pub const CATALOG: &[&str] =
    &["mexican_hat", "morlet", "gaussian", "dog1", "dog2", "dog3", "dog4", "dog5", "dog6", "dog7", "dog8"];

/// Morlet center frequency.
pub const MORLET_W0: f64 = 6.0;

fn hermite_poly(m: usize) -> Vec<f64> {
    let mut h0 = vec![1.0];
    if m == 0 {
        return h0;
    }
    let mut h1 = vec![0.0, 1.0];
    for k in 1..m {
        let mut h2 = vec![0.0; k + 2];
        for (j, c) in h1.iter().enumerate() {
            h2[j + 1] += c;
        }
        for (j, c) in h0.iter().enumerate() {
            h2[j] -= k as f64 * c;
        }
        h0 = h1;
        h1 = h2;
    }
    h1
}

fn dog_profile(m: usize) -> Profile {
    // sign makes the spectrum (-i u)^m e^{-u^2/2} times +-1 real for even m
    let s = if m % 2 == 0 { (-1f64).powi((m / 2) as i32) } else { (-1f64).powi(((m - 1) / 2) as i32) };
    let poly = hermite_poly(m).into_iter().map(|c| s * c).collect();
    Profile { pieces: vec![Piece { coef: Complex64::new(1.0, 0.0), poly, freq: 0.0 }] }
}

fn catalog_profile(name: &str) -> Result<Profile> {
    let one = Complex64::new(1.0, 0.0);
    Ok(match name {
        "mexican_hat" => dog_profile(2),
        "gaussian" => Profile { pieces: vec![Piece { coef: one, poly: vec![1.0], freq: 0.0 }] },
        "morlet" => {
            let k = PI.powf(-0.25);
            let corr = (-0.5 * MORLET_W0 * MORLET_W0).exp();
            Profile {
                pieces: vec![
                    Piece { coef: Complex64::new(k, 0.0), poly: vec![1.0], freq: MORLET_W0 },
                    Piece { coef: Complex64::new(-k * corr, 0.0), poly: vec![1.0], freq: 0.0 },
                ],
            }
        }
        _ => {
            let m = name
                .strip_prefix("dog")
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|m| (1..=8).contains(m))
                .ok_or_else(|| FrwtError::UnknownWavelet(name.to_string()))?;
            dog_profile(m)
        }
    })
}

impl WaveletSpec {
    pub fn from_terms(name: &str, dim: usize, terms: Vec<Term>) -> Result<Self> {
        if dim == 0 || dim > crate::grid::MAX_DIM {
            return Err(FrwtError::InvalidParameter(format!("dimension {dim}")));
        }
        if terms.is_empty() || terms.iter().any(|t| t.factors.len() != dim) {
            return Err(FrwtError::DimensionMismatch {
                expected: dim,
                got: terms.first().map(|t| t.factors.len()).unwrap_or(0),
            });
        }
        let radius = |level: f64| {
            terms.iter().flat_map(|t| t.factors.iter()).map(|p| p.radius(level)).fold(0.0, f64::max)
        };
        Ok(Self {
            name: name.to_string(),
            dim,
            support_radius: radius(1e-12),
            tail_radius: radius(1e-8),
            terms,
        })
    }

    /// Catalog wavelet; in `n` dimensions the tensor power of the 1-D
    /// profile.
    pub fn catalog(name: &str, dim: usize) -> Result<Self> {
        let p = catalog_profile(name)?;
        let term = Term { coef: Complex64::new(1.0, 0.0), factors: vec![p; dim] };
        Self::from_terms(name, dim, vec![term])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Radius beyond which every profile is below `1e-12` of its peak.
    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    /// Radius beyond which every profile is below `1e-8` of its peak.
    pub fn tail_radius(&self) -> f64 {
        self.tail_radius
    }

    pub fn is_separable(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn eval(&self, t: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|term| term.coef * term.factors.iter().zip(t).map(|(p, x)| p.eval(*x)).product::<Complex64>())
            .sum()
    }

    /// Closed-form unitary Fourier transform.
    pub fn classical_spectrum(&self, u: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|term| term.coef * term.factors.iter().zip(u).map(|(p, x)| p.spectrum(*x)).product::<Complex64>())
            .sum()
    }

    /// Samples the mother wavelet on `grid`.
    pub fn eval_on(&self, grid: &Grid) -> SampledSignal {
        SampledSignal::from_fn(grid.clone(), |x| self.eval(x))
    }

    /// `c * psi`.
    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.terms.iter_mut().for_each(|t| t.coef *= c);
        out.name = format!("({c})*{}", self.name);
        out
    }

    /// `self + c * other`.
    pub fn plus(&self, c: Complex64, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(FrwtError::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|t| Term { coef: t.coef * c, factors: t.factors.clone() }));
        Self::from_terms(&format!("{}+({c})*{}", self.name, other.name), self.dim, terms)
    }

    /// Sampling grid covering the support with `per_axis` points.
    fn quadrature_grid(&self, per_axis: usize) -> Grid {
        let r = self.support_radius + 1.0;
        Grid::centered(self.dim, r, per_axis).expect("valid grid")
    }

    fn per_axis_points(&self) -> usize {
        match self.dim {
            1 => 8192,
            2 => 1024,
            _ => 160,
        }
    }

    /// L1 norm by quadrature (exact factorization for separable wavelets).
    pub fn l1_norm(&self) -> f64 {
        if self.is_separable() {
            let term = &self.terms[0];
            let g = Grid::centered(1, self.support_radius + 1.0, 8192).expect("valid grid");
            return term.coef.norm()
                * term
                    .factors
                    .iter()
                    .map(|p| crate::grid::l1_norm(&SampledSignal::from_fn(g.clone(), |x| p.eval(x[0]))))
                    .product::<f64>();
        }
        let g = self.quadrature_grid(self.per_axis_points());
        crate::grid::l1_norm(&SampledSignal::from_fn(g, |x| self.eval(x)))
    }

    /// L2 norm by quadrature.
    pub fn l2_norm(&self) -> f64 {
        let g = self.quadrature_grid(self.per_axis_points());
        crate::grid::l2_norm(&SampledSignal::from_fn(g, |x| self.eval(x)))
    }
}

/// Shift, scale and order of one daughter wavelet.
#[derive(Debug, Clone, PartialEq)]
pub struct DaughterParams {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub alpha: TransformOrder,
}

impl DaughterParams {
    pub fn new(a: Vec<f64>, b: Vec<f64>, alpha: TransformOrder) -> Result<Self> {
        if a.len() != b.len() {
            return Err(FrwtError::DimensionMismatch { expected: a.len(), got: b.len() });
        }
        if a.iter().any(|x| *x == 0.0 || !x.is_finite()) {
            return Err(FrwtError::ZeroScaleComponent);
        }
        Ok(Self { a, b, alpha })
    }

    /// `|a|_p = |a_1 ... a_n|`
    pub fn abs_product(&self) -> f64 {
        self.a.iter().map(|x| x.abs()).product()
    }
}

/// Daughter value `|a|_p^-1/2 psi((t - b)/a) exp(-(i/2)(|t|^2 - |b|^2) cot alpha)`.
pub(crate) fn daughter_value(psi: &WaveletSpec, p: &DaughterParams, cot: f64, norm: f64, t: &[f64], buf: &mut [f64]) -> Complex64 {
    let mut r2 = 0.0;
    for i in 0..t.len() {
        buf[i] = (t[i] - p.b[i]) / p.a[i];
        r2 += t[i] * t[i] - p.b[i] * p.b[i];
    }
    psi.eval(buf) * norm * Complex64::from_polar(1.0, -0.5 * r2 * cot)
}

/// Samples the daughter wavelet on `grid` without a coverage check.
pub(crate) fn sample_daughter(psi: &WaveletSpec, p: &DaughterParams, grid: &Grid) -> SampledSignal {
    let cot = p.alpha.cot();
    let norm = 1.0 / p.abs_product().sqrt();
    let mut buf = vec![0.0; grid.dim()];
    let mut pt = vec![0.0; grid.dim()];
    let values = (0..grid.len())
        .map(|k| {
            grid.point(k, &mut pt);
            daughter_value(psi, p, cot, norm, &pt, &mut buf)
        })
        .collect();
    SampledSignal::new(grid.clone(), values).expect("finite samples")
}

/// Samples the fractional daughter wavelet on `grid`.
pub fn make_daughter(psi: &WaveletSpec, params: &DaughterParams, grid: &Grid) -> Result<SampledSignal> {
    params.alpha.require_generic()?;
    if params.a.len() != psi.dim() || grid.dim() != psi.dim() {
        return Err(FrwtError::DimensionMismatch { expected: psi.dim(), got: grid.dim() });
    }
    for (i, ax) in grid.axes().iter().enumerate() {
        let reach = psi.tail_radius() * params.a[i].abs();
        let slack = 1e-9 * ax.step;
        if params.b[i] - reach < ax.start - slack || params.b[i] + reach > ax.end() + slack {
            return Err(FrwtError::GridTooSmall { axis: i });
        }
    }
    Ok(sample_daughter(psi, params, grid))
}

/// Log-spaced scale magnitudes with both signs per dimension.
///
/// Magnitudes are midpoints of `m` equal cells in `log|a|` on
/// `[a_min, a_max]`; every point carries the weight `prod_i dlog / |a_i|`
/// realizing `da / |a|_p^2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleGrid {
    pub dim: usize,
    pub a_min: f64,
    pub a_max: f64,
    pub count: usize,
    points: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl ScaleGrid {
    pub fn new(dim: usize, a_min: f64, a_max: f64, count: usize) -> Result<Self> {
        if !(a_min > 0.0 && a_max > a_min && a_max.is_finite()) || count == 0 {
            return Err(FrwtError::InvalidParameter(format!(
                "scale range [{a_min}, {a_max}] with {count} points"
            )));
        }
        if dim == 0 || dim > crate::grid::MAX_DIM {
            return Err(FrwtError::InvalidParameter(format!("dimension {dim}")));
        }
        let dl = (a_max / a_min).ln() / count as f64;
        let mags: Vec<f64> = (0..count).map(|k| a_min * ((k as f64 + 0.5) * dl).exp()).collect();
        let axis: Vec<f64> = mags.iter().rev().map(|m| -m).chain(mags.iter().cloned()).collect();
        let mut points = vec![vec![]];
        for _ in 0..dim {
            points = points
                .into_iter()
                .flat_map(|p| {
                    axis.iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(*v);
                        q
                    })
                })
                .collect();
        }
        let weights = points.iter().map(|p| p.iter().map(|v| dl / v.abs()).product()).collect();
        Ok(Self { dim, a_min, a_max, count, points, weights })
    }

    /// Default 1-D grid: 64 magnitudes per sign on `[2^-4, 2^4]`.
    pub fn default_1d() -> Self {
        Self::new(1, 0.0625, 16.0, 64).expect("valid")
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Weights for `da / |a|_p^2`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weights for `da / |a|_p`.
    pub fn weights_inv_abs(&self) -> Vec<f64> {
        self.points.iter().zip(&self.weights).map(|(p, w)| w * p.iter().map(|v| v.abs()).product::<f64>()).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest `|a_i|` over the grid.
    pub fn max_abs(&self) -> f64 {
        let dl = (self.a_max / self.a_min).ln() / self.count as f64;
        self.a_min * ((self.count as f64 - 0.5) * dl).exp()
    }

    /// Points with some `|a_i|` in the first or last octave of the range.
    pub fn edge_octave_mask(&self) -> Vec<bool> {
        let (lo, hi) = (2.0 * self.a_min, 0.5 * self.a_max);
        self.points.iter().map(|p| p.iter().any(|v| v.abs() < lo || v.abs() > hi)).collect()
    }
}

/// Frequency grid for admissibility integrals: per-dimension symmetric
/// log grid on `+-[u_min, u_max]`, plus `halvings` bands `[u_min/2^k, u_min/2^(k-1)]`
/// used for the convergence trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UGrid {
    pub u_min: f64,
    pub u_max: f64,
    pub per_decade: usize,
    pub halvings: usize,
}

impl Default for UGrid {
    fn default() -> Self {
        Self { u_min: 1e-4, u_max: 32.0, per_decade: 256, halvings: 6 }
    }
}

impl UGrid {
    fn validate(&self) -> Result<()> {
        if !(self.u_min > 0.0 && self.u_max > self.u_min) || self.per_decade < 4 {
            return Err(FrwtError::InvalidParameter(format!(
                "u grid [{}, {}] with {} per decade",
                self.u_min, self.u_max, self.per_decade
            )));
        }
        Ok(())
    }

    /// Log-space nodes and trapezoid weights (in `ds = du/|u|`) on `[lo, hi]`.
    fn nodes(&self, lo: f64, hi: f64) -> (Vec<f64>, Vec<f64>) {
        let span = (hi / lo).ln();
        let m = ((span / 10f64.ln() * self.per_decade as f64).ceil() as usize).max(2);
        let ds = span / m as f64;
        let s: Vec<f64> = (0..=m).map(|k| lo * (k as f64 * ds).exp()).collect();
        let w = (0..=m).map(|k| if k == 0 || k == m { 0.5 * ds } else { ds }).collect();
        (s, w)
    }

    /// Segments: index 0 is the base range, `k >= 1` the k-th halving band.
    fn segments(&self) -> Vec<(f64, f64)> {
        let mut v = vec![(self.u_min, self.u_max)];
        for k in 1..=self.halvings {
            let hi = self.u_min / 2f64.powi(k as i32 - 1);
            v.push((hi / 2.0, hi));
        }
        v
    }
}

/// Finiteness verdict for an admissibility integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Finite,
    Divergent,
    Undetermined,
}

/// Relative change per halving regarded as converged.
pub const FINITE_DRIFT: f64 = 1e-2;
/// Drift of a converged admissible integral; divergence requires ten times
/// this per halving.
pub const ADMISSIBLE_DRIFT: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    /// `C_{psi,alpha}` at the smallest `u_min`.
    pub c_psi_alpha: f64,
    /// `C_{phi,psi,alpha}` as (re, im), when two wavelets were given.
    pub c_phi_psi_alpha: Option<(f64, f64)>,
    /// Integral of `|Phi| |Psi| / |u|_p` (an upper bound for multi-term
    /// wavelets in more than one dimension).
    pub abs_cross: Option<f64>,
    pub verdict: Verdict,
    /// `(u_min, value)` for the base range and every halving.
    pub trace: Vec<(f64, f64)>,
}

impl AdmissibilityReport {
    pub fn cross(&self) -> Option<Complex64> {
        self.c_phi_psi_alpha.map(|(re, im)| Complex64::new(re, im))
    }

    pub fn require_finite(&self) -> Result<()> {
        if self.verdict == Verdict::Divergent {
            return Err(FrwtError::InadmissibleWavelet { trace: self.trace.clone() });
        }
        Ok(())
    }
}

/// Classifies a cumulative trace.
pub fn classify(trace: &[(f64, f64)]) -> Verdict {
    let incs: Vec<f64> = trace
        .windows(2)
        .map(|w| if w[0].1.abs() > 0.0 { (w[1].1 - w[0].1) / w[0].1.abs() } else { f64::INFINITY })
        .collect();
    let Some(last) = incs.last() else {
        return Verdict::Undetermined;
    };
    if last.abs() < FINITE_DRIFT {
        return Verdict::Finite;
    }
    let thr = 10.0 * ADMISSIBLE_DRIFT;
    let steps: Vec<f64> = trace.windows(2).map(|w| w[1].1 - w[0].1).collect();
    for k in 2..incs.len() {
        let run = &incs[k - 2..=k];
        let inc = &steps[k - 2..=k];
        let growing = run.iter().all(|r| *r > thr);
        let steady = inc.windows(2).all(|p| p[0] > 0.0 && (0.5..=2.0).contains(&(p[1] / p[0])));
        if growing && steady {
            return Verdict::Divergent;
        }
    }
    Verdict::Undetermined
}

/// Sample step for numerically transforming a profile up to frequency `u`.
fn sample_step(order: TransformOrder, u_max: f64) -> f64 {
    0.05f64.min(PI / (2.0 * u_max * order.csc().abs()))
}

/// `Phi_alpha(u) = F_alpha{exp(-(i/2) t^2 cot alpha) p}(u)` at the given
/// 1-D points, by direct quadrature on a fine sample grid.
pub fn chirped_spectrum_1d(p: &Profile, order: TransformOrder, u: &[f64], u_max: f64) -> Result<Vec<Complex64>> {
    order.require_generic()?;
    let r = p.radius(1e-12) + 2.0;
    let h = sample_step(order, u_max);
    let n = (2.0 * r / h).ceil() as usize + 1;
    let g = Grid::uniform_1d(-r, 2.0 * r / (n - 1) as f64, n)?;
    let cot = order.cot();
    let s = SampledSignal::from_fn(g, |t| p.eval(t[0]) * Complex64::from_polar(1.0, -0.5 * t[0] * t[0] * cot));
    let pts: Vec<Vec<f64>> = u.iter().map(|x| vec![*x]).collect();
    frft_points(&s, order, &pts)
}

/// `C_{phi,psi,alpha}`-type integrals of two 1-D profiles per segment:
/// returns (int conj(Phi) Psi / |u| du, int |Phi||Psi| / |u| du).
fn cross_1d(phi: &Profile, psi: &Profile, order: TransformOrder, ug: &UGrid) -> Result<Vec<(Complex64, f64)>> {
    ug.segments()
        .into_par_iter()
        .map(|(lo, hi)| {
            let (s, w) = ug.nodes(lo, hi);
            let u: Vec<f64> = s.iter().map(|v| -v).chain(s.iter().cloned()).collect();
            let ww: Vec<f64> = w.iter().chain(w.iter()).cloned().collect();
            let a = chirped_spectrum_1d(phi, order, &u, ug.u_max)?;
            let b = if phi == psi { a.clone() } else { chirped_spectrum_1d(psi, order, &u, ug.u_max)? };
            let mut c = crate::grid::ComplexSum::new();
            let mut m = crate::grid::CompensatedSum::new();
            for ((x, y), wk) in a.iter().zip(&b).zip(&ww) {
                c.add(x.conj() * y * *wk);
                m.add(x.norm() * y.norm() * wk);
            }
            Ok((c.value(), m.value()))
        })
        .collect()
}

/// Cumulative per-segment cross integrals of two wavelets, combining the
/// separable terms: `sum_{k,l} conj(c_k) c_l prod_i I(p_{k,i}, q_{l,i})`.
fn cross_trace(phi: &WaveletSpec, psi: &WaveletSpec, order: TransformOrder, ug: &UGrid) -> Result<(Vec<Complex64>, Vec<f64>)> {
    ug.validate()?;
    order.require_generic()?;
    if phi.dim() != psi.dim() {
        return Err(FrwtError::DimensionMismatch { expected: phi.dim(), got: psi.dim() });
    }
    let nseg = ug.halvings + 1;
    let mut value = vec![Complex64::new(0.0, 0.0); nseg];
    let mut bound = vec![0.0; nseg];
    for tk in phi.terms() {
        for tl in psi.terms() {
            // cumulative 1-D integrals per axis
            let mut per_axis = Vec::with_capacity(phi.dim());
            for (p, q) in tk.factors.iter().zip(&tl.factors) {
                let segs = cross_1d(p, q, order, ug)?;
                let mut acc = (Complex64::new(0.0, 0.0), 0.0);
                let cum: Vec<(Complex64, f64)> = segs
                    .into_iter()
                    .map(|(c, m)| {
                        acc.0 += c;
                        acc.1 += m;
                        acc
                    })
                    .collect();
                per_axis.push(cum);
            }
            let coef = tk.coef.conj() * tl.coef;
            for k in 0..nseg {
                value[k] += coef * per_axis.iter().map(|v| v[k].0).product::<Complex64>();
                bound[k] += coef.norm() * per_axis.iter().map(|v| v[k].1).product::<f64>();
            }
        }
    }
    Ok((value, bound))
}

fn trace_of(ug: &UGrid, vals: &[f64]) -> Vec<(f64, f64)> {
    vals.iter().enumerate().map(|(k, v)| (ug.u_min / 2f64.powi(k as i32), *v)).collect()
}

/// Exact `int |Phi||Psi| / |u|` for one-dimensional wavelets.
fn abs_cross_1d(phi: &WaveletSpec, psi: &WaveletSpec, order: TransformOrder, ug: &UGrid) -> Result<Vec<f64>> {
    let full = |w: &WaveletSpec| Profile {
        pieces: w
            .terms()
            .iter()
            .flat_map(|t| t.factors[0].pieces.iter().map(move |p| Piece { coef: p.coef * t.coef, ..p.clone() }))
            .collect(),
    };
    let (p, q) = (full(phi), full(psi));
    let segs = cross_1d(&p, &q, order, ug)?;
    let mut acc = 0.0;
    Ok(segs
        .into_iter()
        .map(|(_, m)| {
            acc += m;
            acc
        })
        .collect())
}

/// `C_{psi,alpha} = int |F_alpha{exp(-(i/2)|.|^2 cot alpha) psi}(u)|^2 / |u|_p du`.
pub fn admissibility_constant(psi: &WaveletSpec, order: TransformOrder, ug: &UGrid) -> Result<AdmissibilityReport> {
    let (v, _) = cross_trace(psi, psi, order, ug)?;
    let vals: Vec<f64> = v.iter().map(|z| z.re.max(0.0)).collect();
    let trace = trace_of(ug, &vals);
    Ok(AdmissibilityReport {
        c_psi_alpha: *vals.last().expect("nonempty"),
        c_phi_psi_alpha: None,
        abs_cross: None,
        verdict: classify(&trace),
        trace,
    })
}

/// `C_{phi,psi,alpha} = int conj(Phi_alpha(u)) Psi_alpha(u) / |u|_p du`
/// together with the absolute integrability integral. `c_psi_alpha` holds
/// `C_{psi,alpha}`; the verdict and trace refer to the absolute integral.
pub fn cross_admissibility(
    phi: &WaveletSpec,
    psi: &WaveletSpec,
    order: TransformOrder,
    ug: &UGrid,
) -> Result<AdmissibilityReport> {
    let (v, bound) = cross_trace(phi, psi, order, ug)?;
    let abs = if phi.dim() == 1 && !(phi.is_separable() && psi.is_separable()) {
        abs_cross_1d(phi, psi, order, ug)?
    } else {
        bound
    };
    let own = admissibility_constant(psi, order, ug)?;
    let trace = trace_of(ug, &abs);
    let c = *v.last().expect("nonempty");
    Ok(AdmissibilityReport {
        c_psi_alpha: own.c_psi_alpha,
        c_phi_psi_alpha: Some((c.re, c.im)),
        abs_cross: Some(*abs.last().expect("nonempty")),
        verdict: classify(&trace),
        trace,
    })
}

/// Classical admissibility constant `int |psi_hat(u)|^2 / |u|_p du` from the
/// closed-form spectrum.
pub fn classical_admissibility(phi: &WaveletSpec, psi: &WaveletSpec, ug: &UGrid) -> Complex64 {
    let (s, w) = ug.nodes(ug.u_min, ug.u_max);
    let u: Vec<f64> = s.iter().map(|v| -v).chain(s.iter().cloned()).collect();
    let ww: Vec<f64> = w.iter().chain(w.iter()).cloned().collect();
    let mut total = Complex64::new(0.0, 0.0);
    for tk in phi.terms() {
        for tl in psi.terms() {
            let prod: Complex64 = tk
                .factors
                .iter()
                .zip(&tl.factors)
                .map(|(p, q)| u.iter().zip(&ww).map(|(x, wk)| p.spectrum(*x).conj() * q.spectrum(*x) * *wk).sum::<Complex64>())
                .product();
            total += tk.coef.conj() * tl.coef * prod;
        }
    }
    total
}

/// `|C_alpha|^2 (2 pi)^n`: the factor relating fractional and classical
/// admissibility constants.
pub fn fractional_factor(order: TransformOrder, dim: usize) -> f64 {
    order.c_alpha(dim).norm_sqr() * TAU.powi(dim as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_polynomials() {
        assert_eq!(hermite_poly(2), vec![-1.0, 0.0, 1.0]);
        assert_eq!(hermite_poly(4), vec![3.0, 0.0, -6.0, 0.0, 1.0]);
    }

    #[test]
    fn mexican_hat_shape() {
        let w = WaveletSpec::catalog("mexican_hat", 1).unwrap();
        for t in [-2.0f64, 0.0, 0.7, 3.0] {
            let e = (1.0 - t * t) * (-0.5 * t * t).exp();
            assert!((w.eval(&[t]).re - e).abs() < 1e-15);
        }
    }

    #[test]
    fn classify_patterns() {
        let fin = [(1.0, 1.0), (0.5, 1.0001), (0.25, 1.00001)];
        assert_eq!(classify(&fin), Verdict::Finite);
        let div: Vec<(f64, f64)> = (0..7).map(|k| (0.0, 10.0 + 1.4 * k as f64)).collect();
        assert_eq!(classify(&div), Verdict::Divergent);
        let odd = [(1.0, 1.0), (0.5, 1.5), (0.25, 1.52), (0.125, 3.0)];
        assert_eq!(classify(&odd), Verdict::Undetermined);
    }
}
