// SPDX-License-Identifier: MIT

//! Continuous fractional wavelet transform
//!
//! ```text
//! W f(b, a) = < f, psi_{a,b,alpha} >
//! psi_{a,b,alpha}(t) = |a|_p^-1/2 psi((t - b)/a) exp(-(i/2)(|t|^2 - |b|^2) cot alpha)
//! ```
//!
//! over a shift grid `b` (the signal's own grid) and a two-sided log scale
//! grid, with the measure `db da / |a|_p^2`.
//!
//! The fast path works per scale in the fractional domain:
//! `W(., a) = F_{-alpha}[ |a|_p^1/2 (2 pi)^(n/2) conj(psi_hat(a xi csc alpha)) F_alpha f ]`
//! on a zero-padded grid wide enough that the circular correlation does not
//! wrap.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{FrwtError, Result};
use crate::frft::{frft_fast, FrftPlan, TransformOrder};
use crate::grid::{inner_product, l2_norm, AxisSpec, ComplexSum, CompensatedSum, Grid, SampledSignal};
use crate::report::VerificationReport;
use crate::wavelet::{
    admissibility_constant, cross_admissibility, daughter_value, sample_daughter, DaughterParams, ScaleGrid, UGrid,
    WaveletSpec,
};

/// Smallest `|C_{phi,psi,alpha}|` accepted for reconstruction.
pub const CROSS_ZERO_TOL: f64 = 1e-8;

/// Coefficients `W(b, a)`, stored scale-major: `values[a * |b| + b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CfrwtCoefficients {
    values: Vec<Complex64>,
    b_grid: Grid,
    a_grid: ScaleGrid,
    order: TransformOrder,
    wavelet: String,
    warnings: Vec<String>,
}

impl CfrwtCoefficients {
    pub fn from_parts(
        values: Vec<Complex64>,
        b_grid: Grid,
        a_grid: ScaleGrid,
        order: TransformOrder,
        wavelet: &str,
    ) -> Result<Self> {
        if values.len() != b_grid.len() * a_grid.len() {
            return Err(FrwtError::InvalidSignal(format!(
                "{} coefficients for {} shifts x {} scales",
                values.len(),
                b_grid.len(),
                a_grid.len()
            )));
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(FrwtError::InvalidSignal("non-finite coefficient".into()));
        }
        let mut warnings = Vec::new();
        if order.is_near_singular() {
            warnings.push(format!("order {} is within 1e-3 of a multiple of pi", order.alpha()));
        }
        Ok(Self { values, b_grid, a_grid, order, wavelet: wavelet.to_string(), warnings })
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn b_grid(&self) -> &Grid {
        &self.b_grid
    }

    pub fn a_grid(&self) -> &ScaleGrid {
        &self.a_grid
    }

    pub fn order(&self) -> TransformOrder {
        self.order
    }

    pub fn wavelet(&self) -> &str {
        &self.wavelet
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Coefficients at scale index `a` over the shift grid.
    pub fn slice(&self, a: usize) -> &[Complex64] {
        let nb = self.b_grid.len();
        &self.values[a * nb..(a + 1) * nb]
    }

    pub fn slice_signal(&self, a: usize) -> SampledSignal {
        SampledSignal::new(self.b_grid.clone(), self.slice(a).to_vec()).expect("finite")
    }

    pub fn get(&self, b: usize, a: usize) -> Complex64 {
        self.values[a * self.b_grid.len() + b]
    }

    /// Same shape with new values.
    pub fn with_values(&self, values: Vec<Complex64>) -> Result<Self> {
        Self::from_parts(values, self.b_grid.clone(), self.a_grid.clone(), self.order, &self.wavelet)
    }

    /// `sum_{a,b} g(W(b,a), b, a) db da/|a|_p^2`, compensated, scale-major.
    pub fn integrate<F: Fn(Complex64, usize, usize) -> f64 + Sync>(&self, g: F) -> f64 {
        let wb = self.b_grid.weights().flatten();
        let nb = wb.len();
        let per_scale: Vec<f64> = (0..self.a_grid.len())
            .into_par_iter()
            .map(|a| {
                let mut acc = CompensatedSum::new();
                for (b, w) in wb.iter().enumerate() {
                    acc.add(g(self.values[a * nb + b], b, a) * w);
                }
                acc.value() * self.a_grid.weights()[a]
            })
            .collect();
        let mut acc = CompensatedSum::new();
        per_scale.into_iter().for_each(|v| acc.add(v));
        acc.value()
    }

    /// `int int |W|^2 db da/|a|_p^2` and the share from the edge octaves.
    pub fn energy(&self) -> (f64, f64) {
        let total = self.integrate(|z, _, _| z.norm_sqr());
        let mask = self.a_grid.edge_octave_mask();
        let edge = self.integrate(|z, _, a| if mask[a] { z.norm_sqr() } else { 0.0 });
        (total, if total > 0.0 { edge / total } else { 0.0 })
    }
}

fn check_dims(f: &SampledSignal, psi: &WaveletSpec, a_grid: &ScaleGrid) -> Result<()> {
    if psi.dim() != f.dim() {
        return Err(FrwtError::DimensionMismatch { expected: f.dim(), got: psi.dim() });
    }
    if a_grid.dim != f.dim() {
        return Err(FrwtError::DimensionMismatch { expected: f.dim(), got: a_grid.dim });
    }
    Ok(())
}

/// Direct oracle: `W(b, a) = <f, psi_{a,b,alpha}>` by quadrature on `f`'s
/// grid for every `b` in `b_grid`.
pub fn cfrwt_direct(
    f: &SampledSignal,
    psi: &WaveletSpec,
    order: TransformOrder,
    b_grid: &Grid,
    a_grid: &ScaleGrid,
) -> Result<CfrwtCoefficients> {
    order.require_generic()?;
    check_dims(f, psi, a_grid)?;
    if b_grid.dim() != f.dim() {
        return Err(FrwtError::DimensionMismatch { expected: f.dim(), got: b_grid.dim() });
    }
    let n = f.dim();
    let cot = order.cot();
    let tpts = f.grid().points();
    let wf: Vec<Complex64> = f.values().iter().zip(f.grid().weights().flatten()).map(|(z, w)| z * w).collect();
    let bpts = b_grid.points();
    let nb = bpts.len();
    let jobs: Vec<(usize, usize)> = (0..a_grid.len()).flat_map(|a| (0..nb).map(move |b| (a, b))).collect();
    let values = jobs
        .par_iter()
        .map(|&(a, b)| {
            let p = DaughterParams { a: a_grid.points()[a].clone(), b: bpts[b].clone(), alpha: order };
            let norm = 1.0 / p.abs_product().sqrt();
            let mut buf = vec![0.0; n];
            let mut acc = ComplexSum::new();
            for (t, v) in tpts.iter().zip(&wf) {
                if v.re != 0.0 || v.im != 0.0 {
                    acc.add(v * daughter_value(psi, &p, cot, norm, t, &mut buf).conj());
                }
            }
            acc.value()
        })
        .collect();
    CfrwtCoefficients::from_parts(values, b_grid.clone(), a_grid.clone(), order, psi.name())
}

/// Zero-padded companion of a grid: same step, `pad[i]` leading samples.
struct Padding {
    grid: Grid,
    lead: Vec<usize>,
}

impl Padding {
    fn new(grid: &Grid, psi: &WaveletSpec, a_max: f64) -> Result<Self> {
        let mut axes = Vec::new();
        let mut lead = Vec::new();
        for ax in grid.axes() {
            let reach = (psi.support_radius() * a_max / ax.step).ceil() as usize;
            let p = (ax.count + reach + 1).next_power_of_two();
            let l = (p - ax.count) / 2;
            axes.push(AxisSpec::new(ax.start - l as f64 * ax.step, ax.step, p)?);
            lead.push(l);
        }
        Ok(Self { grid: Grid::new(axes)?, lead })
    }

    /// Places `v` inside the padded grid. Samples are rescaled by the inner
    /// grid's trapezoid weight over the step, so the padded (interior-weight)
    /// quadrature reproduces the inner grid's quadrature.
    fn embed(&self, inner: &Grid, v: &[Complex64]) -> SampledSignal {
        let mut out = vec![Complex64::new(0.0, 0.0); self.grid.len()];
        let strides = self.grid.strides();
        let ratio: Vec<Vec<f64>> =
            inner.axes().iter().map(|ax| ax.weights().into_iter().map(|w| w / ax.step).collect()).collect();
        let mut idx = vec![0usize; inner.dim()];
        for (k, z) in v.iter().enumerate() {
            inner.unravel(k, &mut idx);
            let d: usize = idx.iter().zip(&self.lead).zip(&strides).map(|((i, l), s)| (i + l) * s).sum();
            let w: f64 = idx.iter().zip(&ratio).map(|(i, r)| r[*i]).product();
            out[d] = z * w;
        }
        SampledSignal::new(self.grid.clone(), out).expect("finite")
    }

    fn extract(&self, inner: &Grid, v: &[Complex64]) -> Vec<Complex64> {
        let strides = self.grid.strides();
        let mut idx = vec![0usize; inner.dim()];
        (0..inner.len())
            .map(|k| {
                inner.unravel(k, &mut idx);
                let d: usize = idx.iter().zip(&self.lead).zip(&strides).map(|((i, l), s)| (i + l) * s).sum();
                v[d]
            })
            .collect()
    }
}

/// Multiplier `|a|_p^1/2 (2 pi)^(n/2) psi_hat(a xi csc alpha)` on the
/// fractional-domain grid.
fn scale_multiplier(psi: &WaveletSpec, a: &[f64], csc: f64, xi: &[Vec<f64>]) -> Vec<Complex64> {
    let n = a.len();
    let k = a.iter().map(|v| v.abs()).product::<f64>().sqrt() * TAU.powf(n as f64 / 2.0);
    let mut u = vec![0.0; n];
    xi.iter()
        .map(|x| {
            for i in 0..n {
                u[i] = a[i] * x[i] * csc;
            }
            psi.classical_spectrum(&u) * k
        })
        .collect()
}

/// Fast path on the signal's own shift grid.
pub fn cfrwt_fast(
    f: &SampledSignal,
    psi: &WaveletSpec,
    order: TransformOrder,
    a_grid: &ScaleGrid,
) -> Result<CfrwtCoefficients> {
    order.require_generic()?;
    check_dims(f, psi, a_grid)?;
    let pad = Padding::new(f.grid(), psi, a_grid.max_abs())?;
    let spec = frft_fast(&pad.embed(f.grid(), f.values()), order)?;
    let back = FrftPlan::fast(spec.grid(), order.neg())?;
    let xi = spec.grid().points();
    let csc = order.csc();
    let slices: Vec<Vec<Complex64>> = a_grid
        .points()
        .par_iter()
        .map(|a| {
            let m = scale_multiplier(psi, a, csc, &xi);
            let v: Vec<Complex64> = spec.values().iter().zip(&m).map(|(z, w)| z * w.conj()).collect();
            let w = back.execute(&SampledSignal::new(spec.grid().clone(), v)?)?;
            Ok(pad.extract(f.grid(), w.values()))
        })
        .collect::<Result<_>>()?;
    CfrwtCoefficients::from_parts(slices.concat(), f.grid().clone(), a_grid.clone(), order, psi.name())
}

/// `W(., a)` for one scale vector on the signal's own shift grid.
pub fn cfrwt_slice(f: &SampledSignal, psi: &WaveletSpec, order: TransformOrder, a: &[f64]) -> Result<SampledSignal> {
    order.require_generic()?;
    if psi.dim() != f.dim() {
        return Err(FrwtError::DimensionMismatch { expected: f.dim(), got: psi.dim() });
    }
    if a.len() != f.dim() {
        return Err(FrwtError::DimensionMismatch { expected: f.dim(), got: a.len() });
    }
    if a.iter().any(|v| *v == 0.0 || !v.is_finite()) {
        return Err(FrwtError::ZeroScaleComponent);
    }
    let a_max = a.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let pad = Padding::new(f.grid(), psi, a_max)?;
    let spec = frft_fast(&pad.embed(f.grid(), f.values()), order)?;
    let m = scale_multiplier(psi, a, order.csc(), &spec.grid().points());
    let v: Vec<Complex64> = spec.values().iter().zip(&m).map(|(z, w)| z * w.conj()).collect();
    let w = frft_fast(&SampledSignal::new(spec.grid().clone(), v)?, order.neg())?;
    SampledSignal::new(f.grid().clone(), pad.extract(f.grid(), w.values()))
}

/// Plancherel ratio
/// `R =|C_alpha|^2 int int |W|^2 db da/|a|_p^2 / (C_{psi,alpha} ||f||^2)`.
pub fn plancherel_check(
    coeffs: &CfrwtCoefficients,
    f: &SampledSignal,
    c_psi_alpha: f64,
    tolerance: f64,
) -> Result<VerificationReport> {
    let order = coeffs.order();
    let c2 = order.c_alpha(f.dim()).norm_sqr();
    let (energy, edge) = coeffs.energy();
    let lhs = energy * c2;
    let rhs = c_psi_alpha * l2_norm(f).powi(2);
    let mut r = VerificationReport::ratio_near_one("plancherel", lhs, rhs, tolerance)
        .with_grid(f.grid())
        .budget_line("edge_octave_share", edge);
    for w in coeffs.warnings() {
        r = r.warn(w.clone());
    }
    Ok(r)
}

/// Plancherel check with the admissibility constant computed here.
pub fn plancherel_check_for(
    f: &SampledSignal,
    psi: &WaveletSpec,
    order: TransformOrder,
    a_grid: &ScaleGrid,
    ug: &UGrid,
    tolerance: f64,
) -> Result<VerificationReport> {
    let adm = admissibility_constant(psi, order, ug)?;
    adm.require_finite()?;
    let w = cfrwt_fast(f, psi, order, a_grid)?;
    plancherel_check(&w, f, adm.c_psi_alpha, tolerance)
}

/// Two-wavelet inner product relation
/// `int int W_phi f conj(W_psi g) db da/|a|_p^2 = C_{phi,psi,alpha} / |C_alpha|^2 <f, g>`.
///
/// The deviation is `|lhs - rhs|` relative to `|C_{phi,psi,alpha}| ||f|| ||g|| / |C_alpha|^2`,
/// which keeps it meaningful for orthogonal `f`, `g`.
#[allow(clippy::too_many_arguments)]
pub fn inner_product_relation_check(
    f: &SampledSignal,
    g: &SampledSignal,
    phi: &WaveletSpec,
    psi: &WaveletSpec,
    order: TransformOrder,
    a_grid: &ScaleGrid,
    ug: &UGrid,
    tolerance: f64,
) -> Result<VerificationReport> {
    let adm = cross_admissibility(phi, psi, order, ug)?;
    adm.require_finite()?;
    let cross = adm.cross().expect("cross constant");
    let wf = cfrwt_fast(f, phi, order, a_grid)?;
    let wg = cfrwt_fast(g, psi, order, a_grid)?;
    if !wf.b_grid().approx_eq(wg.b_grid()) {
        return Err(FrwtError::GridMismatch);
    }
    let wb = wf.b_grid().weights().flatten();
    let nb = wb.len();
    let mut acc = ComplexSum::new();
    for (a, wa) in a_grid.weights().iter().enumerate() {
        for b in 0..nb {
            acc.add(wf.values()[a * nb + b] * wg.values()[a * nb + b].conj() * (wb[b] * wa));
        }
    }
    let lhs = acc.value();
    let c2 = order.c_alpha(f.dim()).norm_sqr();
    let rhs = cross / c2 * inner_product(f, g)?;
    let scale = cross.norm() / c2 * l2_norm(f) * l2_norm(g);
    let dev = if scale > 0.0 { (lhs - rhs).norm() / scale } else { (lhs - rhs).norm() };
    Ok(VerificationReport::deviation("inner_product_relation", lhs.norm(), rhs.norm(), dev, tolerance)
        .with_grid(f.grid()))
}

fn synthesis_factor(order: TransformOrder, dim: usize, cross: Complex64) -> Result<Complex64> {
    if cross.norm() < CROSS_ZERO_TOL {
        return Err(FrwtError::ZeroCrossAdmissibility { value: cross.norm() });
    }
    Ok(order.c_alpha(dim).norm_sqr() / cross.conj())
}

/// Reconstruction
/// `f(t) = |C_alpha|^2 / conj(C_{phi,psi,alpha}) int int W_psi f(b,a) phi_{a,b,alpha}(t) db da/|a|_p^2`
/// on the shift grid, with a precomputed `C_{phi,psi,alpha}`.
pub fn reconstruct_with(coeffs: &CfrwtCoefficients, phi: &WaveletSpec, cross: Complex64) -> Result<SampledSignal> {
    let order = coeffs.order();
    let grid = coeffs.b_grid().clone();
    let k = synthesis_factor(order, grid.dim(), cross)?;
    if phi.dim() != grid.dim() {
        return Err(FrwtError::DimensionMismatch { expected: grid.dim(), got: phi.dim() });
    }
    let a_grid = coeffs.a_grid();
    let pad = Padding::new(&grid, phi, a_grid.max_abs())?;
    let plan = FrftPlan::fast(&pad.grid, order)?;
    let xi = plan.output_grid().points();
    let csc = order.csc();
    let parts: Vec<Vec<Complex64>> = (0..a_grid.len())
        .into_par_iter()
        .map(|a| {
            let spec = plan.execute(&pad.embed(&grid, coeffs.slice(a)))?;
            let m = scale_multiplier(phi, &a_grid.points()[a], csc, &xi);
            let wa = a_grid.weights()[a];
            Ok(spec.values().iter().zip(&m).map(|(z, w)| z * w * wa).collect())
        })
        .collect::<Result<_>>()?;
    let mut sum = vec![Complex64::new(0.0, 0.0); xi.len()];
    for p in &parts {
        sum.iter_mut().zip(p).for_each(|(s, v)| *s += v);
    }
    let back = frft_fast(&SampledSignal::new(plan.output_grid().clone(), sum)?, order.neg())?;
    let v = pad.extract(&grid, back.values()).into_iter().map(|z| z * k).collect();
    SampledSignal::new(grid, v)
}

/// Reconstruction with `C_{phi,psi,alpha}` computed on `ug`.
pub fn reconstruct(
    coeffs: &CfrwtCoefficients,
    phi: &WaveletSpec,
    psi_used: &WaveletSpec,
    ug: &UGrid,
) -> Result<SampledSignal> {
    let adm = cross_admissibility(phi, psi_used, coeffs.order(), ug)?;
    adm.require_finite()?;
    reconstruct_with(coeffs, phi, adm.cross().expect("cross constant"))
}

/// Direct-sum reconstruction oracle at the points of `out`.
pub fn reconstruct_direct(
    coeffs: &CfrwtCoefficients,
    phi: &WaveletSpec,
    cross: Complex64,
    out: &Grid,
) -> Result<SampledSignal> {
    let order = coeffs.order();
    let k = synthesis_factor(order, out.dim(), cross)?;
    let cot = order.cot();
    let bpts = coeffs.b_grid().points();
    let wb = coeffs.b_grid().weights().flatten();
    let a_grid = coeffs.a_grid();
    let n = out.dim();
    let values = out
        .points()
        .par_iter()
        .map(|t| {
            let mut buf = vec![0.0; n];
            let mut acc = ComplexSum::new();
            for (a, wa) in a_grid.weights().iter().enumerate() {
                for (b, bp) in bpts.iter().enumerate() {
                    let w = coeffs.get(b, a);
                    if w.re == 0.0 && w.im == 0.0 {
                        continue;
                    }
                    let p = DaughterParams { a: a_grid.points()[a].clone(), b: bp.clone(), alpha: order };
                    let norm = 1.0 / p.abs_product().sqrt();
                    acc.add(w * daughter_value(phi, &p, cot, norm, t, &mut buf) * (wa * wb[b]));
                }
            }
            k * acc.value()
        })
        .collect();
    SampledSignal::new(out.clone(), values)
}

/// One value of the reproducing kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct ReproducingKernelPoint {
    pub b0: Vec<f64>,
    pub a0: Vec<f64>,
    pub b: Vec<f64>,
    pub a: Vec<f64>,
    pub value: Complex64,
}

/// Reproducing kernel
/// `K(b0,a0; b,a) = |C_alpha|^2 / conj(C_{phi,psi,alpha}) <phi_{a,b,alpha}, psi_{a0,b0,alpha}>`
/// with the constant fixed at construction.
#[derive(Debug, Clone)]
pub struct KernelContext {
    phi: WaveletSpec,
    psi: WaveletSpec,
    order: TransformOrder,
    cross: Complex64,
    factor: Complex64,
}

impl KernelContext {
    pub fn new(phi: &WaveletSpec, psi: &WaveletSpec, order: TransformOrder, ug: &UGrid) -> Result<Self> {
        let adm = cross_admissibility(phi, psi, order, ug)?;
        adm.require_finite()?;
        Self::with_constant(phi, psi, order, adm.cross().expect("cross constant"))
    }

    pub fn with_constant(phi: &WaveletSpec, psi: &WaveletSpec, order: TransformOrder, cross: Complex64) -> Result<Self> {
        order.require_generic()?;
        let factor = synthesis_factor(order, phi.dim(), cross)?;
        Ok(Self { phi: phi.clone(), psi: psi.clone(), order, cross, factor })
    }

    pub fn cross_constant(&self) -> Complex64 {
        self.cross
    }

    /// Kernel value by quadrature of the daughter inner product on `grid`.
    pub fn point(&self, b0: &[f64], a0: &[f64], b: &[f64], a: &[f64], grid: &Grid) -> Result<ReproducingKernelPoint> {
        let p0 = DaughterParams::new(a0.to_vec(), b0.to_vec(), self.order)?;
        let p = DaughterParams::new(a.to_vec(), b.to_vec(), self.order)?;
        let d0 = sample_daughter(&self.psi, &p0, grid);
        let d = sample_daughter(&self.phi, &p, grid);
        Ok(ReproducingKernelPoint {
            b0: b0.to_vec(),
            a0: a0.to_vec(),
            b: b.to_vec(),
            a: a.to_vec(),
            value: self.factor * inner_product(&d, &d0)?,
        })
    }

    /// Kernel row `K(b0, a0; ., .)` over the coefficient grids of `like`,
    /// as `factor * conj(W_phi[psi_{a0,b0,alpha}])`.
    pub fn row(&self, b0: &[f64], a0: &[f64], like: &CfrwtCoefficients) -> Result<Vec<Complex64>> {
        let p0 = DaughterParams::new(a0.to_vec(), b0.to_vec(), self.order)?;
        let d0 = sample_daughter(&self.psi, &p0, like.b_grid());
        let w = cfrwt_fast(&d0, &self.phi, self.order, like.a_grid())?;
        Ok(w.values().iter().map(|z| self.factor * z.conj()).collect())
    }

    /// `int int K(b0,a0; b,a) F(b,a) db da/|a|_p^2` at the probe index pairs
    /// `(b index, a index)`; returns (F, reproduced) per probe.
    pub fn reproduce(&self, field: &CfrwtCoefficients, probes: &[(usize, usize)]) -> Result<Vec<(Complex64, Complex64)>> {
        let bpts = field.b_grid().points();
        let wb = field.b_grid().weights().flatten();
        let nb = wb.len();
        probes
            .iter()
            .map(|&(b0, a0)| {
                let row = self.row(&bpts[b0], &field.a_grid().points()[a0], field)?;
                let mut acc = ComplexSum::new();
                for (a, wa) in field.a_grid().weights().iter().enumerate() {
                    for b in 0..nb {
                        acc.add(row[a * nb + b] * field.values()[a * nb + b] * (wa * wb[b]));
                    }
                }
                Ok((field.get(b0, a0), acc.value()))
            })
            .collect()
    }

    /// Relative reproduction residual `||K F - F|| / ||F||` over the probes.
    pub fn range_residual(&self, field: &CfrwtCoefficients, probes: &[(usize, usize)]) -> Result<f64> {
        let pairs = self.reproduce(field, probes)?;
        let num: f64 = pairs.iter().map(|(f, r)| (r - f).norm_sqr()).sum();
        let den: f64 = pairs.iter().map(|(f, _)| f.norm_sqr()).sum();
        Ok(if den > 0.0 { (num / den).sqrt() } else { num.sqrt() })
    }
}

/// Indices `(b, a)` of the `count` largest-modulus coefficients, restricted
/// to scales with every `|a_i| <= a_cap` and shifts at least `margin` away
/// from the grid edge (in samples).
pub fn peak_probes(field: &CfrwtCoefficients, count: usize, a_cap: f64, margin: usize) -> Vec<(usize, usize)> {
    let grid = field.b_grid();
    let shape = grid.shape();
    let nb = grid.len();
    let mut idx = vec![0usize; grid.dim()];
    let mut cand: Vec<(f64, usize, usize)> = Vec::new();
    for (a, p) in field.a_grid().points().iter().enumerate() {
        if p.iter().any(|v| v.abs() > a_cap) {
            continue;
        }
        for b in 0..nb {
            grid.unravel(b, &mut idx);
            if idx.iter().zip(&shape).any(|(i, s)| *i < margin || *i + margin >= *s) {
                continue;
            }
            cand.push((field.values()[a * nb + b].norm(), b, a));
        }
    }
    cand.sort_by(|x, y| y.0.total_cmp(&x.0));
    // spread probes: skip near-duplicates of already chosen points
    let mut out: Vec<(usize, usize)> = Vec::new();
    for (_, b, a) in cand {
        if out.iter().all(|&(b2, a2)| a2 != a && (b as i64 - b2 as i64).abs() > 2) {
            out.push((b, a));
        }
        if out.len() == count {
            break;
        }
    }
    out
}
