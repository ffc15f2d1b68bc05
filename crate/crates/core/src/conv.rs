// SPDX-License-Identifier: MIT

//! Fractional convolution
//!
//! ```text
//! (f *_a g)(t) = integral exp(-(i/2)(|t|^2 - |y|^2) cot a) f(y) g(t - y) dy
//! ```
//!
//! computed as chirp-demodulation of `f`, a zero-padded FFT convolution with
//! `g`, and chirp re-modulation.

use num_complex::Complex64;

use crate::error::{FrwtError, Result};
use crate::fft::fft_nd;
use crate::frft::{frft_fast, frft_points, TransformOrder};
use crate::grid::{AxisSpec, Grid, SampledSignal};
use crate::report::VerificationReport;

/// `f *_a g` on the grid of `f`.
#[derive(Debug, Clone, PartialEq)]
pub struct FracConvResult {
    pub signal: SampledSignal,
    pub alpha: TransformOrder,
}

fn chirp(x: &[f64], cot: f64, sign: f64) -> Complex64 {
    let r2: f64 = x.iter().map(|v| v * v).sum();
    Complex64::from_polar(1.0, sign * 0.5 * r2 * cot)
}

/// Integer offset of `g`'s origin in units of `f`'s step, per axis.
fn lattice_offsets(f: &Grid, g: &Grid) -> Result<Vec<i64>> {
    if f.dim() != g.dim() {
        return Err(FrwtError::DimensionMismatch { expected: f.dim(), got: g.dim() });
    }
    f.axes()
        .iter()
        .zip(g.axes())
        .map(|(a, b)| {
            if (a.step - b.step).abs() > 1e-9 * a.step {
                return Err(FrwtError::StepMismatch);
            }
            let c = b.start / a.step;
            if (c - c.round()).abs() > 1e-6 {
                return Err(FrwtError::StepMismatch);
            }
            Ok(c.round() as i64)
        })
        .collect()
}

/// Fractional convolution of `f` with `g`.
///
/// `g` must share `f`'s step and have its origin on the step lattice; it is
/// taken as zero outside its own grid.
pub fn frac_convolve(f: &SampledSignal, g: &SampledSignal, order: TransformOrder) -> Result<FracConvResult> {
    let offs = lattice_offsets(f.grid(), g.grid())?;
    let cot = if order.is_generic() { order.cot() } else { 0.0 };
    let fs = f.grid().shape();
    let gs = g.grid().shape();
    let ps: Vec<usize> = fs.iter().zip(&gs).map(|(a, b)| (a + b - 1).next_power_of_two()).collect();
    let plen: usize = ps.iter().product();
    let pstrides: Vec<usize> = (0..ps.len()).map(|i| ps[i + 1..].iter().product()).collect();
    let n = fs.len();

    let scatter = |src: &SampledSignal, weights: Option<&[f64]>, demod: bool| {
        let grid = src.grid();
        let mut buf = vec![Complex64::new(0.0, 0.0); plen];
        let mut idx = vec![0usize; n];
        let mut p = vec![0.0; n];
        for (k, z) in src.values().iter().enumerate() {
            grid.unravel(k, &mut idx);
            let dst: usize = idx.iter().zip(&pstrides).map(|(i, s)| i * s).sum();
            let mut v = *z;
            if let Some(w) = weights {
                v *= w[k];
            }
            if demod {
                grid.point(k, &mut p);
                v *= chirp(&p, cot, 1.0);
            }
            buf[dst] = v;
        }
        buf
    };
    let w = f.grid().weights().flatten();
    let mut a = scatter(f, Some(&w), true);
    let mut b = scatter(g, None, false);
    fft_nd(&mut a, &ps, true);
    fft_nd(&mut b, &ps, true);
    a.iter_mut().zip(&b).for_each(|(x, y)| *x *= y / plen as f64);
    fft_nd(&mut a, &ps, false);

    // full[p] pairs f index l with g index m at t index p + offset
    let full_len: Vec<i64> = fs.iter().zip(&gs).map(|(a, b)| (a + b - 1) as i64).collect();
    let mut idx = vec![0usize; n];
    let mut p = vec![0.0; n];
    let values = (0..f.len())
        .map(|k| {
            f.grid().unravel(k, &mut idx);
            let mut src = 0usize;
            for i in 0..n {
                let q = idx[i] as i64 - offs[i];
                if q < 0 || q >= full_len[i] {
                    return Complex64::new(0.0, 0.0);
                }
                src += q as usize * pstrides[i];
            }
            f.grid().point(k, &mut p);
            a[src] * chirp(&p, cot, -1.0)
        })
        .collect();
    Ok(FracConvResult { signal: SampledSignal::new(f.grid().clone(), values)?, alpha: order })
}

fn max_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn peak(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Spectral identity for the fractional convolution:
///
/// ```text
/// F_a{f *_a g}(x) = C_a^-1 exp(-(i/2)|x|^2 cot a) F_a f(x) F_a{exp(-(i/2)|.|^2 cot a) g}(x)
/// ```
///
/// with `f` and `g` on one power-of-two grid. The reported deviation is the
/// maximum pointwise difference relative to the peak of the left side.
pub fn convolution_theorem_check(
    f: &SampledSignal,
    g: &SampledSignal,
    order: TransformOrder,
    tolerance: f64,
) -> Result<VerificationReport> {
    order.require_generic()?;
    if !f.grid().approx_eq(g.grid()) {
        return Err(FrwtError::GridMismatch);
    }
    let cot = order.cot();
    let conv = frac_convolve(f, g, order)?.signal;
    let lhs = frft_fast(&conv, order)?;
    let ff = frft_fast(f, order)?;
    let gd = frft_fast(&g.map_with_coords(|x, z| z * chirp(x, cot, -1.0)), order)?;
    let inv_c = order.c_alpha(f.dim()).inv();
    let rhs = ff
        .zip_with(&gd, |a, b| a * b)?
        .map_with_coords(|x, z| inv_c * z * chirp(x, cot, -1.0));
    let pk = peak(lhs.values());
    let dev = if pk > 0.0 { max_dev(lhs.values(), rhs.values()) / pk } else { 0.0 };
    Ok(VerificationReport::deviation("convolution_theorem", pk, peak(rhs.values()), dev, tolerance)
        .with_grid(f.grid()))
}

/// Scaled-convolution identity
///
/// ```text
/// F_{-a}{f *_{-a} g(./-s)}(x)
///     = |s|_p / C_a exp(-(i/2)|s x|^2 cot a) F_{-a} f(x) F_a{exp(-(i/2)|.|^2 cot a) g}(s x)
/// ```
///
/// for a scale vector `s` with nonzero components. `g` is evaluated at
/// `t / (-s)` on `f`'s grid for the left side, and sampled on `f`'s grid
/// scaled by `1/|s|` for the right side so both sides use the same samples
/// of `g`.
pub fn scaled_conv_identity_check<G>(
    f: &SampledSignal,
    g: G,
    scale: &[f64],
    order: TransformOrder,
    tolerance: f64,
) -> Result<VerificationReport>
where
    G: Fn(&[f64]) -> Complex64,
{
    order.require_generic()?;
    let n = f.dim();
    if scale.len() != n {
        return Err(FrwtError::DimensionMismatch { expected: n, got: scale.len() });
    }
    if scale.iter().any(|s| *s == 0.0 || !s.is_finite()) {
        return Err(FrwtError::ZeroScaleComponent);
    }
    let cot = order.cot();
    let neg = order.neg();
    let g_dil = SampledSignal::from_fn(f.grid().clone(), |t| {
        let y: Vec<f64> = t.iter().zip(scale).map(|(v, s)| -v / s).collect();
        g(&y)
    });
    let lhs = frft_fast(&frac_convolve(f, &g_dil, neg)?.signal, neg)?;
    let ff = frft_fast(f, neg)?;

    let g_axes = f
        .grid()
        .axes()
        .iter()
        .zip(scale)
        .map(|(a, s)| AxisSpec::new(a.start / s.abs(), a.step / s.abs(), a.count))
        .collect::<Result<Vec<_>>>()?;
    let g_grid = Grid::new(g_axes)?;
    let g_chirped = SampledSignal::from_fn(g_grid, |s| g(s) * chirp(s, cot, -1.0));
    let points: Vec<Vec<f64>> = ff
        .grid()
        .points()
        .into_iter()
        .map(|x| x.iter().zip(scale).map(|(v, s)| v * s).collect())
        .collect();
    let gs = frft_points(&g_chirped, order, &points)?;
    let ap: f64 = scale.iter().map(|s| s.abs()).product();
    let k = ap / order.c_alpha(n);
    let rhs: Vec<Complex64> = ff
        .values()
        .iter()
        .zip(&gs)
        .zip(&points)
        .map(|((a, b), p)| k * chirp(p, cot, -1.0) * a * b)
        .collect();
    let pk = peak(lhs.values());
    let dev = if pk > 0.0 { max_dev(lhs.values(), &rhs) / pk } else { max_dev(lhs.values(), &rhs) };
    Ok(VerificationReport::deviation("scaled_convolution_identity", pk, peak(&rhs), dev, tolerance)
        .with_grid(f.grid()))
}
