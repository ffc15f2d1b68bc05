// SPDX-License-Identifier: MIT

//! The n-dimensional fractional Fourier transform.
//!
//! The kernel is
//!
//! ```text
//! K_a(t, x) = C_a exp( (i/2)(|t|^2 + |x|^2) cot a - i <t, x> csc a )
//! C_a       = ( (1 - i cot a) / 2 pi )^(n/2)
//! ```
//!
//! with the per-dimension principal square root. At `a = pi/2` this is the
//! unitary Fourier transform. Orders that are multiples of pi are handled by
//! exact identity / parity dispatch.
//!
//! [`frft_fast`] factors the kernel as chirp, DFT, chirp on the natural
//! output grid `x_k = (k + t0/dt) * 2 pi |sin a| / (N dt)`. The factorization
//! is exact for the trapezoidal sum, so the fast and direct paths agree to
//! rounding.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FrwtError, Result};
use crate::fft::{fft_axis, for_each_line};
use crate::grid::{AxisSpec, ComplexSum, Grid, SampledSignal};

/// Orders closer than this to a multiple of pi are dispatched exactly.
pub const ANGLE_TOL: f64 = 1e-12;

/// Orders closer than this (but outside [`ANGLE_TOL`]) are flagged.
pub const NEAR_SINGULAR_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderKind {
    Generic,
    Identity,
    Parity,
}

/// Transform order `alpha` in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformOrder {
    alpha: f64,
}

impl TransformOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(FrwtError::InvalidParameter(format!("order {alpha} is not finite")));
        }
        Ok(Self { alpha })
    }

    /// Convenience constructor for literal orders known to be finite.
    pub fn of(alpha: f64) -> Self {
        Self::new(alpha).expect("finite order")
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    fn reduced(&self) -> f64 {
        self.alpha.rem_euclid(TAU)
    }

    /// Distance from the nearest multiple of pi.
    pub fn delta_distance(&self) -> f64 {
        let r = self.alpha.rem_euclid(PI);
        r.min(PI - r)
    }

    pub fn kind(&self) -> OrderKind {
        let r = self.reduced();
        if r.min(TAU - r) < ANGLE_TOL {
            OrderKind::Identity
        } else if (r - PI).abs() < ANGLE_TOL {
            OrderKind::Parity
        } else {
            OrderKind::Generic
        }
    }

    pub fn is_generic(&self) -> bool {
        self.kind() == OrderKind::Generic
    }

    pub fn is_near_singular(&self) -> bool {
        let d = self.delta_distance();
        (ANGLE_TOL..NEAR_SINGULAR_TOL).contains(&d)
    }

    pub fn require_generic(&self) -> Result<()> {
        if self.is_generic() {
            Ok(())
        } else {
            Err(FrwtError::DeltaKernel { alpha: self.alpha })
        }
    }

    pub fn neg(&self) -> Self {
        Self { alpha: -self.alpha }
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self { alpha: self.alpha + other.alpha }
    }

    pub fn sin(&self) -> f64 {
        self.alpha.sin()
    }

    pub fn cot(&self) -> f64 {
        1.0 / self.alpha.tan()
    }

    pub fn csc(&self) -> f64 {
        1.0 / self.alpha.sin()
    }

    /// One-dimensional normalizer: principal root of `(1 - i cot a) / 2 pi`.
    pub fn c_alpha_1d(&self) -> Complex64 {
        principal_sqrt(Complex64::new(1.0, -self.cot()) / TAU)
    }

    /// `C_a` in dimension `n`.
    pub fn c_alpha(&self, n: usize) -> Complex64 {
        let c = self.c_alpha_1d();
        (1..n).fold(c, |acc, _| acc * c)
    }
}

/// Principal square root for `Re z > 0`, written so that `sqrt(conj z)` is
/// exactly `conj(sqrt z)`.
fn principal_sqrt(z: Complex64) -> Complex64 {
    let s = ((z.norm() + z.re) * 0.5).sqrt();
    Complex64::new(s, z.im / (2.0 * s))
}

#[inline]
fn cis(phase: f64) -> Complex64 {
    let (s, c) = phase.sin_cos();
    Complex64::new(c, s)
}

/// Pointwise kernel value.
pub fn kernel_eval(t: &[f64], xi: &[f64], order: TransformOrder) -> Result<Complex64> {
    if t.len() != xi.len() {
        return Err(FrwtError::DimensionMismatch { expected: t.len(), got: xi.len() });
    }
    order.require_generic()?;
    Ok(kernel_unchecked(t, xi, order.c_alpha(t.len()), order.cot(), order.csc()))
}

#[inline]
fn kernel_unchecked(t: &[f64], xi: &[f64], c: Complex64, cot: f64, csc: f64) -> Complex64 {
    let mut sq = 0.0;
    let mut dot = 0.0;
    for (a, b) in t.iter().zip(xi) {
        sq += a * a + b * b;
        dot += a * b;
    }
    c * cis(0.5 * sq * cot - dot * csc)
}

/// Direct quadrature of the kernel integral at arbitrary points.
pub fn frft_points(
    f: &SampledSignal,
    order: TransformOrder,
    points: &[Vec<f64>],
) -> Result<Vec<Complex64>> {
    order.require_generic()?;
    let n = f.dim();
    if let Some(p) = points.iter().find(|p| p.len() != n) {
        return Err(FrwtError::DimensionMismatch { expected: n, got: p.len() });
    }
    let c = order.c_alpha(n);
    let (cot, csc) = (order.cot(), order.csc());
    let w = f.grid().weights().flatten();
    let tpts = f.grid().points();
    let wf: Vec<Complex64> = f.values().iter().zip(&w).map(|(z, wk)| z * wk).collect();
    Ok(points
        .par_iter()
        .map(|xi| {
            let mut acc = ComplexSum::new();
            for (t, v) in tpts.iter().zip(&wf) {
                if v.re != 0.0 || v.im != 0.0 {
                    acc.add(v * kernel_unchecked(t, xi, Complex64::new(1.0, 0.0), cot, csc));
                }
            }
            c * acc.value()
        })
        .collect())
}

/// O(N^2) oracle: kernel quadrature at every point of `output`.
pub fn frft_direct(f: &SampledSignal, order: TransformOrder, output: &Grid) -> Result<SampledSignal> {
    if output.dim() != f.dim() {
        return Err(FrwtError::DimensionMismatch { expected: f.dim(), got: output.dim() });
    }
    match order.kind() {
        OrderKind::Identity => {
            if !output.approx_eq(f.grid()) {
                return Err(FrwtError::DomainMismatch);
            }
            Ok(f.clone())
        }
        OrderKind::Parity => {
            if !output.approx_eq(&f.grid().reflected()) {
                return Err(FrwtError::DomainMismatch);
            }
            Ok(reflect(f))
        }
        OrderKind::Generic => {
            let values = frft_points(f, order, &output.points())?;
            SampledSignal::new(output.clone(), values)
        }
    }
}

/// `f(-t)` on the reflected grid (reversing every axis of a row-major array
/// reverses the flat vector).
fn reflect(f: &SampledSignal) -> SampledSignal {
    let mut v = f.values().to_vec();
    v.reverse();
    SampledSignal::new(f.grid().reflected(), v).expect("same shape")
}

/// Natural fast-path output axis for an input axis.
pub fn natural_axis(axis: &AxisSpec, order: TransformOrder) -> AxisSpec {
    let n = axis.count as f64;
    let dxi = TAU * order.sin().abs() / (n * axis.step);
    let c = axis.start / axis.step;
    AxisSpec { start: c * dxi, step: dxi, count: axis.count }
}

/// Natural fast-path output grid.
pub fn natural_grid(grid: &Grid, order: TransformOrder) -> Grid {
    Grid::new(grid.axes().iter().map(|a| natural_axis(a, order)).collect()).expect("valid axes")
}

/// Precomputed tables for the chirp-FFT path.
#[derive(Debug, Clone)]
pub struct FrftPlan {
    order: TransformOrder,
    dim: usize,
    c_alpha: Complex64,
    csc: f64,
    input: Grid,
    output: Grid,
    forward: bool,
    /// Per-axis trapezoid weight, input chirp and offset phase.
    in_tables: Vec<Vec<Complex64>>,
    /// Per-axis normalizer, output chirp and offset phase.
    out_tables: Vec<Vec<Complex64>>,
}

impl FrftPlan {
    pub fn fast(input: &Grid, order: TransformOrder) -> Result<Self> {
        order.require_generic()?;
        for (i, a) in input.axes().iter().enumerate() {
            if !a.count.is_power_of_two() {
                return Err(FrwtError::NonPowerOfTwo { axis: i, count: a.count });
            }
        }
        let cot = order.cot();
        let s = order.sin().signum();
        let c1 = order.c_alpha_1d();
        let output = natural_grid(input, order);
        let mut in_tables = Vec::new();
        let mut out_tables = Vec::new();
        for (ax, oax) in input.axes().iter().zip(output.axes()) {
            let n = ax.count as f64;
            let c = ax.start / ax.step;
            let w = ax.weights();
            let tin = (0..ax.count)
                .map(|j| {
                    let t = ax.coord(j);
                    let off = (j as f64 * c).rem_euclid(n);
                    w[j] * cis(0.5 * t * t * cot - s * TAU * off / n)
                })
                .collect();
            let tout = (0..oax.count)
                .map(|k| {
                    let xi = oax.coord(k);
                    let off = (c * (k as f64 + c)).rem_euclid(n);
                    c1 * cis(0.5 * xi * xi * cot - s * TAU * off / n)
                })
                .collect();
            in_tables.push(tin);
            out_tables.push(tout);
        }
        Ok(Self {
            order,
            dim: input.dim(),
            c_alpha: order.c_alpha(input.dim()),
            csc: order.csc(),
            input: input.clone(),
            output,
            forward: s > 0.0,
            in_tables,
            out_tables,
        })
    }

    pub fn order(&self) -> TransformOrder {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn c_alpha(&self) -> Complex64 {
        self.c_alpha
    }

    pub fn csc(&self) -> f64 {
        self.csc
    }

    pub fn input_grid(&self) -> &Grid {
        &self.input
    }

    pub fn output_grid(&self) -> &Grid {
        &self.output
    }

    pub fn execute(&self, f: &SampledSignal) -> Result<SampledSignal> {
        if !f.grid().approx_eq(&self.input) {
            return Err(FrwtError::GridMismatch);
        }
        let shape = self.input.shape();
        let mut data = f.values().to_vec();
        for axis in 0..self.dim {
            let tin = &self.in_tables[axis];
            for_each_line(&mut data, &shape, axis, |_, line| {
                line.iter_mut().zip(tin).for_each(|(z, w)| *z *= w);
            });
            fft_axis(&mut data, &shape, axis, self.forward);
            let tout = &self.out_tables[axis];
            for_each_line(&mut data, &shape, axis, |_, line| {
                line.iter_mut().zip(tout).for_each(|(z, w)| *z *= w);
            });
        }
        SampledSignal::new(self.output.clone(), data)
    }
}

/// Chirp-FFT transform on the natural output grid.
pub fn frft_fast(f: &SampledSignal, order: TransformOrder) -> Result<SampledSignal> {
    match order.kind() {
        OrderKind::Identity => Ok(f.clone()),
        OrderKind::Parity => Ok(reflect(f)),
        OrderKind::Generic => FrftPlan::fast(f.grid(), order)?.execute(f),
    }
}

/// Inverse transform: the order `-alpha` fast path.
pub fn frft_inverse(g: &SampledSignal, order: TransformOrder) -> Result<SampledSignal> {
    frft_fast(g, order.neg())
}

/// Translation, modulation and unimodular dilation operators.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorKind {
    /// `f(t + eta) exp(i <t, eta> cot a)`
    Translate { eta: Vec<f64>, order: TransformOrder },
    /// `exp(i <t, eta> csc a + (i/2)|eta|^2 cot a) f(t)`
    Modulate { eta: Vec<f64>, order: TransformOrder },
    /// `f(a t)` with every `|a_i| = 1`
    Dilate { a: Vec<f64> },
}

pub fn apply_operator(f: &SampledSignal, op: &OperatorKind) -> Result<SampledSignal> {
    let n = f.dim();
    let check_dim = |v: &[f64]| {
        if v.len() != n {
            Err(FrwtError::DimensionMismatch { expected: n, got: v.len() })
        } else {
            Ok(())
        }
    };
    match op {
        OperatorKind::Translate { eta, order } => {
            check_dim(eta)?;
            order.require_generic()?;
            let grid = f.grid();
            let mut shifts = Vec::with_capacity(n);
            for (i, (e, ax)) in eta.iter().zip(grid.axes()).enumerate() {
                let s = e / ax.step;
                if (s - s.round()).abs() > 1e-9 * s.abs().max(1.0) {
                    return Err(FrwtError::OffGridShift { axis: i, shift: *e });
                }
                shifts.push(s.round() as i64);
            }
            let cot = order.cot();
            let strides = grid.strides();
            let shape = grid.shape();
            let mut idx = vec![0usize; n];
            let mut p = vec![0.0; n];
            let values = (0..grid.len())
                .map(|k| {
                    grid.unravel(k, &mut idx);
                    let mut src = 0usize;
                    for i in 0..n {
                        let j = idx[i] as i64 + shifts[i];
                        if j < 0 || j >= shape[i] as i64 {
                            return Complex64::new(0.0, 0.0);
                        }
                        src += j as usize * strides[i];
                    }
                    grid.point(k, &mut p);
                    let dot: f64 = p.iter().zip(eta).map(|(a, b)| a * b).sum();
                    f.values()[src] * cis(dot * cot)
                })
                .collect();
            SampledSignal::new(grid.clone(), values)
        }
        OperatorKind::Modulate { eta, order } => {
            check_dim(eta)?;
            order.require_generic()?;
            let (cot, csc) = (order.cot(), order.csc());
            let e2: f64 = eta.iter().map(|x| x * x).sum();
            Ok(f.map_with_coords(|t, z| {
                let dot: f64 = t.iter().zip(eta).map(|(a, b)| a * b).sum();
                z * cis(dot * csc + 0.5 * e2 * cot)
            }))
        }
        OperatorKind::Dilate { a } => {
            check_dim(a)?;
            if a.iter().any(|x| x.abs() != 1.0) {
                return Err(FrwtError::InvalidOperator("dilation needs |a_i| = 1".into()));
            }
            let grid = f.grid();
            for (i, (ai, ax)) in a.iter().zip(grid.axes()).enumerate() {
                if *ai < 0.0 && !ax.is_symmetric() {
                    return Err(FrwtError::InvalidOperator(format!(
                        "axis {i} is not symmetric about the origin"
                    )));
                }
            }
            let strides = grid.strides();
            let shape = grid.shape();
            let mut idx = vec![0usize; n];
            let values = (0..grid.len())
                .map(|k| {
                    grid.unravel(k, &mut idx);
                    let src: usize = (0..n)
                        .map(|i| {
                            let j = if a[i] < 0.0 { shape[i] - 1 - idx[i] } else { idx[i] };
                            j * strides[i]
                        })
                        .sum();
                    f.values()[src]
                })
                .collect();
            SampledSignal::new(grid.clone(), values)
        }
    }
}
