// SPDX-License-Identifier: MIT

//! Uniform tensor-product grids, trapezoidal quadrature and the basic
//! integrals every transform is built on.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FrwtError, Result};

/// Maximum supported dimension.
pub const MAX_DIM: usize = 3;

/// Relative tolerance used when comparing grid geometry.
const GRID_RTOL: f64 = 1e-9;

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated accumulator for complex values.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Compensated sum of a real sequence in order.
pub fn sum_real<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    let mut acc = CompensatedSum::new();
    for x in it {
        acc.add(x);
    }
    acc.value()
}

/// One uniform axis: `start + k * step` for `k` in `0..count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !start.is_finite() || !step.is_finite() {
            return Err(FrwtError::InvalidGrid("non-finite start or step".into()));
        }
        if step <= 0.0 {
            return Err(FrwtError::InvalidGrid(format!("step {step} must be positive")));
        }
        if count < 2 {
            return Err(FrwtError::InvalidGrid(format!("count {count} must be at least 2")));
        }
        Ok(Self { start, step, count })
    }

    /// Axis of `count` points covering `[-half_width, half_width)` with the
    /// origin on a sample.
    pub fn centered(half_width: f64, count: usize) -> Result<Self> {
        let step = 2.0 * half_width / count as f64;
        Self::new(-((count / 2) as f64) * step, step, count)
    }

    #[inline]
    pub fn coord(&self, k: usize) -> f64 {
        self.start + k as f64 * self.step
    }

    pub fn end(&self) -> f64 {
        self.coord(self.count - 1)
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.coord(k)).collect()
    }

    /// Trapezoidal weights: half weight at both endpoints.
    pub fn weights(&self) -> Vec<f64> {
        let mut w = vec![self.step; self.count];
        w[0] *= 0.5;
        w[self.count - 1] *= 0.5;
        w
    }

    /// Axis with the sample set mirrored through the origin.
    pub fn reflected(&self) -> Self {
        Self { start: -self.end(), step: self.step, count: self.count }
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        let scale = self.step.max(self.start.abs()).max(self.end().abs());
        self.count == other.count
            && (self.step - other.step).abs() <= GRID_RTOL * self.step
            && (self.start - other.start).abs() <= GRID_RTOL * scale
    }

    /// True when the sample set is symmetric about the origin.
    pub fn is_symmetric(&self) -> bool {
        let scale = self.step.max(self.end().abs());
        (self.start + self.end()).abs() <= GRID_RTOL * scale
    }
}

/// Tensor-product grid of dimension 1 to 3, row-major (last axis fastest).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    axes: Vec<AxisSpec>,
}

impl Grid {
    pub fn new(axes: Vec<AxisSpec>) -> Result<Self> {
        if axes.is_empty() || axes.len() > MAX_DIM {
            return Err(FrwtError::InvalidGrid(format!(
                "dimension {} outside 1..={MAX_DIM}",
                axes.len()
            )));
        }
        for a in &axes {
            AxisSpec::new(a.start, a.step, a.count)?;
        }
        Ok(Self { axes })
    }

    pub fn uniform_1d(start: f64, step: f64, count: usize) -> Result<Self> {
        Self::new(vec![AxisSpec::new(start, step, count)?])
    }

    /// Same centered axis repeated `dim` times.
    pub fn centered(dim: usize, half_width: f64, count: usize) -> Result<Self> {
        Self::new(vec![AxisSpec::centered(half_width, count)?; dim])
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[AxisSpec] {
        &self.axes
    }

    pub fn axis(&self, i: usize) -> &AxisSpec {
        &self.axes[i]
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.count).collect()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Row-major strides.
    pub fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.dim()];
        for i in (0..self.dim().saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.axes[i + 1].count;
        }
        s
    }

    /// Multi-index of a flat index.
    pub fn unravel(&self, mut flat: usize, idx: &mut [usize]) {
        for i in (0..self.dim()).rev() {
            let c = self.axes[i].count;
            idx[i] = flat % c;
            flat /= c;
        }
    }

    /// Coordinates of a flat index.
    pub fn point(&self, flat: usize, out: &mut [f64]) {
        let mut rem = flat;
        for i in (0..self.dim()).rev() {
            let c = self.axes[i].count;
            out[i] = self.axes[i].coord(rem % c);
            rem /= c;
        }
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut p = vec![0.0; self.dim()];
        (0..self.len())
            .map(|k| {
                self.point(k, &mut p);
                p.clone()
            })
            .collect()
    }

    pub fn weights(&self) -> QuadratureWeights {
        QuadratureWeights { per_axis: self.axes.iter().map(|a| a.weights()).collect() }
    }

    /// Volume element of one cell.
    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(|a| a.step).product()
    }

    pub fn reflected(&self) -> Self {
        Self { axes: self.axes.iter().map(|a| a.reflected()).collect() }
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.axes.iter().zip(&other.axes).all(|(a, b)| a.approx_eq(b))
    }

    pub fn all_power_of_two(&self) -> bool {
        self.axes.iter().all(|a| a.count.is_power_of_two())
    }
}

/// Per-axis trapezoidal weights combined by tensor product.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureWeights {
    per_axis: Vec<Vec<f64>>,
}

impl QuadratureWeights {
    pub fn axis(&self, i: usize) -> &[f64] {
        &self.per_axis[i]
    }

    /// Full row-major weight array.
    pub fn flatten(&self) -> Vec<f64> {
        let mut out = vec![1.0];
        for w in &self.per_axis {
            let mut next = Vec::with_capacity(out.len() * w.len());
            for &o in &out {
                for &x in w {
                    next.push(o * x);
                }
            }
            out = next;
        }
        out
    }
}

/// Complex samples on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    grid: Grid,
    values: Vec<Complex64>,
}

impl SampledSignal {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(FrwtError::InvalidSignal(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        if let Some(k) = values.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(FrwtError::InvalidSignal(format!("non-finite value at index {k}")));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        let n = grid.len();
        Self { grid, values: vec![Complex64::new(0.0, 0.0); n] }
    }

    /// Samples `f` at every grid point.
    pub fn from_fn<F: Fn(&[f64]) -> Complex64>(grid: Grid, f: F) -> Self {
        let mut p = vec![0.0; grid.dim()];
        let values = (0..grid.len())
            .map(|k| {
                grid.point(k, &mut p);
                f(&p)
            })
            .collect();
        Self { grid, values }
    }

    pub fn from_real_fn<F: Fn(&[f64]) -> f64>(grid: Grid, f: F) -> Self {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn map<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Self {
        Self { grid: self.grid.clone(), values: self.values.iter().map(|&z| f(z)).collect() }
    }

    /// Pointwise map with access to coordinates.
    pub fn map_with_coords<F: Fn(&[f64], Complex64) -> Complex64>(&self, f: F) -> Self {
        let mut p = vec![0.0; self.dim()];
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(k, &z)| {
                self.grid.point(k, &mut p);
                f(&p, z)
            })
            .collect();
        Self { grid: self.grid.clone(), values }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|z| z * c)
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    /// Pointwise combination of two signals on the same grid.
    pub fn zip_with<F: Fn(Complex64, Complex64) -> Complex64>(
        &self,
        other: &Self,
        f: F,
    ) -> Result<Self> {
        if !self.grid.approx_eq(&other.grid) {
            return Err(FrwtError::GridMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { grid: self.grid.clone(), values })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Same samples attached to a different grid of equal shape.
    pub fn with_grid(self, grid: Grid) -> Result<Self> {
        if grid.shape() != self.grid.shape() {
            return Err(FrwtError::GridMismatch);
        }
        Ok(Self { grid, values: self.values })
    }
}

/// Tensor-trapezoidal integral of the samples.
pub fn integrate(f: &SampledSignal) -> Complex64 {
    let w = f.grid.weights().flatten();
    let mut acc = ComplexSum::new();
    for (z, wk) in f.values.iter().zip(&w) {
        acc.add(z * wk);
    }
    acc.value()
}

/// Tensor-trapezoidal integral of a real weight-free quantity per sample.
pub fn integrate_real<F: Fn(usize) -> f64>(grid: &Grid, f: F) -> f64 {
    let w = grid.weights().flatten();
    let mut acc = CompensatedSum::new();
    for (k, wk) in w.iter().enumerate() {
        acc.add(f(k) * wk);
    }
    acc.value()
}

/// `<f, g> = integral of f * conj(g)`.
pub fn inner_product(f: &SampledSignal, g: &SampledSignal) -> Result<Complex64> {
    if !f.grid.approx_eq(&g.grid) {
        return Err(FrwtError::GridMismatch);
    }
    let w = f.grid.weights().flatten();
    let mut acc = ComplexSum::new();
    for ((a, b), wk) in f.values.iter().zip(&g.values).zip(&w) {
        acc.add(a * b.conj() * wk);
    }
    Ok(acc.value())
}

pub fn l2_norm(f: &SampledSignal) -> f64 {
    integrate_real(&f.grid, |k| f.values[k].norm_sqr()).max(0.0).sqrt()
}

/// L1 norm by trapezoidal quadrature.
pub fn l1_norm(f: &SampledSignal) -> f64 {
    integrate_real(&f.grid, |k| f.values[k].norm())
}

/// Relative L2 distance `||f - g|| / ||g||`.
pub fn relative_l2_error(f: &SampledSignal, reference: &SampledSignal) -> Result<f64> {
    let d = f.sub(reference)?;
    Ok(l2_norm(&d) / l2_norm(reference))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_on_unit_interval() {
        let g = Grid::uniform_1d(-1.0, 0.01, 201).unwrap();
        let f = SampledSignal::from_real_fn(g, |_| 1.0);
        assert!((integrate(&f).re - 2.0).abs() < 1e-14);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let g = Grid::uniform_1d(-1.0, 0.01, 201).unwrap();
        let f = SampledSignal::from_real_fn(g, |x| x[0]);
        assert!(integrate(&f).norm() < 1e-15);
    }

    #[test]
    fn conjugates_second_argument() {
        let g = Grid::uniform_1d(-1.0, 0.01, 201).unwrap();
        let one = SampledSignal::from_real_fn(g.clone(), |_| 1.0);
        let i = SampledSignal::from_fn(g, |_| Complex64::new(0.0, 1.0));
        let ip = inner_product(&one, &i).unwrap();
        assert!((ip - Complex64::new(0.0, -2.0)).norm() < 1e-14);
    }

    #[test]
    fn grid_validation() {
        assert!(AxisSpec::new(0.0, 0.0, 4).is_err());
        assert!(AxisSpec::new(0.0, 1.0, 1).is_err());
        assert!(Grid::new(vec![]).is_err());
        let a = AxisSpec::new(0.0, 1.0, 2).unwrap();
        assert!(Grid::new(vec![a; 4]).is_err());
    }

    #[test]
    fn mismatched_grids_rejected() {
        let f = SampledSignal::zeros(Grid::uniform_1d(0.0, 1.0, 4).unwrap());
        let g = SampledSignal::zeros(Grid::uniform_1d(0.0, 1.0, 5).unwrap());
        assert_eq!(inner_product(&f, &g), Err(FrwtError::GridMismatch));
    }

    #[test]
    fn unravel_matches_point() {
        let g = Grid::new(vec![
            AxisSpec::new(0.0, 1.0, 3).unwrap(),
            AxisSpec::new(10.0, 2.0, 4).unwrap(),
        ])
        .unwrap();
        let mut idx = [0; 2];
        let mut p = [0.0; 2];
        g.unravel(7, &mut idx);
        g.point(7, &mut p);
        assert_eq!(idx, [1, 3]);
        assert_eq!(p, [1.0, 16.0]);
        assert_eq!(g.strides(), vec![4, 1]);
    }

    #[test]
    fn centered_axis_contains_origin() {
        let a = AxisSpec::centered(8.0, 256).unwrap();
        assert_eq!(a.coord(128), 0.0);
        assert_eq!(a.start, -8.0);
    }
}
