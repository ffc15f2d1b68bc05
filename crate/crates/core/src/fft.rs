// SPDX-License-Identifier: MIT

//! Axis-wise FFT passes over row-major arrays.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{FftDirection, FftPlanner};

/// Applies `op` to every 1-D line along `axis`, in place.
///
/// Lines are processed independently, so the result does not depend on the
/// thread count.
pub fn for_each_line<F>(data: &mut [Complex64], shape: &[usize], axis: usize, op: F)
where
    F: Fn(usize, &mut [Complex64]) + Sync,
{
    let n = shape[axis];
    let inner: usize = shape[axis + 1..].iter().product();
    let outer: usize = shape[..axis].iter().product();
    if inner == 1 {
        data.par_chunks_mut(n).enumerate().for_each(|(line, chunk)| op(line, chunk));
        return;
    }
    let block = n * inner;
    let lines: Vec<Vec<Complex64>> = (0..outer * inner)
        .into_par_iter()
        .map(|line| {
            let (o, i) = (line / inner, line % inner);
            let mut buf: Vec<Complex64> = (0..n).map(|k| data[o * block + k * inner + i]).collect();
            op(line, &mut buf);
            buf
        })
        .collect();
    for (line, buf) in lines.into_iter().enumerate() {
        let (o, i) = (line / inner, line % inner);
        for (k, z) in buf.into_iter().enumerate() {
            data[o * block + k * inner + i] = z;
        }
    }
}

/// Unnormalized DFT along one axis. `forward` uses `exp(-2 pi i jk/N)`.
pub fn fft_axis(data: &mut [Complex64], shape: &[usize], axis: usize, forward: bool) {
    let n = shape[axis];
    let dir = if forward { FftDirection::Forward } else { FftDirection::Inverse };
    let plan = FftPlanner::new().plan_fft(n, dir);
    for_each_line(data, shape, axis, |_, line| plan.process(line));
}

/// Unnormalized DFT along every axis.
pub fn fft_nd(data: &mut [Complex64], shape: &[usize], forward: bool) {
    for axis in 0..shape.len() {
        fft_axis(data, shape, axis, forward);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_naive_dft_along_inner_axis() {
        let shape = [3, 8];
        let data: Vec<Complex64> =
            (0..24).map(|k| Complex64::new((k as f64 * 0.37).sin(), (k as f64).cos())).collect();
        let mut fast = data.clone();
        fft_axis(&mut fast, &shape, 0, true);
        for col in 0..8 {
            for kk in 0..3 {
                let mut s = Complex64::new(0.0, 0.0);
                for j in 0..3 {
                    let ph = -2.0 * std::f64::consts::PI * (j * kk) as f64 / 3.0;
                    s += data[j * 8 + col] * Complex64::from_polar(1.0, ph);
                }
                assert!((s - fast[kk * 8 + col]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn round_trip_scales_by_length() {
        let shape = [4, 4];
        let data: Vec<Complex64> = (0..16).map(|k| Complex64::new(k as f64, 1.0)).collect();
        let mut x = data.clone();
        fft_nd(&mut x, &shape, true);
        fft_nd(&mut x, &shape, false);
        for (a, b) in x.iter().zip(&data) {
            assert!((a / 16.0 - b).norm() < 1e-12);
        }
    }
}
