// SPDX-License-Identifier: MIT

use std::f64::consts::{FRAC_PI_2, PI};

use frwt_core::conv::{convolution_theorem_check, frac_convolve, scaled_conv_identity_check};
use frwt_core::fixtures::Fixture;
use frwt_core::frft::TransformOrder;
use frwt_core::grid::{Grid, SampledSignal};
use frwt_core::{Complex64, FrwtError};
use proptest::prelude::*;

/// Double-sum quadrature of the defining integral.
fn conv_oracle(f: &SampledSignal, g: &SampledSignal, alpha: f64) -> SampledSignal {
    let fa = f.grid().axis(0);
    let ga = g.grid().axis(0);
    let w = fa.weights();
    let cot = if (alpha - FRAC_PI_2).abs() < 1e-15 { 0.0 } else { 1.0 / alpha.tan() };
    SampledSignal::from_fn(f.grid().clone(), |t| {
        let mut s = Complex64::new(0.0, 0.0);
        for l in 0..fa.count {
            let y = fa.coord(l);
            let m = ((t[0] - y - ga.start) / ga.step).round();
            if m < 0.0 || m >= ga.count as f64 {
                continue;
            }
            let ph = -0.5 * (t[0] * t[0] - y * y) * cot;
            s += Complex64::from_polar(w[l], ph) * f.values()[l] * g.values()[m as usize];
        }
        s
    })
}

fn max_dev(a: &SampledSignal, b: &SampledSignal) -> f64 {
    a.values().iter().zip(b.values()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn quarter_turn_is_classical_convolution() {
    let g = Grid::centered(1, 8.0, 128).unwrap();
    let f = Fixture::Random { seed: 1, atoms: 3, spread: 1.5 }.sample(&g);
    let h = Fixture::Indicator { half_width: 1.0 }.sample(&g);
    let c = frac_convolve(&f, &h, TransformOrder::of(FRAC_PI_2)).unwrap();
    assert!(max_dev(&c.signal, &conv_oracle(&f, &h, FRAC_PI_2)) < 1e-10);
}

#[test]
fn generic_order_matches_double_sum() {
    let fg = Grid::centered(1, 8.0, 128).unwrap();
    let f = Fixture::Random { seed: 2, atoms: 3, spread: 1.5 }.sample(&fg);
    // shorter kernel grid on the same lattice, shifted origin
    let kg = Grid::uniform_1d(-2.0, fg.axis(0).step, 40).unwrap();
    let k = Fixture::Gaussian { center: vec![0.3], sigma: 0.5, amplitude: 1.0 }.sample(&kg);
    for &a in &[0.4, 1.3, -2.1] {
        let c = frac_convolve(&f, &k, TransformOrder::of(a)).unwrap();
        assert_eq!(c.signal.grid(), f.grid());
        assert!(max_dev(&c.signal, &conv_oracle(&f, &k, a)) < 1e-10, "alpha {a}");
    }
}

#[test]
fn narrow_normalized_gaussian_is_an_approximate_identity() {
    let g = Grid::centered(1, 8.0, 1024).unwrap();
    let f = Fixture::gaussian(1.0).sample(&g);
    let s = 2.0 * g.axis(0).step;
    let amp = 1.0 / (s * (2.0 * PI).sqrt());
    let d = Fixture::Gaussian { center: vec![], sigma: s, amplitude: amp }.sample(&g);
    let c = frac_convolve(&f, &d, TransformOrder::of(0.9)).unwrap().signal;
    assert!(max_dev(&c, &f) < 1e-3, "{}", max_dev(&c, &f));
}

#[test]
fn spectral_identity_at_five_orders() {
    let g = Grid::centered(1, 16.0, 256).unwrap();
    let f = Fixture::Random { seed: 3, atoms: 3, spread: 1.5 }.sample(&g);
    let h = Fixture::Packet { sigma: 0.8, freq: vec![1.0] }.sample(&g);
    for &a in &[0.35, 0.9, FRAC_PI_2, 2.3, -1.2] {
        let r = convolution_theorem_check(&f, &h, TransformOrder::of(a), 1e-6).unwrap();
        assert!(r.pass, "alpha {a}: {}", r.ratio);
    }
}

#[test]
fn spectral_identity_in_two_dimensions() {
    let g = Grid::centered(2, 10.0, 64).unwrap();
    let f = Fixture::Random { seed: 4, atoms: 2, spread: 1.0 }.sample(&g);
    let h = Fixture::gaussian(0.7).sample(&g);
    let r = convolution_theorem_check(&f, &h, TransformOrder::of(0.8), 1e-6).unwrap();
    assert!(r.pass, "{}", r.ratio);
}

#[test]
fn scaled_identity() {
    let g = Grid::centered(1, 16.0, 256).unwrap();
    let f = Fixture::gaussian(1.0).sample(&g);
    let kern = Fixture::Gaussian { center: vec![0.4], sigma: 0.7, amplitude: 1.0 };
    for &(s, a) in &[(1.0, FRAC_PI_2), (-1.0, FRAC_PI_2), (2.0, 0.8), (-0.5, 1.1), (1.5, -0.7)] {
        let r = scaled_conv_identity_check(&f, |x| kern.eval(x), &[s], TransformOrder::of(a), 1e-6)
            .unwrap();
        assert!(r.pass, "scale {s} alpha {a}: {}", r.ratio);
    }
}

#[test]
fn scaled_identity_zero_signal() {
    let g = Grid::centered(1, 8.0, 64).unwrap();
    let f = SampledSignal::zeros(g);
    let r = scaled_conv_identity_check(&f, |x| Fixture::gaussian(1.0).eval(x), &[1.0], TransformOrder::of(1.0), 1e-6)
        .unwrap();
    assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
    assert!(r.pass);
}

#[test]
fn errors() {
    let g = Grid::centered(1, 8.0, 64).unwrap();
    let f = Fixture::gaussian(1.0).sample(&g);
    let other = Fixture::gaussian(1.0).sample(&Grid::centered(1, 8.0, 50).unwrap());
    let o = TransformOrder::of(1.0);
    assert_eq!(frac_convolve(&f, &other, o).unwrap_err(), FrwtError::StepMismatch);
    let off = Fixture::gaussian(1.0).sample(&Grid::uniform_1d(0.1, 0.25, 64).unwrap());
    assert_eq!(frac_convolve(&f, &off, o).unwrap_err(), FrwtError::StepMismatch);
    let e = scaled_conv_identity_check(&f, |_| Complex64::new(1.0, 0.0), &[0.0], o, 1e-6);
    assert_eq!(e.unwrap_err(), FrwtError::ZeroScaleComponent);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bilinear(s1 in 0u64..100, s2 in 0u64..100, c in -2.0f64..2.0, alpha in 0.2f64..2.9) {
        let g = Grid::centered(1, 8.0, 64).unwrap();
        let f1 = Fixture::Random { seed: s1, atoms: 2, spread: 1.5 }.sample(&g);
        let f2 = Fixture::Random { seed: s2 + 100, atoms: 2, spread: 1.5 }.sample(&g);
        let h = Fixture::Random { seed: s1 + 200, atoms: 2, spread: 1.5 }.sample(&g);
        let o = TransformOrder::of(alpha);
        let cc = Complex64::new(c, 0.5);
        let lin = f1.add(&f2.scale(cc)).unwrap();
        let left = frac_convolve(&lin, &h, o).unwrap().signal;
        let right = frac_convolve(&f1, &h, o).unwrap().signal
            .add(&frac_convolve(&f2, &h, o).unwrap().signal.scale(cc)).unwrap();
        let scale = left.max_abs().max(1.0);
        prop_assert!(max_dev(&left, &right) <= 1e-12 * scale);
        let left = frac_convolve(&h, &lin, o).unwrap().signal;
        let right = frac_convolve(&h, &f1, o).unwrap().signal
            .add(&frac_convolve(&h, &f2, o).unwrap().signal.scale(cc)).unwrap();
        prop_assert!(max_dev(&left, &right) <= 1e-12 * left.max_abs().max(1.0));
    }
}
