// SPDX-License-Identifier: MIT

use std::f64::consts::{FRAC_PI_2, PI};

use frwt_core::cfrwt::{
    cfrwt_direct, cfrwt_fast, inner_product_relation_check, peak_probes, plancherel_check, reconstruct,
    reconstruct_direct, reconstruct_with, CfrwtCoefficients, KernelContext,
};
use frwt_core::fixtures::Fixture;
use frwt_core::frft::TransformOrder;
use frwt_core::grid::{inner_product, l2_norm, relative_l2_error, Grid, SampledSignal};
use frwt_core::wavelet::{
    admissibility_constant, make_daughter, DaughterParams, ScaleGrid, UGrid, WaveletSpec,
};
use frwt_core::{Complex64, FrwtError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mh() -> WaveletSpec {
    WaveletSpec::catalog("mexican_hat", 1).unwrap()
}

fn wide_grid() -> Grid {
    Grid::centered(1, 25.6, 256).unwrap()
}

fn packet() -> Fixture {
    Fixture::Packet { sigma: 1.0, freq: vec![4.0] }
}

fn peak_dev(a: &CfrwtCoefficients, b: &CfrwtCoefficients) -> f64 {
    let pk = b.values().iter().map(|z| z.norm()).fold(0.0, f64::max);
    a.values().iter().zip(b.values()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max) / pk
}

#[test]
fn quarter_turn_is_classical_cwt() {
    let g = Grid::centered(1, 8.0, 64).unwrap();
    let f = Fixture::Random { seed: 1, atoms: 3, spread: 1.5 }.sample(&g);
    let ag = ScaleGrid::new(1, 0.5, 2.0, 3).unwrap();
    let w = cfrwt_direct(&f, &mh(), TransformOrder::of(FRAC_PI_2), &g, &ag).unwrap();
    let ax = g.axis(0);
    let wt = ax.weights();
    let psi = mh();
    for (ai, a) in ag.points().iter().enumerate() {
        for bi in 0..ax.count {
            let b = ax.coord(bi);
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..ax.count {
                let t = ax.coord(j);
                s += f.values()[j] * wt[j] * psi.eval(&[(t - b) / a[0]]).conj() / a[0].abs().sqrt();
            }
            assert!((s - w.get(bi, ai)).norm() < 1e-10);
        }
    }
}

#[test]
fn fast_matches_direct_1d() {
    let g = Grid::centered(1, 12.8, 128).unwrap();
    let f = Fixture::Random { seed: 2, atoms: 4, spread: 2.0 }.sample(&g);
    // the sampled oracle needs every daughter resolved by the grid: Morlet's
    // center frequency 6/a must stay well below the Nyquist frequency pi/0.2
    for (name, lo) in [("mexican_hat", 0.25), ("morlet", 1.0), ("dog1", 0.25), ("dog3", 0.25), ("gaussian", 0.25)] {
        let ag = ScaleGrid::new(1, lo, 16.0 * lo, 8).unwrap();
        assert_eq!(ag.len(), 16);
        let psi = WaveletSpec::catalog(name, 1).unwrap();
        for &a in &[0.9, 2.2, -0.6] {
            let o = TransformOrder::of(a);
            let fast = cfrwt_fast(&f, &psi, o, &ag).unwrap();
            let direct = cfrwt_direct(&f, &psi, o, &g, &ag).unwrap();
            let d = peak_dev(&fast, &direct);
            assert!(d <= 1e-6, "{name} alpha {a}: {d}");
        }
    }
}

#[test]
fn fast_matches_direct_2d() {
    let g = Grid::centered(2, 6.4, 32).unwrap();
    let f = Fixture::Random { seed: 3, atoms: 2, spread: 1.0 }.sample(&g);
    let psi = WaveletSpec::catalog("mexican_hat", 2).unwrap();
    let ag = ScaleGrid::new(2, 1.0, 4.0, 2).unwrap();
    let o = TransformOrder::of(1.1);
    let fast = cfrwt_fast(&f, &psi, o, &ag).unwrap();
    let direct = cfrwt_direct(&f, &psi, o, &g, &ag).unwrap();
    assert!(peak_dev(&fast, &direct) <= 1e-6, "{}", peak_dev(&fast, &direct));
}

#[test]
fn zero_signal_and_linearity() {
    let g = Grid::centered(1, 12.8, 128).unwrap();
    let ag = ScaleGrid::new(1, 0.25, 4.0, 8).unwrap();
    let o = TransformOrder::of(0.9);
    let z = cfrwt_fast(&SampledSignal::zeros(g.clone()), &mh(), o, &ag).unwrap();
    assert!(z.values().iter().all(|v| v.norm() == 0.0));
    let f = Fixture::Random { seed: 4, atoms: 3, spread: 2.0 }.sample(&g);
    let h = Fixture::Random { seed: 5, atoms: 3, spread: 2.0 }.sample(&g);
    let wf = cfrwt_direct(&f, &mh(), o, &g, &ag).unwrap();
    let wh = cfrwt_direct(&h, &mh(), o, &g, &ag).unwrap();
    let ws = cfrwt_direct(&f.add(&h).unwrap(), &mh(), o, &g, &ag).unwrap();
    for k in 0..ws.values().len() {
        assert!((ws.values()[k] - wf.values()[k] - wh.values()[k]).norm() < 1e-12);
    }
}

#[test]
fn self_coefficient_is_squared_norm() {
    let g = Grid::centered(1, 12.8, 256).unwrap();
    let o = TransformOrder::of(0.7);
    let ag = ScaleGrid::new(1, 1.0, 1.0 * 1.5f64.powi(2), 2).unwrap();
    let a0 = ag.points()[2].clone();
    let b0 = g.axis(0).coord(140);
    let d = make_daughter(&mh(), &DaughterParams::new(a0, vec![b0], o).unwrap(), &g).unwrap();
    let w = cfrwt_direct(&d, &mh(), o, &g, &ag).unwrap();
    let norm2 = 0.75 * PI.sqrt();
    assert!((w.get(140, 2) - Complex64::new(norm2, 0.0)).norm() < 1e-8);
}

#[test]
fn plancherel_ratio() {
    let g = wide_grid();
    let f = Fixture::gaussian(0.25).sample(&g);
    let o = TransformOrder::of(FRAC_PI_2);
    let c = admissibility_constant(&mh(), o, &UGrid::default()).unwrap().c_psi_alpha;
    let mut prev = 0.0;
    for (k, m) in [(2, 32), (3, 48), (4, 64)] {
        let s = 2f64.powi(k);
        let ag = ScaleGrid::new(1, 1.0 / s, s, m).unwrap();
        let w = cfrwt_fast(&f, &mh(), o, &ag).unwrap();
        let r = plancherel_check(&w, &f, c, 0.05).unwrap();
        assert!((r.ratio - 1.0).abs() < (prev - 1.0f64).abs(), "range 2^{k}: {}", r.ratio);
        prev = r.ratio;
        if k == 4 {
            assert!(r.pass, "{}", r.ratio);
            let w2 = cfrwt_fast(&f.scale(Complex64::new(0.0, 2.0)), &mh(), o, &ag).unwrap();
            let r2 = plancherel_check(&w2, &f.scale(Complex64::new(0.0, 2.0)), c, 0.05).unwrap();
            assert!((r2.ratio - r.ratio).abs() < 1e-12);
        }
    }
}

#[test]
fn plancherel_at_generic_order() {
    let g = wide_grid();
    let f = packet().sample(&g);
    let o = TransformOrder::of(0.8);
    let c = admissibility_constant(&mh(), o, &UGrid::default()).unwrap().c_psi_alpha;
    let w = cfrwt_fast(&f, &mh(), o, &ScaleGrid::default_1d()).unwrap();
    let r = plancherel_check(&w, &f, c, 0.05).unwrap();
    assert!(r.pass, "{}", r.ratio);
}

#[test]
fn reconstruction_single_and_pair() {
    let g = wide_grid();
    let f = packet().sample(&g);
    let ag = ScaleGrid::default_1d();
    let ug = UGrid::default();
    for &a in &[FRAC_PI_2, 0.9] {
        let o = TransformOrder::of(a);
        let w = cfrwt_fast(&f, &mh(), o, &ag).unwrap();
        let rec = reconstruct(&w, &mh(), &mh(), &ug).unwrap();
        let e = relative_l2_error(&rec, &f).unwrap();
        assert!(e <= 0.05, "alpha {a}: {e}");
        let dog4 = WaveletSpec::catalog("dog4", 1).unwrap();
        let w4 = cfrwt_fast(&f, &dog4, o, &ag).unwrap();
        let rec = reconstruct(&w4, &mh(), &dog4, &ug).unwrap();
        let e = relative_l2_error(&rec, &f).unwrap();
        assert!(e <= 0.08, "pair alpha {a}: {e}");
    }
}

#[test]
fn fast_reconstruction_matches_direct_sum() {
    let g = Grid::centered(1, 12.8, 128).unwrap();
    let f = packet().sample(&g);
    let ag = ScaleGrid::new(1, 1.0, 8.0, 6).unwrap();
    let o = TransformOrder::of(1.0);
    let w = cfrwt_fast(&f, &mh(), o, &ag).unwrap();
    let c = Complex64::new(1.3, 0.2);
    let fast = reconstruct_with(&w, &mh(), c).unwrap();
    let direct = reconstruct_direct(&w, &mh(), c, &g).unwrap();
    assert!(relative_l2_error(&fast, &direct).unwrap() < 1e-8, "{}", relative_l2_error(&fast, &direct).unwrap());
}

#[test]
fn reconstruction_edge_cases() {
    let g = Grid::centered(1, 12.8, 128).unwrap();
    let ag = ScaleGrid::new(1, 0.25, 4.0, 4).unwrap();
    let o = TransformOrder::of(0.9);
    let w = CfrwtCoefficients::from_parts(vec![Complex64::new(0.0, 0.0); 128 * 8], g.clone(), ag, o, "mexican_hat")
        .unwrap();
    let rec = reconstruct_with(&w, &mh(), Complex64::new(1.0, 0.0)).unwrap();
    assert_eq!(l2_norm(&rec), 0.0);
    assert!(matches!(
        reconstruct_with(&w, &mh(), Complex64::new(1e-10, 0.0)),
        Err(FrwtError::ZeroCrossAdmissibility { .. })
    ));
    let gauss = WaveletSpec::catalog("gaussian", 1).unwrap();
    assert!(matches!(
        reconstruct(&w, &gauss, &gauss, &UGrid::default()),
        Err(FrwtError::InadmissibleWavelet { .. })
    ));
}

#[test]
fn inner_product_relation() {
    let g = wide_grid();
    let ag = ScaleGrid::default_1d();
    let ug = UGrid::default();
    let o = TransformOrder::of(1.2);
    let even = packet().sample(&g).map_with_coords(|_, z| Complex64::new(z.norm(), 0.0));
    let odd = Fixture::Hermite { order: 1, center: vec![] }.sample(&g);
    assert!(inner_product(&even, &odd).unwrap().norm() < 1e-12);
    let r = inner_product_relation_check(&even, &odd, &mh(), &mh(), o, &ag, &ug, 1e-3).unwrap();
    assert!(r.pass, "{}", r.ratio);

    let f = packet().sample(&g);
    let h = Fixture::Packet { sigma: 1.2, freq: vec![3.5] }.sample(&g);
    let dog4 = WaveletSpec::catalog("dog4", 1).unwrap();
    let r = inner_product_relation_check(&f, &h, &mh(), &dog4, o, &ag, &ug, 0.07).unwrap();
    assert!(r.pass, "{}", r.ratio);
}

#[test]
fn kernel_diagonal_and_decay() {
    let g = Grid::centered(1, 25.6, 512).unwrap();
    let o = TransformOrder::of(0.9);
    let ug = UGrid::default();
    let k = KernelContext::new(&mh(), &mh(), o, &ug).unwrap();
    let c = admissibility_constant(&mh(), o, &ug).unwrap().c_psi_alpha;
    let diag = k.point(&[1.0], &[0.7], &[1.0], &[0.7], &g).unwrap();
    let expect = o.c_alpha(1).norm_sqr() / c * 0.75 * PI.sqrt();
    assert!(diag.value.im.abs() < 1e-10 && diag.value.re > 0.0);
    assert!((diag.value.re - expect).abs() < 1e-8 * expect);
    let far = k.point(&[-10.0], &[0.7], &[10.0], &[0.7], &g).unwrap();
    assert!(far.value.norm() < 1e-3 * diag.value.norm());
}

#[test]
fn kernel_range_discriminator() {
    let g = wide_grid();
    let ag = ScaleGrid::default_1d();
    let ug = UGrid::default();
    let dog4 = WaveletSpec::catalog("dog4", 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (trial, &a) in [0.6, 0.9, FRAC_PI_2, 2.0, -1.1].iter().enumerate() {
        let o = TransformOrder::of(a);
        let f = Fixture::Random { seed: trial as u64, atoms: 3, spread: 3.0 }.sample(&g);
        let w = cfrwt_fast(&f, &mh(), o, &ag).unwrap();
        let probes = peak_probes(&w, 5, 2.0, 16);
        assert_eq!(probes.len(), 5);
        let phi = if trial % 2 == 0 { mh() } else { dog4.clone() };
        let k = KernelContext::new(&phi, &mh(), o, &ug).unwrap();
        let genuine = k.range_residual(&w, &probes).unwrap();
        assert!(genuine <= 0.05, "trial {trial}: {genuine}");
        let noise: Vec<Complex64> =
            (0..w.values().len()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let nf = w.with_values(noise).unwrap();
        let r = k.range_residual(&nf, &probes).unwrap();
        assert!(r >= 0.2, "noise trial {trial}: {r}");
    }
}

#[test]
fn dimension_and_order_errors() {
    let g = Grid::centered(1, 8.0, 64).unwrap();
    let f = SampledSignal::zeros(g);
    let ag2 = ScaleGrid::new(2, 0.5, 2.0, 2).unwrap();
    assert!(matches!(cfrwt_fast(&f, &mh(), TransformOrder::of(1.0), &ag2), Err(FrwtError::DimensionMismatch { .. })));
    let ag = ScaleGrid::new(1, 0.5, 2.0, 2).unwrap();
    assert!(matches!(cfrwt_fast(&f, &mh(), TransformOrder::of(0.0), &ag), Err(FrwtError::DeltaKernel { .. })));
}
