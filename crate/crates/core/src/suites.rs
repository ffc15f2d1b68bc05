// SPDX-License-Identifier: MIT

//! Built-in verification suites. Each suite runs its checks on fixed
//! fixtures and returns one record per check.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cfrwt::{cfrwt_fast, peak_probes, plancherel_check, reconstruct, KernelContext};
use crate::conv::{convolution_theorem_check, scaled_conv_identity_check};
use crate::error::{FrwtError, Result};
use crate::fixtures::{suite as fixture_suite, Fixture};
use crate::frft::{frft_direct, frft_fast, frft_inverse, TransformOrder};
use crate::grid::{l2_norm, relative_l2_error, Grid, SampledSignal};
use crate::morrey::{
    morrey_bound_check, morrey_distance_checks, morrey_growth_check, morrey_norm, MorreyConfig, MorreyOperand,
};
use crate::report::VerificationReport;
use crate::uncertainty::{
    heisenberg_cfrwt, heisenberg_two_domain, local_uncertainty_scan, moment_identity_check, nested_balls,
    region_identity_check, Region,
};
use crate::wavelet::{admissibility_constant, ScaleGrid, UGrid, Verdict, WaveletSpec};
use crate::Complex64;

/// Named suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Parseval,
    Additivity,
    Convolution,
    Plancherel,
    Reconstruction,
    Kernel,
    Heisenberg,
    Local,
    Morrey,
    All,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Parseval,
        Suite::Additivity,
        Suite::Convolution,
        Suite::Plancherel,
        Suite::Reconstruction,
        Suite::Kernel,
        Suite::Heisenberg,
        Suite::Local,
        Suite::Morrey,
        Suite::All,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Parseval => "parseval",
            Suite::Additivity => "additivity",
            Suite::Convolution => "convolution",
            Suite::Plancherel => "plancherel",
            Suite::Reconstruction => "reconstruction",
            Suite::Kernel => "kernel",
            Suite::Heisenberg => "heisenberg",
            Suite::Local => "local",
            Suite::Morrey => "morrey",
            Suite::All => "all",
        }
    }

    pub fn names() -> Vec<&'static str> {
        Self::ALL.iter().map(|s| s.name()).collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = FrwtError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| FrwtError::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

/// Per-check tolerances.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances {
    pub fast_direct: f64,
    pub unitarity: f64,
    pub additivity: f64,
    pub inversion: f64,
    pub convolution: f64,
    pub admissibility: f64,
    pub plancherel: f64,
    pub reconstruction: f64,
    pub reconstruction_pair: f64,
    pub kernel_genuine: f64,
    pub kernel_noise: f64,
    pub heisenberg: f64,
    pub extremal: f64,
    pub cfrwt_heisenberg: f64,
    pub identity: f64,
    pub slope: f64,
    pub stability: f64,
    pub morrey: f64,
    pub morrey_indicator: f64,
    pub growth: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            fast_direct: 1e-8,
            unitarity: 1e-6,
            additivity: 1e-4,
            inversion: 1e-6,
            convolution: 1e-6,
            admissibility: 0.02,
            plancherel: 0.05,
            reconstruction: 0.05,
            reconstruction_pair: 0.08,
            kernel_genuine: 0.05,
            kernel_noise: 0.2,
            heisenberg: 1e-3,
            extremal: 1e-4,
            cfrwt_heisenberg: 0.05,
            identity: 0.05,
            slope: 0.1,
            stability: 0.1,
            morrey: 0.0,
            morrey_indicator: 1e-6,
            growth: 0.1,
        }
    }
}

impl Tolerances {
    /// Overrides one tolerance by field name.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(FrwtError::InvalidParameter(format!("tolerance {key} = {value}")));
        }
        let slot = match key {
            "fast_direct" => &mut self.fast_direct,
            "unitarity" => &mut self.unitarity,
            "additivity" => &mut self.additivity,
            "inversion" => &mut self.inversion,
            "convolution" => &mut self.convolution,
            "admissibility" => &mut self.admissibility,
            "plancherel" => &mut self.plancherel,
            "reconstruction" => &mut self.reconstruction,
            "reconstruction_pair" => &mut self.reconstruction_pair,
            "kernel_genuine" => &mut self.kernel_genuine,
            "kernel_noise" => &mut self.kernel_noise,
            "heisenberg" => &mut self.heisenberg,
            "extremal" => &mut self.extremal,
            "cfrwt_heisenberg" => &mut self.cfrwt_heisenberg,
            "identity" => &mut self.identity,
            "slope" => &mut self.slope,
            "stability" => &mut self.stability,
            "morrey" => &mut self.morrey,
            "morrey_indicator" => &mut self.morrey_indicator,
            "growth" => &mut self.growth,
            _ => return Err(FrwtError::InvalidParameter(format!("unknown tolerance {key:?}"))),
        };
        *slot = value;
        Ok(())
    }
}

/// Orders used by the transform suites.
pub const GENERIC_ORDERS: [f64; 5] = [0.7, 1.1, FRAC_PI_2, 2.2, -0.9];

fn o(a: f64) -> TransformOrder {
    TransformOrder::of(a)
}

fn mh() -> WaveletSpec {
    WaveletSpec::catalog("mexican_hat", 1).expect("catalog wavelet")
}

fn catalog(name: &str) -> WaveletSpec {
    WaveletSpec::catalog(name, 1).expect("catalog wavelet")
}

fn packet() -> Fixture {
    Fixture::Packet { sigma: 1.0, freq: vec![4.0] }
}

fn peak(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn max_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn run(suite: Suite, tol: &Tolerances) -> Result<Vec<VerificationReport>> {
    match suite {
        Suite::Parseval => parseval(tol),
        Suite::Additivity => additivity(tol),
        Suite::Convolution => convolution(tol),
        Suite::Plancherel => plancherel(tol),
        Suite::Reconstruction => reconstruction(tol),
        Suite::Kernel => kernel(tol),
        Suite::Heisenberg => heisenberg(tol),
        Suite::Local => local(tol),
        Suite::Morrey => morrey(tol),
        Suite::All => {
            let mut out = Vec::new();
            for s in &Suite::ALL[..Suite::ALL.len() - 1] {
                out.extend(run(*s, tol)?);
            }
            Ok(out)
        }
    }
}

/// Fast vs direct transform, unitarity over the fixture suite and
/// inversion round trips.
pub fn parseval(tol: &Tolerances) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for (g, seed) in [(Grid::centered(1, 8.0, 64)?, 7), (Grid::centered(2, 6.0, 32)?, 9)] {
        let f = Fixture::Random { seed, atoms: 4, spread: 1.5 }.sample(&g);
        for a in GENERIC_ORDERS {
            let fast = frft_fast(&f, o(a))?;
            let direct = frft_direct(&f, o(a), fast.grid())?;
            let dev = max_dev(fast.values(), direct.values());
            out.push(
                VerificationReport::deviation(
                    "frft_fast_vs_direct",
                    peak(fast.values()),
                    peak(direct.values()),
                    dev,
                    tol.fast_direct,
                )
                .with_grid(&g)
                .with_case(format!("dim={} alpha={a}", g.dim())),
            );
        }
    }

    let g = Grid::centered(1, 16.0, 256)?;
    for fx in fixture_suite() {
        let f = fx.sample(&g);
        let n = l2_norm(&f);
        for a in GENERIC_ORDERS {
            let m = l2_norm(&frft_fast(&f, o(a))?);
            out.push(
                VerificationReport::deviation("frft_unitarity", m, n, (m - n).abs() / n, tol.unitarity)
                    .with_grid(&g)
                    .with_case(format!("{} alpha={a}", fx.label())),
            );
        }
    }

    for fx in [Fixture::gaussian(1.0), Fixture::Random { seed: 5, atoms: 3, spread: 2.0 }] {
        let f = fx.sample(&g);
        for a in [0.3, 1.2, -2.0] {
            let back = frft_inverse(&frft_fast(&f, o(a))?, o(a))?;
            let e = relative_l2_error(&back, &f)?;
            out.push(
                VerificationReport::deviation("frft_inversion", l2_norm(&back), l2_norm(&f), e, tol.inversion)
                    .with_grid(&g)
                    .with_case(format!("{} alpha={a}", fx.label())),
            );
        }
    }
    Ok(out)
}

/// Input grid on `[-half, half]` fine enough for direct quadrature to
/// resolve every output point of `out` at order `o`.
fn oracle_grid(out: &Grid, o: TransformOrder, half: f64) -> Result<Grid> {
    let ax = out.axis(0);
    let xi = ax.start.abs().max(ax.end().abs());
    let band = xi * o.csc().abs() + half * o.cot().abs() + 10.0;
    let step = PI / band / 1.25;
    Grid::centered(1, half, ((2.0 * half / step).ceil() as usize).next_power_of_two())
}

/// Ten random order pairs with `a`, `b` and `a + b` inside `(-pi, pi)`.
pub fn additivity_pairs() -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut v = Vec::new();
    while v.len() < 10 {
        let mut draw = || rng.gen_range(0.3f64..1.4) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let (a, b) = (draw(), draw());
        if (a + b).abs() >= 0.3 {
            v.push((a, b));
        }
    }
    v
}

/// `F_b F_a f` against a direct `F_{a+b} f` on a resolving input grid.
pub fn additivity(tol: &Tolerances) -> Result<Vec<VerificationReport>> {
    let half = 12.0;
    let g = Grid::centered(1, half, 128)?;
    let fx = Fixture::Random { seed: 11, atoms: 3, spread: 1.5 };
    let f = fx.sample(&g);
    let mut out = Vec::new();
    for (a, b) in additivity_pairs() {
        let two = frft_fast(&frft_fast(&f, o(a))?, o(b))?;
        let sum = o(a).plus(&o(b));
        let fine = fx.sample(&oracle_grid(two.grid(), sum, half)?);
        let one = frft_direct(&fine, sum, two.grid())?;
        let r = l2_norm(&two.sub(&one)?) / l2_norm(&f);
        out.push(
            VerificationReport::deviation("frft_additivity", l2_norm(&two), l2_norm(&one), r, tol.additivity)
                .with_grid(&g)
                .with_case(format!("alpha={a:.4} beta={b:.4}")),
        );
    }
    Ok(out)
}

/// Spectral identity of the fractional convolution at five orders, in one
/// and two dimensions, plus the scaled variant.
pub fn convolution(tol: &Tolerances) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let g = Grid::centered(1, 16.0, 256)?;
    let f = Fixture::Random { seed: 3, atoms: 3, spread: 1.5 }.sample(&g);
    let h = Fixture::Packet { sigma: 0.8, freq: vec![1.0] }.sample(&g);
    for a in [0.35, 0.9, FRAC_PI_2, 2.3, -1.2] {
        out.push(convolution_theorem_check(&f, &h, o(a), tol.convolution)?.with_case(format!("dim=1 alpha={a}")));
    }
    let g2 = Grid::centered(2, 10.0, 64)?;
    let f2 = Fixture::Random { seed: 4, atoms: 2, spread: 1.0 }.sample(&g2);
    let h2 = Fixture::gaussian(0.7).sample(&g2);
    out.push(convolution_theorem_check(&f2, &h2, o(0.8), tol.convolution)?.with_case("dim=2 alpha=0.8"));

    let gf = Fixture::gaussian(1.0).sample(&g);
    let kern = Fixture::Gaussian { center: vec![0.4], sigma: 0.7, amplitude: 1.0 };
    for (s, a) in [(1.0, FRAC_PI_2), (-1.0, FRAC_PI_2), (2.0, 0.8), (-0.5, 1.1), (1.5, -0.7)] {
        out.push(
            scaled_conv_identity_check(&gf, |x| kern.eval(x), &[s], o(a), tol.convolution)?
                .with_case(format!("scale={s} alpha={a}")),
        );
    }
    Ok(out)
}

/// Admissibility constants and the CFrWT Plancherel ratio over nested
/// scale ranges.
pub fn plancherel(tol: &Tolerances) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let ug = UGrid::default();
    let q = o(FRAC_PI_2);
    let adm = admissibility_constant(&mh(), q, &ug)?;
    out.push(
        VerificationReport::deviation(
            "admissibility_constant",
            adm.c_psi_alpha,
            1.0,
            (adm.c_psi_alpha - 1.0).abs(),
            tol.admissibility,
        )
        .with_case("mexican_hat alpha=pi/2"),
    );

    // |psi_hat(0)|^2 2 ln 2 per halving
    let gauss = admissibility_constant(&catalog("gaussian"), q, &ug)?;
    let steps: Vec<f64> = gauss.trace.windows(2).map(|w| w[1].1 - w[0].1).collect();
    let mean = steps.iter().sum::<f64>() / steps.len().max(1) as f64;
    let expect = 2.0 * LN_2;
    let mut r = VerificationReport::deviation(
        "admissibility_divergence",
        mean,
        expect,
        (mean - expect).abs() / expect,
        tol.admissibility,
    )
    .with_case(format!("gaussian alpha=pi/2 halvings={}", ug.halvings))
    .budget_line("halvings", steps.len() as f64);
    if gauss.verdict != Verdict::Divergent {
        r.pass = false;
        r = r.warn(format!("verdict {:?}", gauss.verdict));
    }
    out.push(r);

    let g = Grid::centered(1, 25.6, 256)?;
    let f = Fixture::gaussian(0.25).sample(&g);
    let c = adm.c_psi_alpha;
    let mut ratios = Vec::new();
    for (k, m) in [(2, 32), (3, 48), (4, 64)] {
        let s = 2f64.powi(k);
        let ag = ScaleGrid::new(1, 1.0 / s, s, m)?;
        let w = cfrwt_fast(&f, &mh(), q, &ag)?;
        let r = plancherel_check(&w, &f, c, tol.plancherel)?.with_case(format!("a in +-[2^-{k}, 2^{k}] count={m}"));
        ratios.push(r.ratio);
        if k == 4 {
            out.push(r);
        }
    }
    let gaps: Vec<f64> = ratios.iter().map(|r| (r - 1.0).abs()).collect();
    let monotone = gaps.windows(2).all(|p| p[1] < p[0]);
    let mut m = VerificationReport::deviation(
        "plancherel_convergence",
        gaps[gaps.len() - 1],
        gaps[0],
        if monotone { 0.0 } else { 1.0 },
        0.0,
    )
    .with_grid(&g)
    .with_case("nested ranges k = 2, 3, 4");
    for (k, r) in ratios.iter().enumerate() {
        m = m.budget_line(&format!("ratio_k{}", k + 2), *r);
    }
    out.push(m);

    let pk = packet().sample(&g);
    let c8 = admissibility_constant(&mh(), o(0.8), &ug)?.c_psi_alpha;
    let w = cfrwt_fast(&pk, &mh(), o(0.8), &ScaleGrid::default_1d())?;
    out.push(plancherel_check(&w, &pk, c8, tol.plancherel)?.with_case("packet alpha=0.8"));
    Ok(out)
}

/// Single-wavelet and two-wavelet reconstruction of a wave packet.
pub fn reconstruction(tol: &Tolerances) -> Result<Vec<VerificationReport>> {
    let g = Grid::centered(1, 25.6, 256)?;
    let f = packet().sample(&g);
    let ag = ScaleGrid::default_1d();
    let ug = UGrid::default();
    let dog4 = catalog("dog4");
    let mut out = Vec::new();
    for a in [FRAC_PI_2, 0.9] {
        let w = cfrwt_fast(&f, &mh(), o(a), &ag)?;
        let rec = reconstruct(&w, &mh(), &mh(), &ug)?;
        let e = relative_l2_error(&rec, &f)?;
        out.push(
            VerificationReport::deviation("reconstruction", l2_norm(&rec), l2_norm(&f), e, tol.reconstruction)
                .with_grid(&g)
                .with_case(format!("mexican_hat alpha={a}")),
        );
        let w4 = cfrwt_fast(&f, &dog4, o(a), &ag)?;
        let rec = reconstruct(&w4, &mh(), &dog4, &ug)?;
        let e = relative_l2_error(&rec, &f)?;
        out.push(
            VerificationReport::deviation(
                "reconstruction_pair",
                l2_norm(&rec),
                l2_norm(&f),
                e,
                tol.reconstruction_pair,
            )
            .with_grid(&g)
            .with_case(format!("analysis dog4, synthesis mexican_hat alpha={a}")),
        );
    }
    Ok(out)
}

/// Range-membership discriminator: genuine coefficient arrays reproduce
/// under the kernel, noise arrays do not.
pub fn kernel(tol: &Tolerances) -> Result<Vec<VerificationReport>> {
    let g = Grid::centered(1, 25.6, 256)?;
    let ag = ScaleGrid::default_1d();
    let ug = UGrid::default();
    let dog4 = catalog("dog4");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut out = Vec::new();
    for (trial, a) in [0.6, 0.9, FRAC_PI_2, 2.0, -1.1].into_iter().enumerate() {
        let f = Fixture::Random { seed: trial as u64, atoms: 3, spread: 3.0 }.sample(&g);
        let w = cfrwt_fast(&f, &mh(), o(a), &ag)?;
        let probes = peak_probes(&w, 5, 2.0, 16);
        let phi = if trial % 2 == 0 { mh() } else { dog4.clone() };
        let k = KernelContext::new(&phi, &mh(), o(a), &ug)?;
        let genuine = k.range_residual(&w, &probes)?;
        let case = format!("trial={trial} alpha={a} phi={}", phi.name());
        out.push(
            VerificationReport::upper_bound("kernel_genuine_residual", genuine, tol.kernel_genuine, 0.0)
                .with_grid(&g)
                .with_case(case.clone()),
        );
        let noise: Vec<Complex64> =
            (0..w.values().len()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let r = k.range_residual(&w.with_values(noise)?, &probes)?;
        out.push(
            VerificationReport::lower_bound("kernel_noise_residual", r, tol.kernel_noise, 0.0)
                .with_grid(&g)
                .with_case(case),
        );
    }
    Ok(out)
}

/// Two-domain inequality over the fixture suite, Gaussian extremality, the
/// CFrWT inequality and the moment and region energy identities.
pub fn heisenberg(tol: &Tolerances) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let g = Grid::centered(1, 25.6, 512)?;
    let pairs = [(FRAC_PI_2, 0.0), (1.2, 0.3), (0.9, -0.6), (2.0, 0.5), (-1.1, 0.7)];
    for fx in fixture_suite() {
        let f = fx.sample(&g);
        for (a, b) in pairs {
            let mut r = heisenberg_two_domain(&f, o(a), o(b))?;
            r.slack = tol.heisenberg;
            r.pass = r.ratio >= 1.0 - tol.heisenberg;
            out.push(
                r.to_verification("heisenberg_two_domain")
                    .with_grid(&g)
                    .with_case(format!("{} alpha={a} beta={b}", fx.label())),
            );
        }
    }

    let f = Fixture::gaussian(1.0).sample(&g);
    let r = heisenberg_two_domain(&f, o(FRAC_PI_2), o(0.0))?;
    let quarter = PI / 4.0;
    out.push(
        VerificationReport::deviation("heisenberg_extremal", r.lhs, r.rhs, (r.ratio - 1.0).abs(), tol.extremal)
            .with_grid(&g)
            .with_case("gaussian(sigma=1) alpha=pi/2 beta=0")
            .budget_line("lhs_minus_pi_over_4", r.lhs - quarter)
            .budget_line("rhs_minus_pi_over_4", r.rhs - quarter),
    );

    let g = Grid::centered(1, 25.6, 256)?;
    let ug = UGrid::default();
    let ag = ScaleGrid::default_1d();
    for (fx, a, b) in [(Fixture::gaussian(1.0), FRAC_PI_2, 0.0), (packet(), FRAC_PI_2, 0.0), (packet(), 1.1, 0.3)] {
        let f = fx.sample(&g);
        let mut r = heisenberg_cfrwt(&f, &mh(), o(a), o(b), &ag, &ug)?;
        r.slack = tol.cfrwt_heisenberg;
        r.pass = r.normalized_ratio.is_some_and(|v| v >= 1.0 - tol.cfrwt_heisenberg);
        out.push(
            r.to_verification("heisenberg_cfrwt")
                .with_grid(&g)
                .with_case(format!("{} alpha={a} beta={b}", fx.label())),
        );
    }
    let f = packet().sample(&g);
    for a in [FRAC_PI_2, 0.8, 1.1] {
        let c = admissibility_constant(&mh(), o(a), &ug)?.c_psi_alpha;
        let w = cfrwt_fast(&f, &mh(), o(a), &ag)?;
        out.push(moment_identity_check(&w, &f, c, tol.identity)?.with_case(format!("packet alpha={a}")));
        // the packet's fractional spectrum peaks at 4 sin(alpha)
        let p = 4.0 * a.sin();
        let e = Region::Box { lo: vec![p - 2.0], hi: vec![p + 2.0] };
        out.push(
            region_identity_check(&w, &f, c, &e, tol.identity)?
                .with_case(format!("packet alpha={a} E=[{:.3}, {:.3}]", p - 2.0, p + 2.0)),
        );
    }
    Ok(out)
}

/// Local uncertainty: small-ball energy decay against `lambda(E)^{2 theta/n}`
/// and stability of the empirical constant under scan refinement.
///
/// The slope record checks the decay direction the bound implies, slope
/// `>= 2 theta/n - slack`; the maximum slope is carried as a budget line.
pub fn local(tol: &Tolerances) -> Result<Vec<VerificationReport>> {
    let g = Grid::centered(1, 25.6, 512)?;
    let fam: Vec<SampledSignal> =
        [Fixture::gaussian(1.0), Fixture::gaussian(0.6), packet()].iter().map(|fx| fx.sample(&g)).collect();
    let q = o(FRAC_PI_2);
    let z = o(0.0);
    let mut out = Vec::new();
    for theta in [0.25, 0.4] {
        let small: Vec<Region> = [0.0, 0.5, 4.0].iter().flat_map(|c| nested_balls(&[*c], 0.01, 0.1, 6)).collect();
        let s = local_uncertainty_scan(&fam, q, z, theta, &small)?;
        let (lo, hi) = (s.min_slope().unwrap_or(f64::NAN), s.max_slope().unwrap_or(f64::NAN));
        let mut r = VerificationReport::deviation("local_small_ball_slope", lo, s.exponent, s.exponent - lo, tol.slope)
            .with_grid(&g)
            .with_case(format!("theta={theta} radii 0.01..0.1"))
            .budget_line("max_slope", hi)
            .budget_line("min_slope", lo);
        if hi > s.exponent + tol.slope {
            r = r.warn(format!("max slope {hi:.4} exceeds 2 theta/n + {} = {:.4}", tol.slope, s.exponent + tol.slope));
        }
        out.push(r);

        let coarse: Vec<Region> =
            [-1.0, 0.0, 1.0, 4.0].iter().flat_map(|c| nested_balls(&[*c], 0.05, 4.0, 8)).collect();
        let fine: Vec<Region> = [-1.0, -0.5, 0.0, 0.5, 1.0, 3.5, 4.0, 4.5]
            .iter()
            .flat_map(|c| nested_balls(&[*c], 0.05, 4.0, 16))
            .collect();
        let a = local_uncertainty_scan(&fam, q, z, theta, &coarse)?.a_theta;
        let b = local_uncertainty_scan(&fam, q, z, theta, &fine)?.a_theta;
        let dev = if a.is_finite() && b.is_finite() && a > 0.0 { (b - a).abs() / a } else { f64::INFINITY };
        out.push(
            VerificationReport::deviation("local_constant_stability", a, b, dev, tol.stability)
                .with_grid(&g)
                .with_case(format!("theta={theta} centers 4 -> 8, radii 8 -> 16")),
        );
    }
    Ok(out)
}

/// Indicator Morrey norm, the boundedness and distance inequalities on
/// catalog fixtures and the growth exponent in the scale.
pub fn morrey(tol: &Tolerances) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let gi = Grid::uniform_1d(-16.0, 1.0 / 16.0, 513)?;
    let ind = Fixture::Indicator { half_width: 1.0 };
    let cfg = MorreyConfig::octave_scan(&gi, 0.5, 65, 1.0 / 16.0, 16.0, 4)?;
    let e = morrey_norm(&ind.sample(&gi), &cfg)?;
    out.push(
        VerificationReport::deviation("morrey_indicator_norm", e.value, 2.0, (e.value - 2.0).abs(), tol.morrey_indicator)
            .with_grid(&gi)
            .with_case("indicator(h=1) nu=0.5")
            .budget_line("argmax_center", e.center[0])
            .budget_line("argmax_radius", e.radius),
    );

    let g = Grid::centered(1, 25.6, 512)?;
    let fixtures = [
        Fixture::gaussian(1.0),
        Fixture::gaussian(0.1),
        ind.clone(),
        packet(),
        Fixture::Random { seed: 3, atoms: 3, spread: 2.0 },
    ];
    let waves = [(mh(), FRAC_PI_2), (catalog("dog1"), 1.0)];
    let dog2 = catalog("dog2");
    for nu in [0.0, 0.5] {
        let cfg = MorreyConfig::default_for(&g, nu)?;
        for fx in &fixtures {
            let f = MorreyOperand::fixture(fx, &g, nu);
            for (psi, al) in &waves {
                for a in [0.5, 1.0, 2.0, 4.0] {
                    out.push(
                        morrey_bound_check(&f, psi, &[a], o(*al), &cfg, tol.morrey)?
                            .with_case(format!("{} {} alpha={al} a={a} nu={nu}", fx.label(), psi.name())),
                    );
                }
            }
            let eps = 0.1;
            let psi = mh().plus(Complex64::new(eps, 0.0), &dog2)?;
            let bump = Fixture::Gaussian { center: vec![0.5], sigma: 0.7, amplitude: eps };
            let gs = f.signal.add(&bump.sample(&g))?;
            for r in morrey_distance_checks(&f, &gs, bump.morrey_norm(1, nu), &mh(), &psi, &[2.0], o(1.2), &cfg, tol.morrey)? {
                out.push(r.with_case(format!("{} eps={eps} a=2 alpha=1.2 nu={nu}", fx.label())));
            }
        }
    }

    let gw = Grid::centered(1, 51.2, 2048)?;
    let cfg = MorreyConfig::default_for(&gw, 0.0)?;
    let f = Fixture::gaussian(0.1).sample(&gw);
    for al in [FRAC_PI_2, 1.0] {
        out.push(
            morrey_growth_check(&f, &mh(), o(al), &cfg, &[1.0, 2.0, 4.0, 8.0], tol.growth)?
                .with_case(format!("gaussian(sigma=0.1) mexican_hat alpha={al} nu=0")),
        );
    }
    Ok(out)
}
