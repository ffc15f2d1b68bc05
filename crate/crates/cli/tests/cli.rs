// SPDX-License-Identifier: MIT

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use frwt_cli::config::RunConfig;
use frwt_cli::io::{
    coefficients_from_bytes, coefficients_to_bytes, parse_grid, signal_from_bytes, signal_from_csv, signal_to_bytes,
    signal_to_csv,
};
use frwt_core::cfrwt::cfrwt_fast;
use frwt_core::fixtures::Fixture;
use frwt_core::frft::TransformOrder;
use frwt_core::grid::{l2_norm, Grid, SampledSignal};
use frwt_core::wavelet::{ScaleGrid, WaveletSpec};
use proptest::prelude::*;
use serde_json::Value;
use tempfile::TempDir;

fn frwt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frwt")).args(args).env_remove("FRWT_THREADS").output().unwrap()
}

fn p(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn write_fixture(dir: &TempDir, name: &str, fx: &Fixture, grid: &Grid) -> PathBuf {
    let path = p(dir, name);
    std::fs::write(&path, signal_to_bytes(&fx.sample(grid))).unwrap();
    path
}

#[test]
fn signal_file_round_trip_is_byte_identical() {
    let g = Grid::new(vec![
        frwt_core::grid::AxisSpec::new(-1.5, 0.25, 8).unwrap(),
        frwt_core::grid::AxisSpec::new(0.1, 0.5, 4).unwrap(),
    ])
    .unwrap();
    let f = Fixture::Random { seed: 2, atoms: 2, spread: 1.0 }.sample(&g);
    let bytes = signal_to_bytes(&f);
    assert_eq!(&bytes[..4], b"FRWT");
    assert_eq!(u16::from_le_bytes([bytes[4], bytes[5]]), 1);
    assert_eq!(bytes[6], 2);
    assert_eq!(bytes.len(), 7 + 2 * 20 + 16 * 32);
    let back = signal_from_bytes(&bytes).unwrap();
    assert_eq!(back, f);
    assert_eq!(signal_to_bytes(&back), bytes);
}

#[test]
fn csv_and_binary_agree() {
    for g in [Grid::uniform_1d(-3.0, 0.1, 61).unwrap(), Grid::centered(2, 2.0, 8).unwrap(), Grid::centered(3, 1.0, 4).unwrap()] {
        let f = Fixture::Random { seed: 5, atoms: 3, spread: 1.0 }.sample(&g);
        let a = signal_from_csv(&signal_to_csv(&f).unwrap()).unwrap();
        let b = signal_from_bytes(&signal_to_bytes(&f)).unwrap();
        assert!(a.grid().approx_eq(b.grid()));
        let d = a.values().iter().zip(b.values()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        assert!(d <= 1e-15, "{d}");
    }
    let text = "t1,re,im\n0,1,0\n1,2,0\n2,3,0\n";
    assert_eq!(signal_from_csv(text).unwrap().len(), 3);
    assert!(signal_from_csv("x,re,im\n0,1,0\n").is_err());
    assert!(signal_from_csv("t1,re,im\n0,1,0\n1,2,0\n3,3,0\n").is_err());
    assert!(signal_from_csv("t1,re,im\n0,1,zero\n").is_err());
}

#[test]
fn malformed_files_exit_2_with_offset() {
    let dir = TempDir::new().unwrap();
    let good = signal_to_bytes(&Fixture::gaussian(1.0).sample(&Grid::centered(1, 4.0, 16).unwrap()));
    let out = p(&dir, "out.bin");

    let bad = p(&dir, "bad.bin");
    let mut b = good.clone();
    b[..4].copy_from_slice(b"FRWX");
    std::fs::write(&bad, &b).unwrap();
    let r = frwt(&["frft", s(&bad), "--alpha", "1.0", "-o", s(&out)]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("offset 0"));

    std::fs::write(&bad, &good[..good.len() - 5]).unwrap();
    let r = frwt(&["frft", s(&bad), "--alpha", "1.0", "-o", s(&out)]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("payload at byte offset 27"));

    let r = frwt(&["frft", s(&p(&dir, "missing.bin")), "--alpha", "1.0", "-o", s(&out)]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn frft_command() {
    let dir = TempDir::new().unwrap();
    let g = Grid::centered(1, 16.0, 256).unwrap();
    let input = write_fixture(&dir, "g.bin", &Fixture::gaussian(1.0), &g);
    let out = p(&dir, "t.bin");
    let r = frwt(&["frft", s(&input), "--alpha", "1.2", "-o", s(&out)]);
    assert!(r.status.success());
    let v = &json_lines(&r)[0];
    assert!(v["parseval_residual"].as_f64().unwrap() < 1e-6);
    let t = signal_from_bytes(&std::fs::read(&out).unwrap()).unwrap();
    assert!((l2_norm(&t) - v["input_l2"].as_f64().unwrap()).abs() < 1e-6);

    // identity order copies the payload
    let r = frwt(&["frft", s(&input), "--alpha", "0", "-o", s(&out)]);
    assert!(r.status.success());
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&input).unwrap());

    // csv in, negative order, direct engine agrees with fast
    let small = Grid::centered(1, 8.0, 64).unwrap();
    let f = Fixture::Random { seed: 1, atoms: 3, spread: 1.0 }.sample(&small);
    let csv = p(&dir, "f.csv");
    std::fs::write(&csv, signal_to_csv(&f).unwrap()).unwrap();
    let (fast, direct) = (p(&dir, "fast.bin"), p(&dir, "direct.bin"));
    assert!(frwt(&["frft", s(&csv), "--alpha", "-0.8", "-o", s(&fast)]).status.success());
    assert!(frwt(&["frft", s(&csv), "--alpha", "-0.8", "--engine", "direct", "-o", s(&direct)]).status.success());
    let a = signal_from_bytes(&std::fs::read(&fast).unwrap()).unwrap();
    let b = signal_from_bytes(&std::fs::read(&direct).unwrap()).unwrap();
    assert!(a.values().iter().zip(b.values()).all(|(x, y)| (x - y).norm() < 1e-8));
}

#[test]
fn delta_orders_exit_3() {
    let dir = TempDir::new().unwrap();
    let input = write_fixture(&dir, "g.bin", &Fixture::gaussian(1.0), &Grid::centered(1, 8.0, 64).unwrap());
    let out = p(&dir, "t.bin");
    let r = frwt(&["frft", s(&input), "--alpha", "3.141592653589793", "--engine", "direct", "--out-grid", "0:0.1:64", "-o", s(&out)]);
    assert_eq!(r.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&r.stderr).contains("reflection"));
    // parity with no explicit grid is dispatched exactly
    let r = frwt(&["frft", s(&input), "--alpha", "3.141592653589793", "--engine", "direct", "-o", s(&out)]);
    assert!(r.status.success());

    let cfg = p(&dir, "k.cfg");
    std::fs::write(&cfg, "alpha = 0\n").unwrap();
    let r = frwt(&["--config", s(&cfg), "cfrwt", s(&input), "-o", s(&p(&dir, "c.frwc"))]);
    assert_eq!(r.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&r.stderr).contains("identity/parity dispatch"));
}

#[test]
fn cfrwt_synth_round_trip() {
    let dir = TempDir::new().unwrap();
    let g = Grid::centered(1, 25.6, 256).unwrap();
    let input = write_fixture(&dir, "f.bin", &Fixture::Packet { sigma: 1.0, freq: vec![4.0] }, &g);
    let (c, rec) = (p(&dir, "c.frwc"), p(&dir, "r.bin"));
    let r = frwt(&["cfrwt", s(&input), "-o", s(&c)]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    assert!((json_lines(&r)[0]["plancherel_ratio"].as_f64().unwrap() - 1.0).abs() < 0.05);
    let r = frwt(&["synth", s(&c), "--reference", s(&input), "-o", s(&rec)]);
    assert!(r.status.success());
    let e = json_lines(&r)[0]["relative_l2_error"].as_f64().unwrap();
    assert!(e <= 0.05, "{e}");

    // a centered Gaussian keeps energy near zero frequency that the default
    // scale range does not capture
    let gauss = write_fixture(&dir, "g.bin", &Fixture::gaussian(0.25), &g);
    assert!(frwt(&["cfrwt", s(&gauss), "-o", s(&c)]).status.success());
    let r = frwt(&["synth", s(&c), "--reference", s(&gauss), "-o", s(&rec)]);
    let e = json_lines(&r)[0]["relative_l2_error"].as_f64().unwrap();
    assert!(e > 0.1 && e < 0.2, "{e}");

    // two-wavelet synthesis at a generic order
    let cfg = p(&dir, "k.cfg");
    std::fs::write(&cfg, "alpha = 0.9\nwavelet = dog4\n").unwrap();
    assert!(frwt(&["--config", s(&cfg), "cfrwt", s(&input), "-o", s(&c)]).status.success());
    let r = frwt(&["--config", s(&cfg), "synth", s(&c), "--phi", "mexican_hat", "--reference", s(&input), "-o", s(&rec)]);
    assert!(r.status.success());
    assert!(json_lines(&r)[0]["relative_l2_error"].as_f64().unwrap() <= 0.08);
}

#[test]
fn zero_input_gives_zero_output() {
    let dir = TempDir::new().unwrap();
    let g = Grid::centered(1, 12.8, 128).unwrap();
    let input = p(&dir, "z.bin");
    std::fs::write(&input, signal_to_bytes(&SampledSignal::zeros(g))).unwrap();
    let (c, rec) = (p(&dir, "c.frwc"), p(&dir, "r.bin"));
    assert!(frwt(&["cfrwt", s(&input), "-o", s(&c)]).status.success());
    let coeffs = coefficients_from_bytes(&std::fs::read(&c).unwrap()).unwrap();
    assert!(coeffs.values().iter().all(|z| z.norm() == 0.0));
    assert!(frwt(&["synth", s(&c), "-o", s(&rec)]).status.success());
    let r = signal_from_bytes(&std::fs::read(&rec).unwrap()).unwrap();
    assert_eq!(l2_norm(&r), 0.0);
}

#[test]
fn inadmissible_wavelet_exits_4() {
    let dir = TempDir::new().unwrap();
    let input = write_fixture(&dir, "g.bin", &Fixture::gaussian(1.0), &Grid::centered(1, 12.8, 128).unwrap());
    let cfg = p(&dir, "k.cfg");
    std::fs::write(&cfg, "wavelet = gaussian  # not a wavelet\n").unwrap();
    let r = frwt(&["--config", s(&cfg), "cfrwt", s(&input), "-o", s(&p(&dir, "c.frwc"))]);
    assert_eq!(r.status.code(), Some(4));
    let err = String::from_utf8_lossy(&r.stderr);
    assert_eq!(err.matches("u_min").count(), 8, "{err}");

    let r = frwt(&["--config", s(&cfg), "admissibility"]);
    assert_eq!(r.status.code(), Some(4));
    assert_eq!(json_lines(&r)[0]["report"]["verdict"], "Divergent");
    let r = frwt(&["admissibility"]);
    assert!(r.status.success());
    assert!((json_lines(&r)[0]["report"]["c_psi_alpha"].as_f64().unwrap() - 1.0).abs() < 0.02);
}

#[test]
fn verify_command() {
    let r = frwt(&["verify", "parseval"]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
    let recs = json_lines(&r);
    assert!(recs.len() > 100);
    for v in &recs {
        for k in ["suite", "name", "lhs", "rhs", "ratio", "tolerance", "pass", "grid"] {
            assert!(v.get(k).is_some(), "{k} missing: {v}");
        }
        assert_eq!(v["pass"], true);
    }

    let r = frwt(&["verify", "spectral"]);
    assert_eq!(r.status.code(), Some(5));
    let err = String::from_utf8_lossy(&r.stderr);
    assert!(err.contains("parseval") && err.contains("morrey") && err.contains("all"));

    // an impossible tolerance turns records into failures
    let dir = TempDir::new().unwrap();
    let cfg = p(&dir, "k.cfg");
    std::fs::write(&cfg, "tol.convolution = 0\n").unwrap();
    let r = frwt(&["--config", s(&cfg), "verify", "convolution"]);
    assert_eq!(r.status.code(), Some(1));
    assert!(json_lines(&r).iter().any(|v| v["pass"] == false));
}

#[test]
fn config_and_threads() {
    let c = RunConfig::parse("alpha = 1.1\nbeta=-0.2\n# comment\n\na_count = 32\nthreads = 2\ntol.plancherel = 0.1\n").unwrap();
    assert_eq!((c.alpha, c.beta, c.a_count, c.threads), (1.1, -0.2, 32, Some(2)));
    assert_eq!(c.tolerances.plancherel, 0.1);
    for bad in ["alpha 1", "colour = red", "a_min = 0", "a_min = 2\na_max = 1", "nu = -1", "wavelet = haar", "tol.nope = 1", "threads = 0", "alpha = nan"] {
        assert!(RunConfig::parse(bad).is_err(), "{bad:?}");
    }

    let dir = TempDir::new().unwrap();
    let cfg = p(&dir, "k.cfg");
    std::fs::write(&cfg, "u_min = -1\n").unwrap();
    assert_eq!(frwt(&["--config", s(&cfg), "admissibility"]).status.code(), Some(2));

    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_frwt")).args(["verify", "convolution"]).env("FRWT_THREADS", threads).output().unwrap()
    };
    assert!(run("2").status.success());
    assert_eq!(run("many").status.code(), Some(2));
    // output order does not depend on the thread count
    assert_eq!(run("1").stdout, run("3").stdout);
}

#[test]
fn measure_command() {
    let dir = TempDir::new().unwrap();
    let input = write_fixture(&dir, "g.bin", &Fixture::gaussian(1.0), &Grid::centered(1, 25.6, 512).unwrap());
    let r = frwt(&["measure", s(&input)]);
    assert!(r.status.success());
    let v = &json_lines(&r)[0];
    assert!((v["heisenberg"]["ratio"].as_f64().unwrap() - 1.0).abs() < 1e-4);
    let exact = Fixture::gaussian(1.0).morrey_norm(1, 0.5).unwrap();
    assert!(v["morrey"]["value"].as_f64().unwrap() <= exact * (1.0 + 1e-9));
}

#[test]
fn fixture_command_and_grid_specs() {
    let dir = TempDir::new().unwrap();
    let out = p(&dir, "f.csv");
    let r = frwt(&["fixture", "hermite", "--order", "2", "--grid", "-4:0.5:17", "-o", s(&out)]);
    assert!(r.status.success());
    let f = signal_from_csv(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(f.len(), 17);
    let g = parse_grid("-1:0.5:5, 0:1:3").unwrap();
    assert_eq!(g.shape(), vec![5, 3]);
    assert!(parse_grid("0:0:4").is_err());
    assert!(parse_grid("0:1").is_err());
}

#[test]
fn coefficient_file_round_trip() {
    let g = Grid::centered(1, 6.4, 32).unwrap();
    let f = Fixture::Packet { sigma: 1.0, freq: vec![2.0] }.sample(&g);
    let psi = WaveletSpec::catalog("morlet", 1).unwrap();
    let w = cfrwt_fast(&f, &psi, TransformOrder::of(1.3), &ScaleGrid::new(1, 0.5, 2.0, 3).unwrap()).unwrap();
    let bytes = coefficients_to_bytes(&w);
    let back = coefficients_from_bytes(&bytes).unwrap();
    assert_eq!(back.values(), w.values());
    assert_eq!(back.wavelet(), "morlet");
    assert_eq!(coefficients_to_bytes(&back), bytes);
    assert!(coefficients_from_bytes(&bytes[..bytes.len() - 1]).is_err());
    let mut b = bytes.clone();
    b[..4].copy_from_slice(b"FRWT");
    assert!(coefficients_from_bytes(&b).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signal_bytes_round_trip(
        start in -100.0f64..100.0,
        step in 1e-3f64..10.0,
        shape in prop::collection::vec(2usize..6, 1..=3),
        seed in 0u64..1000,
    ) {
        let axes = shape.iter().map(|n| frwt_core::grid::AxisSpec::new(start, step, *n).unwrap()).collect();
        let g = Grid::new(axes).unwrap();
        let f = Fixture::Random { seed, atoms: 2, spread: 1.0 }.sample(&g);
        let bytes = signal_to_bytes(&f);
        let back = signal_from_bytes(&bytes).unwrap();
        prop_assert_eq!(signal_to_bytes(&back), bytes);
    }
}
