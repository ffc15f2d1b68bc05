// SPDX-License-Identifier: MIT

use frwt_core::suites::{additivity_pairs, run, Suite, Tolerances};

fn check(s: Suite) {
    let recs = run(s, &Tolerances::default()).unwrap();
    assert!(!recs.is_empty());
    let bad: Vec<_> = recs.iter().filter(|r| !r.pass).map(|r| format!("{} [{}]: {}", r.name, r.case, r.ratio)).collect();
    assert!(bad.is_empty(), "{s}: {bad:#?}");
}

#[test]
fn parseval_suite() {
    check(Suite::Parseval);
}

#[test]
fn additivity_suite() {
    check(Suite::Additivity);
    let pairs = additivity_pairs();
    assert_eq!(pairs.len(), 10);
    assert!(pairs.iter().all(|(a, b)| (a + b).abs() >= 0.3 && (a + b).abs() < std::f64::consts::PI));
}

#[test]
fn convolution_suite() {
    check(Suite::Convolution);
}

#[test]
fn plancherel_suite() {
    check(Suite::Plancherel);
}

#[test]
fn reconstruction_suite() {
    check(Suite::Reconstruction);
}

#[test]
fn kernel_suite() {
    check(Suite::Kernel);
}

#[test]
fn heisenberg_suite() {
    check(Suite::Heisenberg);
}

#[test]
fn local_suite() {
    check(Suite::Local);
    let recs = run(Suite::Local, &Tolerances::default()).unwrap();
    // small balls decay like lambda(E), faster than the bound's exponent
    let slopes: Vec<_> = recs.iter().filter(|r| r.name == "local_small_ball_slope").collect();
    assert_eq!(slopes.len(), 2);
    assert!(slopes.iter().all(|r| !r.warnings.is_empty()));
}

#[test]
fn morrey_suite() {
    check(Suite::Morrey);
}

#[test]
fn names_and_tolerances() {
    assert_eq!(Suite::names().len(), 10);
    for n in Suite::names() {
        assert_eq!(n.parse::<Suite>().unwrap().name(), n);
    }
    assert!("spectral".parse::<Suite>().is_err());
    let mut t = Tolerances::default();
    t.set("plancherel", 0.1).unwrap();
    assert_eq!(t.plancherel, 0.1);
    assert!(t.set("nope", 1.0).is_err());
    assert!(t.set("growth", -1.0).is_err());
}

#[test]
fn records_serialize_with_case() {
    let recs = run(Suite::Convolution, &Tolerances::default()).unwrap();
    let line = serde_json::to_string(&recs[0]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&line).unwrap();
    for k in ["name", "case", "lhs", "rhs", "ratio", "tolerance", "pass", "grid"] {
        assert!(v.get(k).is_some(), "{k} missing in {line}");
    }
}
