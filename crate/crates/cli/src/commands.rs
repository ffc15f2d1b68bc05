// SPDX-License-Identifier: MIT

//! Subcommand bodies. Each writes its summary to `out` and returns an error
//! carrying the exit code on failure.

use std::io::Write;
use std::path::Path;

use frwt_core::cfrwt::{cfrwt_fast, plancherel_check, reconstruct};
use frwt_core::fixtures::Fixture;
use frwt_core::frft::{frft_direct, frft_fast, natural_grid, OrderKind, TransformOrder};
use frwt_core::grid::{l2_norm, relative_l2_error, Grid};
use frwt_core::morrey::{morrey_norm, MorreyConfig};
use frwt_core::suites::{self, Suite};
use frwt_core::uncertainty::heisenberg_two_domain;
use frwt_core::wavelet::{admissibility_constant, WaveletSpec};
use serde_json::json;

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::io;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Engine {
    Fast,
    Direct,
}

fn emit(out: &mut dyn Write, v: &serde_json::Value) -> Result<()> {
    writeln!(out, "{v}").map_err(|e| CliError::Io { path: "<stdout>".into(), source: e })
}

pub fn frft(
    input: &Path,
    alpha: f64,
    engine: Engine,
    out_grid: Option<&Grid>,
    output: &Path,
    out: &mut dyn Write,
) -> Result<()> {
    let f = io::read_signal(input)?;
    let order = TransformOrder::new(alpha)?;
    let g = match engine {
        Engine::Fast => frft_fast(&f, order)?,
        Engine::Direct => {
            let grid = match (out_grid, order.kind()) {
                (Some(g), _) => g.clone(),
                (None, OrderKind::Identity) => f.grid().clone(),
                (None, OrderKind::Parity) => f.grid().reflected(),
                (None, OrderKind::Generic) => natural_grid(f.grid(), order),
            };
            frft_direct(&f, order, &grid)?
        }
    };
    io::write_signal(output, &g)?;
    let (a, b) = (l2_norm(&f), l2_norm(&g));
    let residual = if a > 0.0 { (b - a).abs() / a } else { b };
    emit(
        out,
        &json!({
            "command": "frft",
            "alpha": alpha,
            "engine": format!("{engine:?}").to_lowercase(),
            "input_l2": a,
            "output_l2": b,
            "parseval_residual": residual,
        }),
    )
}

pub fn admissibility(cfg: &RunConfig, dim: usize, out: &mut dyn Write) -> Result<()> {
    let psi = cfg.wavelet(dim)?;
    let rep = admissibility_constant(&psi, cfg.order(), &cfg.u_grid())?;
    emit(out, &json!({ "command": "admissibility", "wavelet": psi.name(), "alpha": cfg.alpha, "report": rep }))?;
    rep.require_finite()?;
    Ok(())
}

pub fn cfrwt(input: &Path, cfg: &RunConfig, output: &Path, out: &mut dyn Write) -> Result<()> {
    let f = io::read_signal(input)?;
    let psi = cfg.wavelet(f.dim())?;
    let order = cfg.order();
    let adm = admissibility_constant(&psi, order, &cfg.u_grid())?;
    adm.require_finite()?;
    let ag = cfg.scale_grid(f.dim())?;
    let w = cfrwt_fast(&f, &psi, order, &ag)?;
    io::write_coefficients(output, &w)?;
    let p = plancherel_check(&w, &f, adm.c_psi_alpha, cfg.tolerances.plancherel)?;
    emit(
        out,
        &json!({
            "command": "cfrwt",
            "wavelet": psi.name(),
            "alpha": cfg.alpha,
            "shifts": f.len(),
            "scales": ag.len(),
            "c_psi_alpha": adm.c_psi_alpha,
            "plancherel_ratio": if p.rhs > 0.0 { Some(p.ratio) } else { None },
            "budget": p.budget,
            "warnings": w.warnings(),
        }),
    )
}

pub fn synth(
    input: &Path,
    cfg: &RunConfig,
    phi: Option<&str>,
    reference: Option<&Path>,
    output: &Path,
    out: &mut dyn Write,
) -> Result<()> {
    let c = io::read_coefficients(input)?;
    let dim = c.b_grid().dim();
    let psi = WaveletSpec::catalog(c.wavelet(), dim)?;
    let phi = WaveletSpec::catalog(phi.unwrap_or(c.wavelet()), dim)?;
    let rec = reconstruct(&c, &phi, &psi, &cfg.u_grid())?;
    io::write_signal(output, &rec)?;
    let error = match reference {
        Some(p) => {
            let r = io::read_signal(p)?;
            Some(relative_l2_error(&rec, &r)?)
        }
        None => None,
    };
    emit(
        out,
        &json!({
            "command": "synth",
            "analysis": psi.name(),
            "synthesis": phi.name(),
            "alpha": c.order().alpha(),
            "output_l2": l2_norm(&rec),
            "relative_l2_error": error,
        }),
    )
}

/// Two-domain uncertainty product at `(alpha, beta)` and the Morrey norm at
/// `nu` of an input signal.
pub fn measure(input: &Path, cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let f = io::read_signal(input)?;
    let h = heisenberg_two_domain(&f, cfg.order(), TransformOrder::of(cfg.beta))?;
    let m = morrey_norm(&f, &MorreyConfig::default_for(f.grid(), cfg.nu)?)?;
    emit(
        out,
        &json!({
            "command": "measure",
            "l2": l2_norm(&f),
            "heisenberg": h,
            "morrey": { "nu": cfg.nu, "value": m.value, "center": m.center, "radius": m.radius },
        }),
    )
}

pub fn fixture(fx: &Fixture, grid: &Grid, output: &Path) -> Result<()> {
    io::write_signal(output, &fx.sample(grid))
}

pub fn verify(name: &str, cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let suite: Suite = name.parse().map_err(|_| CliError::UnknownSuite {
        name: name.to_string(),
        valid: Suite::names().join(", "),
    })?;
    let parts: Vec<Suite> =
        if suite == Suite::All { Suite::ALL.iter().copied().filter(|s| *s != Suite::All).collect() } else { vec![suite] };
    let (mut total, mut failed) = (0, 0);
    for s in parts {
        for r in suites::run(s, &cfg.tolerances)? {
            total += 1;
            failed += usize::from(!r.pass);
            let mut v = serde_json::to_value(&r).map_err(|e| CliError::Parse(e.to_string()))?;
            v.as_object_mut().expect("record is an object").insert("suite".into(), json!(s.name()));
            emit(out, &v)?;
        }
        out.flush().ok();
    }
    if failed > 0 {
        return Err(CliError::VerifyFailed { failed, total });
    }
    Ok(())
}
