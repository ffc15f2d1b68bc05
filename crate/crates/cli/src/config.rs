// SPDX-License-Identifier: MIT

//! `key = value` run configuration.
//!
//! | key | range | default |
//! |-----|-------|---------|
//! | `alpha` | finite | pi/2 |
//! | `beta` | finite | 0 |
//! | `wavelet` | catalog name | `mexican_hat` |
//! | `a_min`, `a_max` | `0 < a_min < a_max` | 1/16, 16 |
//! | `a_count` | 1 ..= 4096 | 64 |
//! | `u_min`, `u_max` | `0 < u_min < u_max` | 1e-4, 32 |
//! | `nu` | `[0, 8]` | 0.5 |
//! | `threads` | 1 ..= 1024 | rayon default |
//! | `tol.<check>` | `>= 0` | per check |
//!
//! `#` starts a comment. `FRWT_THREADS` overrides `threads`.

use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use frwt_core::frft::TransformOrder;
use frwt_core::suites::Tolerances;
use frwt_core::wavelet::{ScaleGrid, UGrid, WaveletSpec, CATALOG};

use crate::error::{io_err, CliError, Result};

pub const THREADS_ENV: &str = "FRWT_THREADS";

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub alpha: f64,
    pub beta: f64,
    pub wavelet: String,
    pub a_min: f64,
    pub a_max: f64,
    pub a_count: usize,
    pub u_min: f64,
    pub u_max: f64,
    pub nu: f64,
    pub threads: Option<usize>,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        let ug = UGrid::default();
        Self {
            alpha: FRAC_PI_2,
            beta: 0.0,
            wavelet: "mexican_hat".into(),
            a_min: 0.0625,
            a_max: 16.0,
            a_count: 64,
            u_min: ug.u_min,
            u_max: ug.u_max,
            nu: 0.5,
            threads: None,
            tolerances: Tolerances::default(),
        }
    }
}

fn bad(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("config line {line}: {msg}"))
}

fn parse_f64(line: usize, key: &str, v: &str) -> Result<f64> {
    let x: f64 = v.parse().map_err(|e| bad(line, format!("{key}: {e}")))?;
    if !x.is_finite() {
        return Err(bad(line, format!("{key} must be finite")));
    }
    Ok(x)
}

fn parse_count(line: usize, key: &str, v: &str, max: usize) -> Result<usize> {
    let n: usize = v.parse().map_err(|e| bad(line, format!("{key}: {e}")))?;
    if n == 0 || n > max {
        return Err(bad(line, format!("{key} = {n} outside 1..={max}")));
    }
    Ok(n)
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let s = raw.split('#').next().unwrap_or("").trim();
            if s.is_empty() {
                continue;
            }
            let (k, v) = s.split_once('=').ok_or_else(|| bad(line, format!("expected key = value, got {s:?}")))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "alpha" => c.alpha = parse_f64(line, k, v)?,
                "beta" => c.beta = parse_f64(line, k, v)?,
                "wavelet" => c.wavelet = v.to_string(),
                "a_min" => c.a_min = parse_f64(line, k, v)?,
                "a_max" => c.a_max = parse_f64(line, k, v)?,
                "a_count" => c.a_count = parse_count(line, k, v, 4096)?,
                "u_min" => c.u_min = parse_f64(line, k, v)?,
                "u_max" => c.u_max = parse_f64(line, k, v)?,
                "nu" => c.nu = parse_f64(line, k, v)?,
                "threads" => c.threads = Some(parse_count(line, k, v, 1024)?),
                _ => match k.strip_prefix("tol.") {
                    Some(name) => {
                        let x = parse_f64(line, k, v)?;
                        c.tolerances.set(name, x).map_err(|e| bad(line, e))?;
                    }
                    None => return Err(bad(line, format!("unknown key {k:?}"))),
                },
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path).map_err(io_err(path))?)
    }

    pub fn load_or_default(path: Option<&Path>) -> Result<Self> {
        path.map_or_else(|| Ok(Self::default()), Self::load)
    }

    fn validate(&self) -> Result<()> {
        let err = |m: String| Err(CliError::Parse(format!("config: {m}")));
        if !CATALOG.contains(&self.wavelet.as_str()) {
            return err(format!("unknown wavelet {:?}; catalog: {}", self.wavelet, CATALOG.join(", ")));
        }
        if !(self.a_min > 0.0 && self.a_max > self.a_min) {
            return err(format!("scale range [{}, {}]", self.a_min, self.a_max));
        }
        if !(self.u_min > 0.0 && self.u_max > self.u_min) {
            return err(format!("frequency range [{}, {}]", self.u_min, self.u_max));
        }
        if !(0.0..=8.0).contains(&self.nu) {
            return err(format!("nu = {} outside [0, 8]", self.nu));
        }
        Ok(())
    }

    /// Thread count: `FRWT_THREADS` first, then the config.
    pub fn thread_count(&self) -> Result<Option<usize>> {
        match std::env::var(THREADS_ENV) {
            Ok(v) => parse_count(0, THREADS_ENV, v.trim(), 1024)
                .map(Some)
                .map_err(|_| CliError::Parse(format!("{THREADS_ENV}={v:?} is not a thread count in 1..=1024"))),
            Err(_) => Ok(self.threads),
        }
    }

    pub fn order(&self) -> TransformOrder {
        TransformOrder::of(self.alpha)
    }

    pub fn wavelet(&self, dim: usize) -> Result<WaveletSpec> {
        Ok(WaveletSpec::catalog(&self.wavelet, dim)?)
    }

    pub fn scale_grid(&self, dim: usize) -> Result<ScaleGrid> {
        Ok(ScaleGrid::new(dim, self.a_min, self.a_max, self.a_count)?)
    }

    pub fn u_grid(&self) -> UGrid {
        UGrid { u_min: self.u_min, u_max: self.u_max, ..UGrid::default() }
    }
}
