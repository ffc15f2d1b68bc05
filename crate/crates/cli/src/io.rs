// SPDX-License-Identifier: MIT

//! Signal and coefficient files.
//!
//! Signal file, all little-endian:
//!
//! ```text
//! "FRWT" | version u16 | dim u8 | dim x (start f64, step f64, count u32) | (re f64, im f64) x N
//! ```
//!
//! Coefficient file:
//!
//! ```text
//! "FRWC" | version u16 | dim u8 | dim x (start f64, step f64, count u32)
//!        | alpha f64 | name_len u16 | name utf8
//!        | a_min f64 | a_max f64 | a_count u32 | scales u32 | scales x (dim x a_i f64, weight f64)
//!        | (re f64, im f64) x (scales x N), scale-major
//! ```
//!
//! CSV: header `t1[,t2[,t3]],re,im`, one row per sample in row-major order.

use std::fs;
use std::path::Path;

use frwt_core::cfrwt::CfrwtCoefficients;
use frwt_core::frft::TransformOrder;
use frwt_core::grid::{AxisSpec, Grid, SampledSignal, MAX_DIM};
use frwt_core::wavelet::ScaleGrid;
use frwt_core::Complex64;

use crate::error::{io_err, CliError, Result};

pub const SIGNAL_MAGIC: &[u8; 4] = b"FRWT";
pub const COEFF_MAGIC: &[u8; 4] = b"FRWC";
pub const VERSION: u16 = 1;

fn put_axes(out: &mut Vec<u8>, grid: &Grid) {
    out.push(grid.dim() as u8);
    for ax in grid.axes() {
        out.extend_from_slice(&ax.start.to_le_bytes());
        out.extend_from_slice(&ax.step.to_le_bytes());
        out.extend_from_slice(&(ax.count as u32).to_le_bytes());
    }
}

fn put_values(out: &mut Vec<u8>, values: &[Complex64]) {
    for z in values {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
}

pub fn signal_to_bytes(f: &SampledSignal) -> Vec<u8> {
    let mut out = Vec::with_capacity(7 + 20 * f.dim() + 16 * f.len());
    out.extend_from_slice(SIGNAL_MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    put_axes(&mut out, f.grid());
    put_values(&mut out, f.values());
    out
}

/// Little-endian cursor that reports byte offsets in its errors.
struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        if self.buf.len() - self.pos < n {
            return Err(CliError::Parse(format!(
                "truncated {what} at byte offset {} ({} bytes left, {n} needed)",
                self.pos,
                self.buf.len() - self.pos
            )));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u8(&mut self, what: &str) -> Result<u8> {
        Ok(self.take(1, what)?[0])
    }

    fn u16(&mut self, what: &str) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2, what)?.try_into().expect("2 bytes")))
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().expect("4 bytes")))
    }

    fn f64(&mut self, what: &str) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8, what)?.try_into().expect("8 bytes")))
    }

    fn magic(&mut self, expect: &[u8; 4]) -> Result<()> {
        let m = self.take(4, "magic")?;
        if m != expect {
            return Err(CliError::Parse(format!(
                "bad magic {:?} at byte offset 0, expected {:?}",
                String::from_utf8_lossy(m),
                String::from_utf8_lossy(expect)
            )));
        }
        let at = self.pos;
        let v = self.u16("version")?;
        if v != VERSION {
            return Err(CliError::Parse(format!("unsupported version {v} at byte offset {at}")));
        }
        Ok(())
    }

    fn grid(&mut self) -> Result<Grid> {
        let at = self.pos;
        let dim = self.u8("dimension")? as usize;
        if dim == 0 || dim > MAX_DIM {
            return Err(CliError::Parse(format!("dimension {dim} at byte offset {at}")));
        }
        let mut axes = Vec::with_capacity(dim);
        for _ in 0..dim {
            let at = self.pos;
            let start = self.f64("axis start")?;
            let step = self.f64("axis step")?;
            let count = self.u32("axis count")? as usize;
            let ax = AxisSpec::new(start, step, count)
                .map_err(|e| CliError::Parse(format!("axis at byte offset {at}: {e}")))?;
            axes.push(ax);
        }
        Grid::new(axes).map_err(|e| CliError::Parse(format!("grid at byte offset {at}: {e}")))
    }

    fn values(&mut self, n: usize) -> Result<Vec<Complex64>> {
        let at = self.pos;
        let need = n.checked_mul(16).ok_or_else(|| CliError::Parse("payload size overflows".into()))?;
        if self.buf.len() - self.pos != need {
            return Err(CliError::Parse(format!(
                "payload at byte offset {at} has {} bytes, expected {need}",
                self.buf.len() - self.pos
            )));
        }
        let raw = self.take(need, "payload")?;
        Ok(raw
            .chunks_exact(16)
            .map(|c| {
                Complex64::new(
                    f64::from_le_bytes(c[..8].try_into().expect("8 bytes")),
                    f64::from_le_bytes(c[8..].try_into().expect("8 bytes")),
                )
            })
            .collect())
    }
}

pub fn signal_from_bytes(buf: &[u8]) -> Result<SampledSignal> {
    let mut r = Reader::new(buf);
    r.magic(SIGNAL_MAGIC)?;
    let grid = r.grid()?;
    let values = r.values(grid.len())?;
    Ok(SampledSignal::new(grid, values)?)
}

pub fn signal_to_csv(f: &SampledSignal) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (1..=f.dim()).map(|i| format!("t{i}")).collect();
    header.push("re".into());
    header.push("im".into());
    w.write_record(&header).map_err(csv_err)?;
    let mut p = vec![0.0; f.dim()];
    for (k, z) in f.values().iter().enumerate() {
        f.grid().point(k, &mut p);
        let mut row: Vec<String> = p.iter().map(|v| v.to_string()).collect();
        row.push(z.re.to_string());
        row.push(z.im.to_string());
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Parse(e.to_string()))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Parse(format!("csv: {e}"))
}

/// Infers a uniform axis from the distinct coordinates seen along it.
fn infer_axis(coords: &[f64], axis: usize) -> Result<AxisSpec> {
    let n = coords.len();
    if n < 2 {
        return Err(CliError::Parse(format!("csv axis t{} has a single coordinate", axis + 1)));
    }
    let step = (coords[n - 1] - coords[0]) / (n - 1) as f64;
    let ax = AxisSpec::new(coords[0], step, n).map_err(|e| CliError::Parse(format!("csv axis t{}: {e}", axis + 1)))?;
    for (k, c) in coords.iter().enumerate() {
        if (ax.coord(k) - c).abs() > 1e-9 * step.abs().max(1.0) {
            return Err(CliError::Parse(format!("csv axis t{} is not uniform at {c}", axis + 1)));
        }
    }
    Ok(ax)
}

pub fn signal_from_csv(text: &str) -> Result<SampledSignal> {
    let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = rd.headers().map_err(csv_err)?.clone();
    let cols: Vec<&str> = header.iter().collect();
    let dim = cols.len().checked_sub(2).filter(|d| (1..=MAX_DIM).contains(d)).ok_or_else(|| {
        CliError::Parse(format!("csv header {cols:?}: expected t1[,t2[,t3]],re,im"))
    })?;
    let expect: Vec<String> =
        (1..=dim).map(|i| format!("t{i}")).chain(["re".to_string(), "im".to_string()]).collect();
    if cols != expect {
        return Err(CliError::Parse(format!("csv header {cols:?}: expected {expect:?}")));
    }
    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut values = Vec::new();
    for (line, rec) in rd.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        let nums: Vec<f64> = rec
            .iter()
            .map(|s| s.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| CliError::Parse(format!("csv row {}: {e}", line + 2)))?;
        points.push(nums[..dim].to_vec());
        values.push(Complex64::new(nums[dim], nums[dim + 1]));
    }
    if values.is_empty() {
        return Err(CliError::Parse("csv has no rows".into()));
    }
    // row-major: the last axis varies fastest
    let mut axes = Vec::with_capacity(dim);
    let mut stride = 1usize;
    let mut strides = vec![0; dim];
    for i in (0..dim).rev() {
        let mut coords = vec![points[0][i]];
        let mut k = stride;
        while k < points.len() && points[k][..i] == points[0][..i] {
            coords.push(points[k][i]);
            k += stride;
        }
        strides[i] = stride;
        stride *= coords.len();
        axes.push(infer_axis(&coords, i)?);
    }
    axes.reverse();
    let grid = Grid::new(axes).map_err(|e| CliError::Parse(e.to_string()))?;
    if grid.len() != values.len() {
        return Err(CliError::Parse(format!("csv has {} rows, grid implies {}", values.len(), grid.len())));
    }
    let mut p = vec![0.0; dim];
    for (k, q) in points.iter().enumerate() {
        grid.point(k, &mut p);
        for i in 0..dim {
            if (p[i] - q[i]).abs() > 1e-9 * grid.axis(i).step.max(1.0) {
                return Err(CliError::Parse(format!("csv row {} is out of row-major order", k + 2)));
            }
        }
    }
    Ok(SampledSignal::new(grid, values)?)
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Reads a signal; `.csv` files as CSV, anything else as binary.
pub fn read_signal(path: &Path) -> Result<SampledSignal> {
    if is_csv(path) {
        signal_from_csv(&fs::read_to_string(path).map_err(io_err(path))?)
    } else {
        signal_from_bytes(&fs::read(path).map_err(io_err(path))?)
    }
}

pub fn write_signal(path: &Path, f: &SampledSignal) -> Result<()> {
    let bytes = if is_csv(path) { signal_to_csv(f)?.into_bytes() } else { signal_to_bytes(f) };
    fs::write(path, bytes).map_err(io_err(path))
}

pub fn coefficients_to_bytes(c: &CfrwtCoefficients) -> Vec<u8> {
    let ag = c.a_grid();
    let name = c.wavelet().as_bytes();
    let mut out = Vec::new();
    out.extend_from_slice(COEFF_MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    put_axes(&mut out, c.b_grid());
    out.extend_from_slice(&c.order().alpha().to_le_bytes());
    out.extend_from_slice(&(name.len() as u16).to_le_bytes());
    out.extend_from_slice(name);
    out.extend_from_slice(&ag.a_min.to_le_bytes());
    out.extend_from_slice(&ag.a_max.to_le_bytes());
    out.extend_from_slice(&(ag.count as u32).to_le_bytes());
    out.extend_from_slice(&(ag.len() as u32).to_le_bytes());
    for (p, w) in ag.points().iter().zip(ag.weights()) {
        for v in p {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out.extend_from_slice(&w.to_le_bytes());
    }
    put_values(&mut out, c.values());
    out
}

pub fn coefficients_from_bytes(buf: &[u8]) -> Result<CfrwtCoefficients> {
    let mut r = Reader::new(buf);
    r.magic(COEFF_MAGIC)?;
    let grid = r.grid()?;
    let at = r.pos;
    let alpha = r.f64("order")?;
    let order = TransformOrder::new(alpha).map_err(|e| CliError::Parse(format!("order at byte offset {at}: {e}")))?;
    let len = r.u16("wavelet name length")? as usize;
    let at = r.pos;
    let name = std::str::from_utf8(r.take(len, "wavelet name")?)
        .map_err(|e| CliError::Parse(format!("wavelet name at byte offset {at}: {e}")))?
        .to_string();
    let at = r.pos;
    let a_min = r.f64("a_min")?;
    let a_max = r.f64("a_max")?;
    let count = r.u32("a_count")? as usize;
    let ag = ScaleGrid::new(grid.dim(), a_min, a_max, count)
        .map_err(|e| CliError::Parse(format!("scale block at byte offset {at}: {e}")))?;
    let at = r.pos;
    let scales = r.u32("scale count")? as usize;
    if scales != ag.len() {
        return Err(CliError::Parse(format!("scale count {scales} at byte offset {at}, expected {}", ag.len())));
    }
    for (p, w) in ag.points().iter().zip(ag.weights()) {
        let at = r.pos;
        let mut same = true;
        for v in p {
            same &= r.f64("scale point")? == *v;
        }
        same &= r.f64("scale weight")? == *w;
        if !same {
            return Err(CliError::Parse(format!("scale point at byte offset {at} does not match its grid")));
        }
    }
    let values = r.values(scales * grid.len())?;
    Ok(CfrwtCoefficients::from_parts(values, grid, ag, order, &name)?)
}

pub fn read_coefficients(path: &Path) -> Result<CfrwtCoefficients> {
    coefficients_from_bytes(&fs::read(path).map_err(io_err(path))?)
}

pub fn write_coefficients(path: &Path, c: &CfrwtCoefficients) -> Result<()> {
    fs::write(path, coefficients_to_bytes(c)).map_err(io_err(path))
}

/// Grid from `start:step:count[,start:step:count...]`.
pub fn parse_grid(spec: &str) -> Result<Grid> {
    let axes = spec
        .split(',')
        .map(|part| {
            let f: Vec<&str> = part.split(':').map(str::trim).collect();
            if f.len() != 3 {
                return Err(CliError::Parse(format!("grid axis {part:?}: expected start:step:count")));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|e| CliError::Parse(format!("grid axis {part:?}: {e}")));
            let count = f[2].parse::<usize>().map_err(|e| CliError::Parse(format!("grid axis {part:?}: {e}")))?;
            AxisSpec::new(num(f[0])?, num(f[1])?, count).map_err(|e| CliError::Parse(format!("grid axis {part:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Grid::new(axes).map_err(|e| CliError::Parse(e.to_string()))
}
