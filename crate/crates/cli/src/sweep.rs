//! Parameter grids read from a JSON spec and written as CSV.
//!
//! ```json
//! {
//!   "axes": [{"name": "s", "start": 0.1, "stop": 0.9, "count": 5}],
//!   "fixed": {"d": 2, "p": 2, "q": 2, "alpha": 0, "beta": 0, "domain": "whole"},
//!   "tol": 1e-10
//! }
//! ```
//!
//! Rows follow the axes in order with the last axis varying fastest.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use tlhardy_core::{sharp_constant, validate, Domain, HardyParams};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub axes: Vec<Axis>,
    #[serde(default)]
    pub fixed: BTreeMap<String, serde_json::Value>,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default)]
    pub tol: Option<f64>,
}

const NAMES: [&str; 6] = ["d", "s", "p", "q", "alpha", "beta"];

impl Axis {
    pub fn values(&self) -> Result<Vec<f64>, String> {
        if self.count == 0 {
            return Err(format!("axis {:?} has count 0", self.name));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(format!("axis {:?} has a non-finite bound", self.name));
        }
        if self.count == 1 {
            return Ok(vec![self.start]);
        }
        let steps = (self.count - 1) as f64;
        match self.spacing {
            Spacing::Linear => Ok((0..self.count)
                .map(|i| self.start + (self.stop - self.start) * i as f64 / steps)
                .collect()),
            Spacing::Log => {
                if !(self.start > 0.0 && self.stop > 0.0) {
                    return Err(format!("log axis {:?} needs positive bounds", self.name));
                }
                let (a, b) = (self.start.ln(), self.stop.ln());
                Ok((0..self.count)
                    .map(|i| (a + (b - a) * i as f64 / steps).exp())
                    .collect())
            }
        }
    }
}

impl SweepSpec {
    /// All grid points in row order.
    pub fn points(&self) -> Result<Vec<HardyParams>, String> {
        let mut swept = Vec::new();
        for axis in &self.axes {
            if !NAMES.contains(&axis.name.as_str()) {
                return Err(format!("unknown axis {:?}; expected one of {NAMES:?}", axis.name));
            }
            if swept.iter().any(|(name, _): &(String, Vec<f64>)| *name == axis.name) {
                return Err(format!("axis {:?} appears twice", axis.name));
            }
            let values = axis.values()?;
            if axis.name == "d" && values.iter().any(|v| v.fract() != 0.0 || *v < 1.0) {
                return Err("axis \"d\" must take positive integer values".into());
            }
            swept.push((axis.name.clone(), values));
        }
        for key in self.fixed.keys() {
            if !NAMES.contains(&key.as_str()) && key != "domain" {
                return Err(format!("unknown fixed parameter {key:?}"));
            }
            if swept.iter().any(|(name, _)| name == key) {
                return Err(format!("{key:?} is both fixed and swept"));
            }
        }
        let domain = match self.fixed.get("domain") {
            None => Domain::WholeSpace,
            Some(v) => serde_json::from_value(v.clone())
                .map_err(|_| format!("domain must be \"whole\" or \"half\", found {v}"))?,
        };
        let mut base = [0.0f64; 6];
        for (slot, name) in base.iter_mut().zip(NAMES) {
            if swept.iter().any(|(n, _)| n == name) {
                continue;
            }
            let value = self
                .fixed
                .get(name)
                .ok_or_else(|| format!("parameter {name:?} is neither fixed nor swept"))?;
            *slot = value
                .as_f64()
                .ok_or_else(|| format!("fixed {name:?} must be a number, found {value}"))?;
        }
        if base[0].fract() != 0.0 || base[0] < 0.0 {
            return Err("fixed \"d\" must be a positive integer".into());
        }
        let total: usize = swept.iter().map(|(_, v)| v.len()).product();
        let mut points = Vec::with_capacity(total);
        for mut index in 0..total {
            let mut values = base;
            for (name, axis) in swept.iter().rev() {
                let slot = NAMES.iter().position(|n| n == name).expect("checked above");
                values[slot] = axis[index % axis.len()];
                index /= axis.len();
            }
            points.push(HardyParams {
                d: values[0] as u32,
                s: values[1],
                p: values[2],
                q: values[3],
                alpha: values[4],
                beta: values[5],
                domain,
            });
        }
        Ok(points)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub params: HardyParams,
    pub delta: f64,
    pub constant: Option<f64>,
    pub error: Option<f64>,
    pub valid: bool,
    pub violations: Vec<String>,
}

pub fn evaluate(params: HardyParams, tol: f64) -> Row {
    let report = validate(&params);
    let mut row = Row {
        params,
        delta: report.delta,
        constant: None,
        error: None,
        valid: report.valid,
        violations: report.violations.iter().map(|v| v.constraint.clone()).collect(),
    };
    if report.valid {
        match sharp_constant(&params, tol) {
            Ok(r) => {
                row.constant = Some(r.value);
                row.error = Some(r.abs_error_estimate);
            }
            Err(e) => row.violations.push(format!("error: {e}")),
        }
    }
    row
}

pub const HEADER: [&str; 12] = [
    "d", "s", "p", "q", "alpha", "beta", "domain", "delta", "constant", "error", "valid", "violations",
];

pub fn write_csv<W: std::io::Write>(rows: &[Row], out: W) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(HEADER)?;
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for row in rows {
        let p = &row.params;
        writer.write_record([
            p.d.to_string(),
            p.s.to_string(),
            p.p.to_string(),
            p.q.to_string(),
            p.alpha.to_string(),
            p.beta.to_string(),
            p.domain.as_str().to_owned(),
            row.delta.to_string(),
            opt(row.constant),
            opt(row.error),
            row.valid.to_string(),
            row.violations.join(";"),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads the spec, evaluates every point in parallel and writes the CSV.
/// Returns the row count, the number of rows without a constant and the
/// output path.
pub fn run(spec_path: &Path, out: Option<&Path>) -> Result<(usize, usize, String), CliError> {
    let shown = spec_path.display().to_string();
    let text = std::fs::read_to_string(spec_path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    let spec: SweepSpec = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: shown.clone(),
        line: Some(e.line()),
        message: e.to_string(),
    })?;
    let points = spec.points().map_err(|message| CliError::Parse {
        path: shown.clone(),
        line: None,
        message,
    })?;
    let out_path = match (out, &spec.out) {
        (Some(p), _) => p.to_path_buf(),
        (None, Some(p)) => p.into(),
        (None, None) => return Err(CliError::Usage("sweep needs --out or an \"out\" entry in the spec".into())),
    };
    let tol = spec.tol.unwrap_or(tlhardy_core::DEFAULT_TOL);
    let rows: Vec<Row> = points.into_par_iter().map(|p| evaluate(p, tol)).collect();
    let failed = rows.iter().filter(|r| r.constant.is_none()).count();
    let shown_out = out_path.display().to_string();
    let file = std::fs::File::create(&out_path).map_err(|source| CliError::Io {
        path: shown_out.clone(),
        source,
    })?;
    write_csv(&rows, std::io::BufWriter::new(file)).map_err(|e| CliError::Io {
        path: shown_out.clone(),
        source: std::io::Error::other(e),
    })?;
    Ok((rows.len(), failed, shown_out))
}
