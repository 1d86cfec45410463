//! Two-column `r u(r)` profile files. Whitespace separated, `#` starts a
//! comment, linear interpolation between rows. The last row fixes the
//! support radius and must have u = 0.

use std::path::Path;

use tlhardy_core::PiecewiseLinear;

use crate::error::CliError;

pub fn parse_profile(text: &str, path: &str) -> Result<PiecewiseLinear, CliError> {
    let mut r = Vec::new();
    let mut u = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(CliError::Parse {
                path: path.to_owned(),
                line: Some(line),
                message: format!("expected two columns, found {}", fields.len()),
            });
        }
        let number = |field: &str| {
            field.parse::<f64>().map_err(|_| CliError::Parse {
                path: path.to_owned(),
                line: Some(line),
                message: format!("not a number: {field:?}"),
            })
        };
        r.push(number(fields[0])?);
        u.push(number(fields[1])?);
    }
    PiecewiseLinear::new(r, u).map_err(|e| CliError::Parse {
        path: path.to_owned(),
        line: None,
        message: e.to_string(),
    })
}

pub fn read_profile(path: &Path) -> Result<PiecewiseLinear, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    parse_profile(&text, &shown)
}
