//! Plain-text density matrix files: 16 complex entries in row-major order,
//! written as `re,im` pairs, four pairs per line. `#` lines are comments.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use super::{Matrix4, TwoQubitDensity};
use crate::error::{Error, Result};

pub fn format_density(rho: &Matrix4) -> String {
    let mut out = String::new();
    for row in rho {
        let fields: Vec<String> = row.iter().map(|z| format!("{:e},{:e}", z.re, z.im)).collect();
        let _ = writeln!(out, "{}", fields.join(","));
    }
    out
}

/// Reads the 32 numbers regardless of line layout.
pub fn parse_density(text: &str) -> Result<Matrix4> {
    let mut values = Vec::with_capacity(32);
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for field in line.split(',') {
            let field = field.trim();
            let v: f64 = field.parse().map_err(|_| {
                Error::Parse(format!("line {}: cannot parse {field:?} as a number", lineno + 1))
            })?;
            values.push(v);
        }
    }
    if values.len() != 32 {
        return Err(Error::Parse(format!(
            "expected 16 complex entries (32 numbers), found {} numbers",
            values.len()
        )));
    }
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let k = 2 * (4 * i + j);
            Complex64::new(values[k], values[k + 1])
        })
    }))
}

pub fn read_density(path: &Path) -> Result<TwoQubitDensity> {
    TwoQubitDensity::new(parse_density(&std::fs::read_to_string(path)?)?)
}

pub fn write_density(path: &Path, rho: &TwoQubitDensity) -> Result<()> {
    std::fs::write(path, format_density(rho.entries()))?;
    Ok(())
}
