//! Sample files: UTF-8 text, one real number per line. Blank lines and
//! anything after `#` are ignored.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use mehler_core::SampleKind;
use rand::rngs::StdRng;
use rand::SeedableRng;
use rand_distr::{Distribution, Normal};

use crate::error::CliError;

pub fn parse_samples(text: &str) -> Result<Vec<f64>, Vec<(usize, String)>> {
    let mut values = Vec::new();
    let mut bad = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        match body.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            _ => bad.push((idx + 1, line.to_string())),
        }
    }
    if bad.is_empty() {
        Ok(values)
    } else {
        Err(bad)
    }
}

pub fn read_samples(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_samples(&text).map_err(|rows| CliError::MalformedRows {
        path: path.to_path_buf(),
        rows,
    })
}

/// Standard deviation of the Gaussian whose fitted width is `width`:
/// `1 / (2 sd^2)` in position, `2 sd^2` in momentum.
pub fn standard_deviation(kind: SampleKind, width: f64) -> f64 {
    match kind {
        SampleKind::Position => (0.5 / width).sqrt(),
        SampleKind::Momentum => (0.5 * width).sqrt(),
    }
}

pub fn synthetic_samples(
    kind: SampleKind,
    width: f64,
    n: usize,
    seed: u64,
) -> Result<Vec<f64>, CliError> {
    let sd = standard_deviation(kind, width);
    let normal = Normal::new(0.0, sd)
        .map_err(|e| CliError::Usage(format!("width {width} gives no valid Gaussian: {e}")))?;
    let mut rng = StdRng::seed_from_u64(seed);
    Ok((0..n).map(|_| normal.sample(&mut rng)).collect())
}

pub fn write_samples(path: &Path, header: &str, values: &[f64]) -> Result<(), CliError> {
    let mut text = String::with_capacity(26 * values.len() + header.len() + 4);
    for line in header.lines() {
        let _ = writeln!(text, "# {line}");
    }
    for v in values {
        let _ = writeln!(text, "{v:.16e}");
    }
    fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}
