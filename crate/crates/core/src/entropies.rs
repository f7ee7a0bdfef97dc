//! Correlation measures of the geometric occupation spectrum `(1 - z) z^m`.
//!
//! All of them depend on `z` alone; the orbit scale never enters.

use serde::Serialize;

use crate::error::{require_positive, require_unit_ratio, Error, Result};
use crate::spectral::MehlerSpectrum;

/// `sum_m P_m^2 = (1 - z) / (1 + z)`.
pub fn purity(z: f64) -> Result<f64> {
    require_unit_ratio("z", z)?;
    Ok((1.0 - z) / (1.0 + z))
}

pub fn linear_entropy(z: f64) -> Result<f64> {
    require_unit_ratio("z", z)?;
    Ok(2.0 * z / (1.0 + z))
}

/// `ln[(1 - z)^q / (1 - z^q)] / (1 - q)` for `q > 0`, `q != 1`.
pub fn renyi_entropy(z: f64, q: f64) -> Result<f64> {
    require_unit_ratio("z", z)?;
    require_positive("q", q)?;
    if q == 1.0 {
        return Err(Error::InvalidParameter {
            name: "q",
            value: q,
            reason: "q = 1 is the von Neumann entropy",
        });
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let log_ratio = q * (-z).ln_1p() - (-z.powf(q)).ln_1p();
    Ok(log_ratio / (1.0 - q))
}

/// `-ln(1 - z) - z ln(z) / (1 - z)`, zero at `z = 0`.
pub fn von_neumann_entropy(z: f64) -> Result<f64> {
    require_unit_ratio("z", z)?;
    if z == 0.0 {
        return Ok(0.0);
    }
    Ok(-(-z).ln_1p() - z * z.ln() / (1.0 - z))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RenyiSample {
    pub q: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    pub purity: f64,
    pub linear_entropy: f64,
    pub von_neumann: f64,
    pub renyi: Vec<RenyiSample>,
}

/// Purity, linear and von Neumann entropies plus the Renyi entropy at every
/// `q` in the grid; `q = 1` entries carry the von Neumann value.
pub fn report(spectrum: &MehlerSpectrum, q_grid: &[f64]) -> Result<EntropyReport> {
    report_for_z(spectrum.z(), q_grid)
}

pub fn report_for_z(z: f64, q_grid: &[f64]) -> Result<EntropyReport> {
    let von_neumann = von_neumann_entropy(z)?;
    let renyi = q_grid
        .iter()
        .map(|&q| {
            let value = if q == 1.0 {
                von_neumann
            } else {
                renyi_entropy(z, q)?
            };
            Ok(RenyiSample { q, value })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EntropyReport {
        purity: purity(z)?,
        linear_entropy: linear_entropy(z)?,
        von_neumann,
        renyi,
    })
}
