//! Harmonic surrogate for the inverse-square interaction, chosen by matching
//! ground-state energies, and the purity comparison that shows where the
//! surrogate stops describing the correlations.
//!
//! Energies (both include the centre-of-mass zero point `omega0 / 2`):
//!
//! ```text
//! E_H(lambda) = (omega0 / 2) (1 + sqrt(1 + 2 lambda))
//! E_C(Lambda) = (omega0 / 2) (3 + sqrt(1 + 4 Lambda))
//! ```
//!
//! so the exact match is `sqrt(1 + 2 lambda) = 2 + sqrt(1 + 4 Lambda)`, and
//! the large-coupling rule is `lambda = 2 Lambda`.

use serde::Serialize;

use crate::error::{require_positive, Error, Result};
use crate::heisenberg::ConfinedPair;
use crate::inversion::invert_widths;
use crate::oracle::{InverseSquareGround, INVERSE_SQUARE_NODES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchRule {
    /// Finite-coupling energy match.
    Exact,
    /// `lambda = 2 Lambda`.
    #[default]
    Asymptotic,
}

impl MatchRule {
    pub fn coupling(self, lambda_cap: f64) -> f64 {
        match self {
            MatchRule::Exact => exact_coupling(lambda_cap),
            MatchRule::Asymptotic => 2.0 * lambda_cap,
        }
    }
}

fn exact_coupling(lambda_cap: f64) -> f64 {
    let s = 2.0 + (1.0 + 4.0 * lambda_cap).sqrt();
    0.5 * (s * s - 1.0)
}

/// Coupling `lambda` with `E_H(lambda) = E_C(Lambda)`; independent of `omega0`.
pub fn energy_match(omega0: f64, lambda_cap: f64) -> Result<f64> {
    require_positive("omega0", omega0)?;
    require_positive("lambda_cap", lambda_cap)?;
    Ok(exact_coupling(lambda_cap))
}

/// Bisection on `E_H(lambda) - E_C(Lambda)`, for cross-checking the closed form.
pub fn energy_match_bisection(omega0: f64, lambda_cap: f64, tol: f64) -> Result<f64> {
    require_positive("tol", tol)?;
    let target = InverseSquareGround::new(omega0, lambda_cap)?.energy;
    let energy_gap = |lambda: f64| -> Result<f64> {
        Ok(ConfinedPair::new(omega0, lambda)?.ground_energy() - target)
    };
    // E_H is increasing in lambda and E_H(0) = omega0 < E_C.
    let mut lo = 0.0;
    let mut hi = 1.0;
    while energy_gap(hi)? < 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::NoConvergence(0));
        }
    }
    const MAX_ITER: usize = 400;
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if energy_gap(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= tol * hi.max(1.0) {
            return Ok(0.5 * (lo + hi));
        }
    }
    Err(Error::NoConvergence(MAX_ITER))
}

/// Purity of the harmonic ground state at coupling `lambda`.
pub fn heisenberg_purity(omega0: f64, lambda: f64) -> Result<f64> {
    let widths = ConfinedPair::new(omega0, lambda)?.model_params().widths();
    crate::entropies::purity(invert_widths(&widths)?.z())
}

/// `sqrt(2) Lambda^(-1/4)`.
pub fn purity_h_asymptote(lambda_cap: f64) -> f64 {
    2f64.sqrt() * lambda_cap.powf(-0.25)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MappingResult {
    pub lambda_cap: f64,
    pub rule: MatchRule,
    pub lambda_asymptotic: f64,
    pub lambda_exact: f64,
    /// Coupling the surrogate was evaluated at.
    pub lambda_used: f64,
    pub e_c: f64,
    pub e_h_at_exact: f64,
    pub purity_h: f64,
    pub purity_c: f64,
    pub linear_entropy_c: f64,
    pub purity_h_asymptote: f64,
}

/// Oracle settings for the inverse-square side of [`compare_purities`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleSettings {
    pub min_nodes: usize,
}

impl Default for OracleSettings {
    fn default() -> Self {
        Self {
            min_nodes: INVERSE_SQUARE_NODES,
        }
    }
}

/// Closed-form side of the comparison only; `purity_c` and
/// `linear_entropy_c` are left as NaN.
pub fn map_closed_form(omega0: f64, lambda_cap: f64, rule: MatchRule) -> Result<MappingResult> {
    let lambda_exact = energy_match(omega0, lambda_cap)?;
    let lambda_used = rule.coupling(lambda_cap);
    Ok(MappingResult {
        lambda_cap,
        rule,
        lambda_asymptotic: 2.0 * lambda_cap,
        lambda_exact,
        lambda_used,
        e_c: InverseSquareGround::new(omega0, lambda_cap)?.energy,
        e_h_at_exact: ConfinedPair::new(omega0, lambda_exact)?.ground_energy(),
        purity_h: heisenberg_purity(omega0, lambda_used)?,
        purity_c: f64::NAN,
        linear_entropy_c: f64::NAN,
        purity_h_asymptote: purity_h_asymptote(lambda_cap),
    })
}

pub fn compare_purities(
    omega0: f64,
    lambda_cap: f64,
    rule: MatchRule,
    settings: OracleSettings,
) -> Result<MappingResult> {
    let mut result = map_closed_form(omega0, lambda_cap, rule)?;
    let oracle = InverseSquareGround::new(omega0, lambda_cap)?.oracle(settings.min_nodes, 1)?;
    result.purity_c = oracle.purity_numeric;
    result.linear_entropy_c = 1.0 - oracle.purity_numeric;
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    /// Least-squares slope of `ln Pi_H` against `ln Lambda` over the whole grid.
    pub exponent: f64,
    /// `exp(intercept)` of the same fit restricted to the top decade of the grid.
    pub prefactor: f64,
}

/// Log-log fit of the surrogate purity against `Lambda`.
pub fn purity_scaling_exponent(
    omega0: f64,
    lambda_grid: &[f64],
    rule: MatchRule,
) -> Result<PowerLawFit> {
    if lambda_grid.len() < 3 {
        return Err(Error::GridTooNarrow("need at least 3 coupling values"));
    }
    let points = lambda_grid
        .iter()
        .map(|&lam| {
            require_positive("lambda_cap", lam)?;
            Ok((
                lam.ln(),
                heisenberg_purity(omega0, rule.coupling(lam))?.ln(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let (min, max) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.0), hi.max(p.0))
        });
    // Allow for rounding in log-spaced grids.
    if max - min < 3.0 * 10f64.ln() - 1e-9 {
        return Err(Error::GridTooNarrow("grid must span at least 3 decades"));
    }
    let (exponent, _) = least_squares(&points);
    let top: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|p| p.0 >= max - 10f64.ln() - 1e-9)
        .collect();
    let prefactor = if top.len() >= 2 {
        least_squares(&top).1.exp()
    } else {
        // A single top point: pin the intercept with the global slope.
        (top[0].1 - exponent * top[0].0).exp()
    };
    Ok(PowerLawFit {
        exponent,
        prefactor,
    })
}

fn least_squares(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// `n` log-spaced values from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
                .collect()
        }
    }
}
