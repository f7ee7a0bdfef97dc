//! Hermite oscillator functions and the geometric (Mehler) product expansion
//! of a Gaussian density.
//!
//! A normalized Gaussian density of decay rate `omega_s` can be written point
//! by point as a convex combination of squared oscillator functions that share
//! a common scale `omega_bar`:
//!
//! ```text
//! N(x) = sum_m (1 - z) z^m  phi_m(sqrt(omega_bar) x)^2,
//! omega_s = omega_bar (1 - z) / (1 + z).
//! ```
//!
//! The momentum density uses the same weights with scale `1 / omega_bar`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{require_finite, require_positive, require_unit_ratio, Error, Result};

/// Default tail weight `z^(M+1)` accepted when choosing a truncation order.
pub const DEFAULT_TRUNCATION_TOL: f64 = 1e-12;

/// Hard cap on the truncation order chosen by default.
pub const MAX_TRUNCATION_ORDER: usize = 10_000;

// Rescaling threshold for the unnormalized recurrence.
const RESCALE_AT: f64 = 1e200;

/// One normalized oscillator function `phi_m(sqrt(alpha) u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteOrbital {
    m: usize,
    alpha: f64,
}

impl HermiteOrbital {
    pub fn new(m: usize, alpha: f64) -> Result<Self> {
        require_positive("alpha", alpha)?;
        Ok(Self { m, alpha })
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn value(&self, u: f64) -> Result<f64> {
        require_finite("u", u)?;
        let mut out = vec![0.0; self.m + 1];
        fill_orbitals(self.alpha, u, &mut out);
        Ok(out[self.m])
    }
}

/// `(alpha/pi)^(1/4) (2^m m!)^(-1/2) exp(-alpha u^2 / 2) H_m(sqrt(alpha) u)`.
pub fn hermite_orbital_value(m: usize, alpha: f64, u: f64) -> Result<f64> {
    HermiteOrbital::new(m, alpha)?.value(u)
}

/// All orbitals `phi_0 ..= phi_max_order` at one point.
pub fn hermite_orbitals(max_order: usize, alpha: f64, u: f64) -> Result<Vec<f64>> {
    require_positive("alpha", alpha)?;
    require_finite("u", u)?;
    let mut out = vec![0.0; max_order + 1];
    fill_orbitals(alpha, u, &mut out);
    Ok(out)
}

/// Three-term recurrence on the normalized functions,
///
/// `phi_{n+1} = sqrt(2/(n+1)) xi phi_n - sqrt(n/(n+1)) phi_{n-1}`,
///
/// started from 1 and carried with a running log scale so that neither the
/// Gaussian factor nor the polynomial growth under- or overflows before the
/// two are combined.
pub(crate) fn fill_orbitals(alpha: f64, u: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    let xi = alpha.sqrt() * u;
    let log_prefactor = 0.25 * (alpha / PI).ln() - 0.5 * xi * xi;

    let mut log_scale = 0.0_f64;
    let mut prev = 0.0_f64;
    let mut cur = 1.0_f64;
    out[0] = log_prefactor.exp();
    for n in 0..out.len() - 1 {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * xi * cur - (nf / (nf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_AT {
            prev /= RESCALE_AT;
            cur /= RESCALE_AT;
            log_scale += RESCALE_AT.ln();
        }
        out[n + 1] = if cur == 0.0 {
            0.0
        } else {
            cur.signum() * (cur.abs().ln() + log_scale + log_prefactor).exp()
        };
    }
}

/// Occupation weight `(1 - z) z^m`.
pub fn occupation(m: usize, z: f64) -> Result<f64> {
    require_unit_ratio("z", z)?;
    Ok(occupation_unchecked(m, z))
}

fn occupation_unchecked(m: usize, z: f64) -> f64 {
    if m == 0 {
        1.0 - z
    } else {
        (1.0 - z) * z.powf(m as f64)
    }
}

/// Smallest `M` with `z^(M+1) <= tol`.
pub fn truncation_order_for(z: f64, tol: f64) -> Result<usize> {
    require_unit_ratio("z", z)?;
    require_positive("tol", tol)?;
    if z == 0.0 || z <= tol {
        return Ok(0);
    }
    let guess = (tol.ln() / z.ln()).ceil() - 1.0;
    let mut m = if guess.is_finite() && guess > 0.0 {
        guess as usize
    } else {
        0
    };
    // Repair rounding in the logarithms.
    while z.powf((m + 1) as f64) > tol {
        m += 1;
    }
    while m > 0 && z.powf(m as f64) <= tol {
        m -= 1;
    }
    Ok(m)
}

/// Normalized X-ray form factor of a single oscillator density,
/// `(2 pi)^(-1/2) exp(-k^2 / (4 omega))`.
pub fn form_factor(omega: f64, k: f64) -> Result<f64> {
    require_positive("omega", omega)?;
    require_finite("k", k)?;
    Ok((-k * k / (4.0 * omega)).exp() / (2.0 * PI).sqrt())
}

/// Orbit parameter, geometric ratio and truncation order of a Mehler expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MehlerSpectrum {
    omega_bar: f64,
    z: f64,
    truncation_order: usize,
}

impl MehlerSpectrum {
    /// Truncated at the default tolerance, capped at [`MAX_TRUNCATION_ORDER`].
    pub fn new(omega_bar: f64, z: f64) -> Result<Self> {
        Self::with_tolerance(omega_bar, z, DEFAULT_TRUNCATION_TOL)
    }

    pub fn with_tolerance(omega_bar: f64, z: f64, tol: f64) -> Result<Self> {
        let order = truncation_order_for(z, tol)?.min(MAX_TRUNCATION_ORDER);
        Self::with_truncation(omega_bar, z, order)
    }

    pub fn with_truncation(omega_bar: f64, z: f64, truncation_order: usize) -> Result<Self> {
        require_positive("omega_bar", omega_bar)?;
        require_unit_ratio("z", z)?;
        Ok(Self {
            omega_bar,
            z,
            truncation_order,
        })
    }

    pub fn omega_bar(&self) -> f64 {
        self.omega_bar
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn truncation_order(&self) -> usize {
        self.truncation_order
    }

    pub fn occupation(&self, m: usize) -> f64 {
        occupation_unchecked(m, self.z)
    }

    /// `P_0 ..= P_M`.
    pub fn occupations(&self) -> Vec<f64> {
        (0..=self.truncation_order)
            .map(|m| occupation_unchecked(m, self.z))
            .collect()
    }

    /// Weight missing from the truncated sum, `z^(M+1)`.
    pub fn tail_weight(&self) -> f64 {
        self.z.powf((self.truncation_order + 1) as f64)
    }

    /// Decay rate of the position density this expansion represents.
    pub fn omega_s(&self) -> f64 {
        self.omega_bar * (1.0 - self.z) / (1.0 + self.z)
    }

    /// Decay parameter of the momentum density this expansion represents.
    pub fn omega_cap_s(&self) -> f64 {
        self.omega_bar * (1.0 + self.z) / (1.0 - self.z)
    }

    /// Truncated position-space expansion at `x`.
    pub fn density_position(&self, x: f64) -> f64 {
        self.weighted_square_sum(self.omega_bar, x)
    }

    /// Truncated momentum-space expansion at `k`.
    pub fn density_momentum(&self, k: f64) -> f64 {
        self.weighted_square_sum(self.omega_bar.recip(), k)
    }

    fn weighted_square_sum(&self, alpha: f64, u: f64) -> f64 {
        let mut phi = vec![0.0; self.truncation_order + 1];
        fill_orbitals(alpha, u, &mut phi);
        // Smallest terms first.
        phi.iter()
            .enumerate()
            .rev()
            .map(|(m, p)| occupation_unchecked(m, self.z) * p * p)
            .sum()
    }
}

pub fn mehler_density_position(x: f64, spectrum: &MehlerSpectrum) -> Result<f64> {
    require_finite("x", x)?;
    Ok(spectrum.density_position(x))
}

pub fn mehler_density_momentum(k: f64, spectrum: &MehlerSpectrum) -> Result<f64> {
    require_finite("k", k)?;
    Ok(spectrum.density_momentum(k))
}

impl TryFrom<(f64, f64)> for MehlerSpectrum {
    type Error = Error;

    fn try_from((omega_bar, z): (f64, f64)) -> Result<Self> {
        Self::new(omega_bar, z)
    }
}
