//! From the two measurable Gaussian widths to the occupation spectrum.
//!
//! Requiring the position and momentum densities to share the weights
//! `(1 - z) z^m` fixes both the common scale and the ratio:
//!
//! ```text
//! omega_bar = sqrt(omega_s Omega_s)
//! z         = (1 - sqrt(omega_s / Omega_s)) / (1 + sqrt(omega_s / Omega_s))
//! ```
//!
//! The coupling sign is not recoverable: every `z` has one attractive and one
//! repulsive preimage under the harmonic forward model.

use serde::Serialize;

use crate::error::{require_positive, require_unit_ratio, Error, Result};
use crate::heisenberg::KineticEnergies;
use crate::spectral::{MehlerSpectrum, DEFAULT_TRUNCATION_TOL};

/// Position decay `omega_s` and momentum decay `Omega_s` of the model Gaussians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WidthPair {
    omega_s: f64,
    omega_cap_s: f64,
}

impl WidthPair {
    pub fn new(omega_s: f64, omega_cap_s: f64) -> Result<Self> {
        require_positive("omega_s", omega_s)?;
        require_positive("omega_cap_s", omega_cap_s)?;
        if omega_s > omega_cap_s {
            return Err(Error::UnphysicalWidths {
                omega_s,
                omega_cap_s,
            });
        }
        Ok(Self {
            omega_s,
            omega_cap_s,
        })
    }

    pub fn omega_s(&self) -> f64 {
        self.omega_s
    }

    pub fn omega_cap_s(&self) -> f64 {
        self.omega_cap_s
    }

    pub fn kinetic_energies(&self) -> KineticEnergies {
        KineticEnergies {
            k1: 0.25 * self.omega_s,
            k2: 0.25 * self.omega_cap_s,
        }
    }

    /// `(Omega_s - omega_s) / (sqrt(Omega_s) + sqrt(omega_s))^2`, the
    /// cancellation-free form of the ratio.
    pub fn z(&self) -> f64 {
        let root_sum = self.omega_cap_s.sqrt() + self.omega_s.sqrt();
        (self.omega_cap_s - self.omega_s) / (root_sum * root_sum)
    }

    pub fn omega_bar(&self) -> f64 {
        (self.omega_s * self.omega_cap_s).sqrt()
    }
}

pub fn invert_widths(widths: &WidthPair) -> Result<MehlerSpectrum> {
    invert_widths_with_tolerance(widths, DEFAULT_TRUNCATION_TOL)
}

pub fn invert_widths_with_tolerance(widths: &WidthPair, tol: f64) -> Result<MehlerSpectrum> {
    MehlerSpectrum::with_tolerance(widths.omega_bar(), widths.z(), tol)
}

pub fn kinetic_from_widths(widths: &WidthPair) -> KineticEnergies {
    widths.kinetic_energies()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleKind {
    Position,
    Momentum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    values: Vec<f64>,
    kind: SampleKind,
}

impl SampleSet {
    pub fn new(values: Vec<f64>, kind: SampleKind) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySamples);
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample(i));
        }
        Ok(Self { values, kind })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> SampleKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Moment estimate of a Gaussian width with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WidthFit {
    pub kind: SampleKind,
    pub value: f64,
    pub std_error: f64,
    pub n: usize,
}

/// Second-moment estimator: `omega_s = 1 / (2 <x^2>)` for positions,
/// `Omega_s = 2 <k^2>` for momenta. The standard error is propagated from
/// the sample variance of the squares.
pub fn fit_width(samples: &SampleSet) -> Result<WidthFit> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let nf = n as f64;
    let squares = samples.values.iter().map(|v| v * v);
    let mean = squares.clone().sum::<f64>() / nf;
    if mean == 0.0 {
        return Err(Error::ZeroSecondMoment);
    }
    let var = squares.map(|s| (s - mean).powi(2)).sum::<f64>() / (nf - 1.0);
    let se_mean = (var / nf).sqrt();
    let (value, std_error) = match samples.kind {
        SampleKind::Position => {
            let w = 0.5 / mean;
            (w, w * se_mean / mean)
        }
        SampleKind::Momentum => (2.0 * mean, 2.0 * se_mean),
    };
    Ok(WidthFit {
        kind: samples.kind,
        value,
        std_error,
        n,
    })
}

/// The two couplings that produce the same `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualCouplings {
    pub attractive: f64,
    pub repulsive: f64,
}

/// Both preimages of `z` under the forward model.
///
/// With `s = sqrt(omega2 / omega1)` the purity `2 s / (1 + s^2)` is invariant
/// under `s -> 1/s`; solving for the root below one gives
/// `s = (1 - sqrt z) / (1 + sqrt z)`, hence `lambda = (s^4 - 1) / 2` and its
/// reciprocal-mode partner. The couplings are independent of `omega0`.
pub fn dual_couplings(spectrum: &MehlerSpectrum, omega0: f64) -> Result<DualCouplings> {
    dual_couplings_for_z(spectrum.z(), omega0)
}

pub fn dual_couplings_for_z(z: f64, omega0: f64) -> Result<DualCouplings> {
    require_unit_ratio("z", z)?;
    require_positive("omega0", omega0)?;
    let rz = z.sqrt();
    let ln_s = (-rz).ln_1p() - rz.ln_1p();
    Ok(DualCouplings {
        attractive: 0.5 * (-4.0 * ln_s).exp_m1(),
        repulsive: 0.5 * (4.0 * ln_s).exp_m1(),
    })
}

/// Partner coupling `-lambda / (1 + 2 lambda)`.
pub fn dual_of(lambda: f64) -> f64 {
    -lambda / (1.0 + 2.0 * lambda)
}
