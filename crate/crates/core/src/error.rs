use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("unphysical width pair: omega_s = {omega_s} exceeds omega_cap_s = {omega_cap_s}")]
    UnphysicalWidths { omega_s: f64, omega_cap_s: f64 },

    #[error("sample set is empty")]
    EmptySamples,

    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("non-finite sample at index {0}")]
    NonFiniteSample(usize),

    #[error("zero second moment")]
    ZeroSecondMoment,

    #[error("kernel is not symmetric on the grid (max asymmetry {0:e})")]
    NonSymmetricKernel(f64),

    #[error("wavefunction is not exchange symmetric on the grid (max asymmetry {0:e})")]
    ExchangeAsymmetry(f64),

    #[error("trace {trace} deviates from 1 by more than {tolerance:e}; grid is insufficient")]
    TraceDeviation { trace: f64, tolerance: f64 },

    #[error("wavefunction norm {norm} deviates from 1 by more than {tolerance:e}")]
    Normalization { norm: f64, tolerance: f64 },

    #[error("eigenvalue {0:e} is negative beyond tolerance")]
    NegativeEigenvalue(f64),

    #[error("imaginary residue {0:e} in Fourier transform; domain truncated too early")]
    ImaginaryResidue(f64),

    #[error("grid too narrow: {0}")]
    GridTooNarrow(&'static str),

    #[error("root finder did not converge after {0} iterations")]
    NoConvergence(usize),
}

impl Error {
    /// True for failures of the numerical machinery (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonSymmetricKernel(_)
                | Error::TraceDeviation { .. }
                | Error::Normalization { .. }
                | Error::NegativeEigenvalue(_)
                | Error::ImaginaryResidue(_)
                | Error::NoConvergence(_)
        )
    }
}

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and positive",
        })
    }
}

pub(crate) fn require_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        })
    }
}

pub(crate) fn require_unit_ratio(name: &'static str, z: f64) -> Result<f64> {
    if (0.0..1.0).contains(&z) {
        Ok(z)
    } else {
        Err(Error::InvalidParameter {
            name,
            value: z,
            reason: "must lie in [0, 1)",
        })
    }
}
