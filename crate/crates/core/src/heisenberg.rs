//! Closed-form ground state of two particles in a common harmonic trap
//! coupled by `lambda (omega0^2 / 2) (x1 - x2)^2`.
//!
//! In centre-of-mass / relative coordinates the Hamiltonian separates into
//! two oscillators, `omega1 = omega0` and `omega2 = omega0 sqrt(1 + 2 lambda)`.
//! `lambda > 0` is the attractive branch, `lambda in (-1/2, 0]` the repulsive one.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{require_finite, require_positive, Error, Result};
use crate::inversion::WidthPair;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfinedPair {
    omega0: f64,
    lambda: f64,
}

impl ConfinedPair {
    pub fn new(omega0: f64, lambda: f64) -> Result<Self> {
        require_positive("omega0", omega0)?;
        if !(lambda.is_finite() && lambda > -0.5) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
                reason: "coupling must be finite and greater than -0.5",
            });
        }
        Ok(Self { omega0, lambda })
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn normal_modes(&self) -> NormalModes {
        NormalModes {
            omega1: self.omega0,
            omega2: self.omega0 * (1.0 + 2.0 * self.lambda).sqrt(),
        }
    }

    pub fn model_params(&self) -> GaussianModelParams {
        self.normal_modes().model_params()
    }

    /// Two-mode zero-point energy `(omega1 + omega2) / 2`.
    pub fn ground_energy(&self) -> f64 {
        let NormalModes { omega1, omega2 } = self.normal_modes();
        0.5 * (omega1 + omega2)
    }

    /// Exact ground-state wavefunction `Psi(x1, x2)`.
    pub fn wavefunction(&self) -> impl Fn(f64, f64) -> f64 + Copy {
        let NormalModes { omega1, omega2 } = self.normal_modes();
        let norm = (omega1 * omega2 / (PI * PI)).powf(0.25);
        move |x1, x2| {
            let big_r = (x1 + x2) / 2f64.sqrt();
            let r = (x1 - x2) / 2f64.sqrt();
            norm * (-0.5 * omega1 * big_r * big_r - 0.5 * omega2 * r * r).exp()
        }
    }
}

pub fn normal_modes(pair: &ConfinedPair) -> NormalModes {
    pair.normal_modes()
}

pub fn model_params(pair: &ConfinedPair) -> GaussianModelParams {
    pair.model_params()
}

pub fn ground_energy_h(pair: &ConfinedPair) -> f64 {
    pair.ground_energy()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalModes {
    /// Centre-of-mass frequency.
    pub omega1: f64,
    /// Relative-motion frequency.
    pub omega2: f64,
}

impl NormalModes {
    pub fn model_params(&self) -> GaussianModelParams {
        let (w1, w2) = (self.omega1, self.omega2);
        let omega_s = 2.0 * w1 * w2 / (w1 + w2);
        let d = 0.25 * (w1 - w2).powi(2) / (w1 + w2);
        GaussianModelParams {
            omega_s,
            d,
            omega_cap_s: omega_s + 2.0 * d,
        }
    }
}

/// Parameters of the one-body density matrices in both representations.
///
/// `omega_cap_s = omega_s + 2 d`, which equals `(omega1 + omega2) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianModelParams {
    omega_s: f64,
    d: f64,
    omega_cap_s: f64,
}

impl GaussianModelParams {
    pub fn new(omega_s: f64, d: f64) -> Result<Self> {
        require_positive("omega_s", omega_s)?;
        if !(d.is_finite() && d >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "d",
                value: d,
                reason: "must be finite and non-negative",
            });
        }
        Ok(Self {
            omega_s,
            d,
            omega_cap_s: omega_s + 2.0 * d,
        })
    }

    pub fn omega_s(&self) -> f64 {
        self.omega_s
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn omega_cap_s(&self) -> f64 {
        self.omega_cap_s
    }

    pub fn widths(&self) -> WidthPair {
        WidthPair::new(self.omega_s, self.omega_cap_s)
            .expect("forward-model widths are positive and ordered")
    }

    pub fn gamma_position(&self, x1: f64, x2: f64) -> Result<f64> {
        require_finite("x1", x1)?;
        require_finite("x2", x2)?;
        Ok(self.position_kernel()(x1, x2))
    }

    pub fn gamma_momentum(&self, k1: f64, k2: f64) -> Result<f64> {
        require_finite("k1", k1)?;
        require_finite("k2", k2)?;
        Ok(self.momentum_kernel()(k1, k2))
    }

    /// `phi_s(x1) phi_s(x2) exp(-d (x1 - x2)^2 / 2)`.
    pub fn position_kernel(&self) -> impl Fn(f64, f64) -> f64 + Copy {
        let (ws, d) = (self.omega_s, self.d);
        let norm = (ws / PI).sqrt();
        move |x1, x2| {
            let diff = x1 - x2;
            norm * (-0.5 * ws * (x1 * x1 + x2 * x2) - 0.5 * d * diff * diff).exp()
        }
    }

    pub fn momentum_kernel(&self) -> impl Fn(f64, f64) -> f64 + Copy {
        let (ws, d) = (self.omega_s, self.d);
        let big = ws + 2.0 * d;
        let norm = (PI * big).sqrt().recip();
        let diag = 0.5 * (ws + d) / (ws * big);
        let cross = d / (ws * big);
        move |k1, k2| norm * (-diag * (k1 * k1 + k2 * k2) + cross * k1 * k2).exp()
    }

    /// `N(x) = sqrt(omega_s / pi) exp(-omega_s x^2)`.
    pub fn density_position(&self, x: f64) -> f64 {
        (self.omega_s / PI).sqrt() * (-self.omega_s * x * x).exp()
    }

    /// `F(k) = (pi Omega_s)^(-1/2) exp(-k^2 / Omega_s)`.
    pub fn density_momentum(&self, k: f64) -> f64 {
        (PI * self.omega_cap_s).sqrt().recip() * (-k * k / self.omega_cap_s).exp()
    }

    /// The diagonals `(N, F)` of the two density matrices.
    pub fn marginal_densities(&self) -> (impl Fn(f64) -> f64, impl Fn(f64) -> f64) {
        let p = *self;
        (
            move |x| p.density_position(x),
            move |k| p.density_momentum(k),
        )
    }

    pub fn kinetic_energies(&self) -> KineticEnergies {
        self.widths().kinetic_energies()
    }
}

/// `K1` is the gradient functional of `sqrt(N)`, `K2` the second moment of `F`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KineticEnergies {
    pub k1: f64,
    pub k2: f64,
}

impl KineticEnergies {
    pub fn ratio(&self) -> f64 {
        self.k1 / self.k2
    }
}
