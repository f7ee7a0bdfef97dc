//! Two particles in a common harmonic trap: closed-form forward model,
//! inversion of the measured one-particle widths into a geometric occupation
//! spectrum, entropic correlation measures, and a quadrature oracle that
//! checks all of it numerically.
//!
//! Units are Hartree atomic units (`hbar = m = 1`).
//!
//! ```
//! use mehler_core::{ConfinedPair, invert_widths, entropies};
//!
//! let pair = ConfinedPair::new(1.0, 1.5)?;
//! let spectrum = invert_widths(&pair.model_params().widths())?;
//! let purity = entropies::purity(spectrum.z())?;
//! assert!((purity - (8.0f64 / 9.0).sqrt()).abs() < 1e-14);
//! # Ok::<(), mehler_core::Error>(())
//! ```

pub mod entropies;
pub mod error;
pub mod heisenberg;
pub mod inversion;
pub mod mapping;
pub mod oracle;
pub mod spectral;

pub use entropies::{EntropyReport, RenyiSample};
pub use error::{Error, Result};
pub use heisenberg::{ConfinedPair, GaussianModelParams, KineticEnergies, NormalModes};
pub use inversion::{
    dual_couplings, fit_width, invert_widths, DualCouplings, SampleKind, SampleSet, WidthFit,
    WidthPair,
};
pub use mapping::{MappingResult, MatchRule, PowerLawFit};
pub use oracle::{InverseSquareGround, OracleResult, QuadratureGrid};
pub use spectral::{HermiteOrbital, MehlerSpectrum};
