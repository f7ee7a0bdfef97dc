//! Numerical ground truth, independent of every closed form in the crate.
//!
//! * Nyström diagonalization of one-body density-matrix kernels on a
//!   Gauss–Legendre grid.
//! * One-body density matrices built by quadrature from an arbitrary
//!   two-body wavefunction.
//! * The exact ground state of the trapped pair with an inverse-square
//!   repulsion `Lambda / (x1 - x2)^2`.
//! * A quadrature 2-D Fourier transform.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{require_positive, Error, Result};

/// Default number of Gauss–Legendre nodes.
pub const DEFAULT_NODES: usize = 200;

/// Default node count for inverse-square ground states.
pub const INVERSE_SQUARE_NODES: usize = 400;

/// Half-width in units of the slowest Gaussian decay length.
pub const HALF_WIDTH_DECAY_LENGTHS: f64 = 8.0;

pub const SYMMETRY_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-6;
pub const NORM_TOL: f64 = 1e-8;
pub const IMAGINARY_TOL: f64 = 1e-8;

/// Eigenvalues below this are dropped before taking logarithms.
pub const EIGENVALUE_FLOOR: f64 = 1e-12;

/// Gauss–Legendre rule mapped to `[-half_width, half_width]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    half_width: f64,
}

impl QuadratureGrid {
    pub fn gauss_legendre(n: usize, half_width: f64) -> Result<Self> {
        require_positive("half_width", half_width)?;
        let n = NonZeroUsize::new(n).ok_or(Error::InvalidParameter {
            name: "nodes",
            value: 0.0,
            reason: "need at least one node",
        })?;
        let mut pairs: Vec<(f64, f64)> = GaussLegendre::new(n)
            .as_node_weight_pairs()
            .iter()
            .map(|&(x, w)| (x * half_width, w * half_width))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (nodes, weights) = pairs.into_iter().unzip();
        Ok(Self {
            nodes,
            weights,
            half_width,
        })
    }

    /// `n` nodes on `|x| <= 8 / sqrt(omega_min)`.
    pub fn for_decay_rate(n: usize, omega_min: f64) -> Result<Self> {
        require_positive("omega_min", omega_min)?;
        Self::gauss_legendre(n, HALF_WIDTH_DECAY_LENGTHS / omega_min.sqrt())
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn integrate_2d(&self, f: impl Fn(f64, f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &wx)| wx * self.integrate(|y| f(x, y)))
            .sum()
    }
}

/// Numerically diagonalized one-body density matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    /// Kept eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// `sum mu_i^2` over the full discrete spectrum.
    pub purity_numeric: f64,
    pub trace: f64,
    /// `max |A v - mu v|` over the kept modes.
    pub residual: f64,
}

impl OracleResult {
    /// `|mu_m - (1 - z) z^m|` for each kept mode.
    pub fn deviations_from_geometric(&self, z: f64) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .enumerate()
            .map(|(m, mu)| (mu - (1.0 - z) * z.powi(m as i32)).abs())
            .collect()
    }
}

/// Nyström eigenvalues of the integral operator with kernel `kernel` on `grid`.
pub fn nystrom_eigs<K>(kernel: K, grid: &QuadratureGrid, n_keep: usize) -> Result<OracleResult>
where
    K: Fn(f64, f64) -> f64 + Sync,
{
    let x = grid.nodes();
    let n = x.len();
    let rows: Vec<f64> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let kernel = &kernel;
            (0..n).map(move |j| kernel(x[i], x[j]))
        })
        .collect();
    let k = DMatrix::from_row_slice(n, n, &rows);
    let asymmetry = max_asymmetry(&k);
    if asymmetry > SYMMETRY_TOL {
        return Err(Error::NonSymmetricKernel(asymmetry));
    }
    spectrum_of_kernel_matrix(&k, grid, n_keep)
}

fn max_asymmetry(k: &DMatrix<f64>) -> f64 {
    let n = k.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.max((k[(i, j)] - k[(j, i)]).abs());
        }
    }
    worst
}

/// Eigen-decomposition of `sqrt(w_i) K_ij sqrt(w_j)` for a kernel already
/// tabulated on the grid nodes.
pub fn spectrum_of_kernel_matrix(
    k: &DMatrix<f64>,
    grid: &QuadratureGrid,
    n_keep: usize,
) -> Result<OracleResult> {
    let w = grid.weights();
    let n = w.len();
    let trace: f64 = (0..n).map(|i| w[i] * k[(i, i)]).sum();
    if deviates_from_one(trace, TRACE_TOL) {
        return Err(Error::TraceDeviation {
            trace,
            tolerance: TRACE_TOL,
        });
    }
    let sw: Vec<f64> = w.iter().map(|w| w.sqrt()).collect();
    let a = DMatrix::from_fn(n, n, |i, j| 0.5 * (k[(i, j)] + k[(j, i)]) * sw[i] * sw[j]);
    let eig = SymmetricEigen::new(a.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&p, &q| eig.eigenvalues[q].total_cmp(&eig.eigenvalues[p]));

    let purity_numeric = eig.eigenvalues.iter().map(|mu| mu * mu).sum();
    let kept = &order[..n_keep.min(n)];
    let residual = kept
        .iter()
        .map(|&idx| {
            let v = eig.eigenvectors.column(idx);
            let r = &a * v - v * eig.eigenvalues[idx];
            r.amax()
        })
        .fold(0.0, f64::max);
    Ok(OracleResult {
        eigenvalues: kept.iter().map(|&idx| eig.eigenvalues[idx]).collect(),
        purity_numeric,
        trace,
        residual,
    })
}

/// How the inner coordinate is integrated out when building the density matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerIntegration {
    /// Reuse the outer grid. Spectrally accurate for analytic wavefunctions.
    Product,
    /// Gauss–Legendre panels split at `y = x` and `y = x'`, with the given
    /// number of nodes per panel. For wavefunctions with a cusp at particle
    /// coincidence.
    SplitAtCoincidence { panel_nodes: usize },
}

/// Spectrum of `gamma(x, x') = int psi(x, y) psi(x', y) dy` by quadrature,
/// inner integral on the outer grid.
pub fn rdm_spectrum_from_wavefunction<P>(
    psi: P,
    grid: &QuadratureGrid,
    n_keep: usize,
) -> Result<OracleResult>
where
    P: Fn(f64, f64) -> f64 + Sync,
{
    rdm_spectrum_with(psi, grid, n_keep, InnerIntegration::Product)
}

pub fn rdm_spectrum_with<P>(
    psi: P,
    grid: &QuadratureGrid,
    n_keep: usize,
    inner: InnerIntegration,
) -> Result<OracleResult>
where
    P: Fn(f64, f64) -> f64 + Sync,
{
    let x = grid.nodes();
    let w = grid.weights();
    let n = x.len();

    let table = DMatrix::from_fn(n, n, |i, k| psi(x[i], x[k]));
    let asymmetry = max_asymmetry(&table);
    if asymmetry > SYMMETRY_TOL {
        return Err(Error::ExchangeAsymmetry(asymmetry));
    }

    let gamma = match inner {
        InnerIntegration::Product => {
            let weighted = DMatrix::from_fn(n, n, |i, k| table[(i, k)] * w[k]);
            &weighted * table.transpose()
        }
        InnerIntegration::SplitAtCoincidence { panel_nodes } => {
            split_gamma(&psi, grid, panel_nodes)?
        }
    };

    let norm: f64 = (0..n).map(|i| w[i] * gamma[(i, i)]).sum();
    if deviates_from_one(norm, NORM_TOL) {
        return Err(Error::Normalization {
            norm,
            tolerance: NORM_TOL,
        });
    }
    spectrum_of_kernel_matrix(&gamma, grid, n_keep)
}

fn split_gamma<P>(psi: &P, grid: &QuadratureGrid, panel_nodes: usize) -> Result<DMatrix<f64>>
where
    P: Fn(f64, f64) -> f64 + Sync,
{
    let reference = QuadratureGrid::gauss_legendre(panel_nodes, 1.0)?;
    let (t, tw) = (reference.nodes(), reference.weights());
    let x = grid.nodes();
    let n = x.len();
    let l = grid.half_width();

    let panel = |a: f64, b: f64, xi: f64, xj: f64| -> f64 {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        t.iter()
            .zip(tw)
            .map(|(&s, &ws)| {
                let y = mid + half * s;
                ws * psi(xi, y) * psi(xj, y)
            })
            .sum::<f64>()
            * half
    };

    let upper: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i..n)
                .map(|j| {
                    let (xi, xj) = (x[i], x[j]);
                    if i == j {
                        panel(-l, xi, xi, xi) + panel(xi, l, xi, xi)
                    } else {
                        let (lo, hi) = (xi.min(xj), xi.max(xj));
                        panel(-l, lo, xi, xj) + panel(lo, hi, xi, xj) + panel(hi, l, xi, xj)
                    }
                })
                .collect()
        })
        .collect();

    let mut gamma = DMatrix::zeros(n, n);
    for (i, row) in upper.iter().enumerate() {
        for (offset, &v) in row.iter().enumerate() {
            gamma[(i, i + offset)] = v;
            gamma[(i + offset, i)] = v;
        }
    }
    Ok(gamma)
}

/// `(1 / 2 pi) sum K(x1, x2) exp(-i k1 x1 + i k2 x2)` over the product grid.
///
/// Fails if the imaginary part exceeds [`IMAGINARY_TOL`], which for the
/// symmetric real kernels used here only happens when the domain is cut too
/// short.
pub fn fourier_transform_2d<K>(kernel: K, grid: &QuadratureGrid, k1: f64, k2: f64) -> Result<f64>
where
    K: Fn(f64, f64) -> f64,
{
    let x = grid.nodes();
    let w = grid.weights();
    let (mut re, mut im) = (0.0, 0.0);
    for (&x1, &w1) in x.iter().zip(w) {
        let (mut row_re, mut row_im) = (0.0, 0.0);
        for (&x2, &w2) in x.iter().zip(w) {
            let v = w2 * kernel(x1, x2);
            let phase = k2 * x2;
            row_re += v * phase.cos();
            row_im += v * phase.sin();
        }
        let phase = -k1 * x1;
        let (c, s) = (phase.cos(), phase.sin());
        re += w1 * (c * row_re - s * row_im);
        im += w1 * (c * row_im + s * row_re);
    }
    let (re, im) = (re / (2.0 * PI), im / (2.0 * PI));
    if im.abs() > IMAGINARY_TOL {
        return Err(Error::ImaginaryResidue(im.abs()));
    }
    Ok(re)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumEntropy {
    pub von_neumann: f64,
    pub purity: f64,
}

/// `(-sum mu ln mu, sum mu^2)` for an arbitrary occupation list.
pub fn entropy_of_spectrum(eigenvalues: &[f64]) -> Result<SpectrumEntropy> {
    if let Some(&bad) = eigenvalues.iter().find(|&&mu| mu < -1e-10) {
        return Err(Error::NegativeEigenvalue(bad));
    }
    let clipped = eigenvalues.iter().map(|&mu| mu.max(0.0));
    let trace: f64 = clipped.clone().sum();
    if deviates_from_one(trace, TRACE_TOL) {
        return Err(Error::TraceDeviation {
            trace,
            tolerance: TRACE_TOL,
        });
    }
    let purity = clipped.clone().map(|mu| mu * mu).sum();
    let von_neumann = clipped
        .filter(|&mu| mu >= EIGENVALUE_FLOOR)
        .map(|mu| -mu * mu.ln())
        .sum();
    Ok(SpectrumEntropy {
        von_neumann,
        purity,
    })
}

/// Ground state of the trapped pair with interaction `Lambda / (x1 - x2)^2`.
///
/// With `r = (x1 - x2) / sqrt 2` the interaction is `Lambda / (2 r^2)` and the
/// relative ground state is `|r|^a exp(-omega0 r^2 / 2)` with `a (a - 1) =
/// Lambda`; the centre of mass stays in the trap ground state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InverseSquareGround {
    pub omega0: f64,
    pub lambda_cap: f64,
    pub a_exponent: f64,
    pub energy: f64,
}

pub fn inverse_square_ground(omega0: f64, lambda_cap: f64) -> Result<InverseSquareGround> {
    InverseSquareGround::new(omega0, lambda_cap)
}

impl InverseSquareGround {
    pub fn new(omega0: f64, lambda_cap: f64) -> Result<Self> {
        require_positive("omega0", omega0)?;
        require_positive("lambda_cap", lambda_cap)?;
        let root = (1.0 + 4.0 * lambda_cap).sqrt();
        Ok(Self {
            omega0,
            lambda_cap,
            a_exponent: 0.5 * (1.0 + root),
            energy: 0.5 * omega0 * (3.0 + root),
        })
    }

    /// Normalized relative-coordinate factor, even in `r`.
    pub fn relative_wavefunction(&self) -> impl Fn(f64) -> f64 + Copy + Sync {
        let (a, w) = (self.a_exponent, self.omega0);
        // int |r|^(2a) exp(-w r^2) dr = Gamma(a + 1/2) / w^(a + 1/2)
        let log_norm = 0.5 * (ln_gamma(a + 0.5) - (a + 0.5) * w.ln());
        move |r: f64| {
            if r == 0.0 {
                0.0
            } else {
                (a * r.abs().ln() - 0.5 * w * r * r - log_norm).exp()
            }
        }
    }

    /// Normalized two-body wavefunction `Psi(x1, x2)`.
    pub fn wavefunction(&self) -> impl Fn(f64, f64) -> f64 + Copy + Sync {
        let rel = self.relative_wavefunction();
        let w = self.omega0;
        let com_norm = (w / PI).powf(0.25);
        move |x1, x2| {
            let big_r = (x1 + x2) / 2f64.sqrt();
            let r = (x1 - x2) / 2f64.sqrt();
            com_norm * (-0.5 * w * big_r * big_r).exp() * rel(r)
        }
    }

    /// Each particle sits near `±sqrt(a / (2 omega0))`; the grid covers that
    /// plus eight trap lengths, so the half-width grows like `Lambda^(1/4)`.
    /// The node count keeps at least 16 nodes per trap length and is even, so
    /// no node sits at the origin.
    pub fn grid(&self, min_nodes: usize) -> Result<QuadratureGrid> {
        let trap_length = self.omega0.sqrt().recip();
        let half_width =
            (self.a_exponent / (2.0 * self.omega0)).sqrt() + HALF_WIDTH_DECAY_LENGTHS * trap_length;
        let dense = (16.0 * half_width / trap_length).ceil() as usize;
        let n = min_nodes.max(dense);
        QuadratureGrid::gauss_legendre(n + n % 2, half_width)
    }

    /// For `a < 8` the coincidence cusp `|x1 - x2|^a` limits product
    /// quadrature to algebraic convergence, so the inner integral is split
    /// there. Above that the state vanishes to high order at coincidence.
    pub fn inner_integration(&self) -> InnerIntegration {
        if self.a_exponent < 8.0 {
            InnerIntegration::SplitAtCoincidence { panel_nodes: 120 }
        } else {
            InnerIntegration::Product
        }
    }

    /// Numerically diagonalized one-body density matrix of this state.
    pub fn oracle(&self, min_nodes: usize, n_keep: usize) -> Result<OracleResult> {
        let grid = self.grid(min_nodes)?;
        rdm_spectrum_with(self.wavefunction(), &grid, n_keep, self.inner_integration())
    }
}

/// Also true for NaN.
fn deviates_from_one(value: f64, tol: f64) -> bool {
    let off = (value - 1.0).abs();
    off.is_nan() || off > tol
}
