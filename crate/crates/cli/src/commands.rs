use std::path::{Path, PathBuf};

use mehler_core::entropies::report;
use mehler_core::inversion::{
    dual_couplings, fit_width, invert_widths, invert_widths_with_tolerance,
};
use mehler_core::mapping::{
    compare_purities, log_grid, map_closed_form, purity_scaling_exponent, OracleSettings,
};
use mehler_core::oracle::{
    entropy_of_spectrum, nystrom_eigs, rdm_spectrum_with, InnerIntegration, QuadratureGrid,
    DEFAULT_NODES, INVERSE_SQUARE_NODES,
};
use mehler_core::spectral::DEFAULT_TRUNCATION_TOL;
use mehler_core::{
    ConfinedPair, DualCouplings, EntropyReport, Error, InverseSquareGround, MappingResult,
    MatchRule, OracleResult, PowerLawFit, SampleKind, SampleSet, WidthFit, WidthPair,
};
use serde::Serialize;

use crate::config::{Model, Space};
use crate::error::{CliError, Context};
use crate::output::{fmt_f64, Table, SCHEMA_VERSION};
use crate::samples::{read_samples, synthetic_samples, write_samples};

pub trait Report: Serialize {
    fn table(&self) -> Table;
}

fn kind_name(kind: SampleKind) -> &'static str {
    match kind {
        SampleKind::Position => "position",
        SampleKind::Momentum => "momentum",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ForwardReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub omega0: f64,
    pub lambda: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub omega_s: f64,
    pub d: f64,
    pub omega_cap_s: f64,
    pub omega_bar: f64,
    pub z: f64,
    pub energy: f64,
    pub k1: f64,
    pub k2: f64,
    pub kinetic_ratio: f64,
    pub entropies: EntropyReport,
}

pub fn cmd_forward(omega0: f64, lambda: f64, q_grid: &[f64]) -> Result<ForwardReport, CliError> {
    let pair = ConfinedPair::new(omega0, lambda).context("forward")?;
    let modes = pair.normal_modes();
    let params = pair.model_params();
    let spectrum = invert_widths(&params.widths()).context("forward")?;
    let kinetic = params.kinetic_energies();
    Ok(ForwardReport {
        schema_version: SCHEMA_VERSION,
        command: "forward",
        omega0,
        lambda,
        omega1: modes.omega1,
        omega2: modes.omega2,
        omega_s: params.omega_s(),
        d: params.d(),
        omega_cap_s: params.omega_cap_s(),
        omega_bar: spectrum.omega_bar(),
        z: spectrum.z(),
        energy: pair.ground_energy(),
        k1: kinetic.k1,
        k2: kinetic.k2,
        kinetic_ratio: kinetic.ratio(),
        entropies: report(&spectrum, q_grid).context("forward")?,
    })
}

impl Report for ForwardReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&[
            "omega0",
            "lambda",
            "omega1",
            "omega2",
            "omega_s",
            "d",
            "omega_cap_s",
            "omega_bar",
            "z",
            "energy",
            "k1",
            "k2",
            "purity",
            "linear_entropy",
            "von_neumann",
        ]);
        t.push(
            [
                self.omega0,
                self.lambda,
                self.omega1,
                self.omega2,
                self.omega_s,
                self.d,
                self.omega_cap_s,
                self.omega_bar,
                self.z,
                self.energy,
                self.k1,
                self.k2,
                self.entropies.purity,
                self.entropies.linear_entropy,
                self.entropies.von_neumann,
            ]
            .map(fmt_f64)
            .to_vec(),
        );
        t
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InvertSource {
    Widths {
        omega_s: f64,
        omega_cap_s: f64,
    },
    Samples {
        position: PathBuf,
        momentum: PathBuf,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct InvertReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub omega_s: f64,
    pub omega_cap_s: f64,
    pub omega_bar: f64,
    pub z: f64,
    pub truncation_order: usize,
    pub occupations: Vec<f64>,
    pub entropies: EntropyReport,
    pub omega0: f64,
    pub dual_couplings: DualCouplings,
    /// Present when the widths were fitted from samples.
    pub fits: Option<[WidthFit; 2]>,
}

pub fn cmd_invert(
    source: &InvertSource,
    omega0: f64,
    tol: Option<f64>,
    q_grid: &[f64],
) -> Result<InvertReport, CliError> {
    let (widths, fits) = match source {
        InvertSource::Widths {
            omega_s,
            omega_cap_s,
        } => (
            WidthPair::new(*omega_s, *omega_cap_s).context("invert")?,
            None,
        ),
        InvertSource::Samples { position, momentum } => {
            let pos = fit_file(position, SampleKind::Position)?;
            let mom = fit_file(momentum, SampleKind::Momentum)?;
            (
                WidthPair::new(pos.value, mom.value).context("invert")?,
                Some([pos, mom]),
            )
        }
    };
    let spectrum = invert_widths_with_tolerance(&widths, tol.unwrap_or(DEFAULT_TRUNCATION_TOL))
        .context("invert")?;
    Ok(InvertReport {
        schema_version: SCHEMA_VERSION,
        command: "invert",
        omega_s: widths.omega_s(),
        omega_cap_s: widths.omega_cap_s(),
        omega_bar: spectrum.omega_bar(),
        z: spectrum.z(),
        truncation_order: spectrum.truncation_order(),
        occupations: spectrum.occupations(),
        entropies: report(&spectrum, q_grid).context("invert")?,
        omega0,
        dual_couplings: dual_couplings(&spectrum, omega0).context("invert")?,
        fits,
    })
}

impl Report for InvertReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&["m", "occupation"]);
        for (m, p) in self.occupations.iter().enumerate() {
            t.push(vec![m.to_string(), fmt_f64(*p)]);
        }
        t
    }
}

fn fit_file(path: &Path, kind: SampleKind) -> Result<WidthFit, CliError> {
    let set = SampleSet::new(read_samples(path)?, kind).context("fit")?;
    fit_width(&set).context("fit")
}

#[derive(Debug, Clone, Serialize)]
pub struct FitReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub path: String,
    pub kind: SampleKind,
    pub value: f64,
    pub std_error: f64,
    pub n: usize,
}

pub fn cmd_fit(path: &Path, kind: SampleKind) -> Result<FitReport, CliError> {
    let fit = fit_file(path, kind)?;
    Ok(FitReport {
        schema_version: SCHEMA_VERSION,
        command: "fit",
        path: path.display().to_string(),
        kind,
        value: fit.value,
        std_error: fit.std_error,
        n: fit.n,
    })
}

impl Report for FitReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&["kind", "value", "std_error", "n"]);
        t.push(vec![
            kind_name(self.kind).into(),
            fmt_f64(self.value),
            fmt_f64(self.std_error),
            self.n.to_string(),
        ]);
        t
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleRequest {
    pub model: Model,
    pub omega0: f64,
    /// Heisenberg coupling or inverse-square strength, by model.
    pub coupling: f64,
    pub nodes: Option<usize>,
    pub half_width: Option<f64>,
    pub n_keep: usize,
    pub space: Space,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormComparison {
    pub z: f64,
    pub occupations: Vec<f64>,
    pub deviations: Vec<f64>,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub model: &'static str,
    pub omega0: f64,
    pub coupling: f64,
    pub space: &'static str,
    pub nodes: usize,
    pub half_width: f64,
    pub inner_integration: Option<InnerIntegration>,
    pub eigenvalues: Vec<f64>,
    pub trace: f64,
    pub residual: f64,
    pub purity: f64,
    pub linear_entropy: f64,
    pub von_neumann: f64,
    pub closed_form: Option<ClosedFormComparison>,
}

pub fn cmd_oracle(req: &OracleRequest) -> Result<OracleReport, CliError> {
    let grid_for = |default_half_width: f64, default_nodes: usize| {
        let n = req.nodes.unwrap_or(default_nodes);
        QuadratureGrid::gauss_legendre(n, req.half_width.unwrap_or(default_half_width))
            .context("oracle")
    };
    let (grid, result, inner, closed_form, space) = match req.model {
        Model::Heisenberg => {
            let params = ConfinedPair::new(req.omega0, req.coupling)
                .context("oracle")?
                .model_params();
            // The kernel decays at least as fast as the density in each space.
            let (grid, result) = match req.space {
                Space::Position => {
                    let grid = grid_for(default_half_width(params.omega_s()), DEFAULT_NODES)?;
                    let result = nystrom_eigs(params.position_kernel(), &grid, grid.len());
                    (grid, result)
                }
                Space::Momentum => {
                    let grid = grid_for(
                        default_half_width(params.omega_cap_s().recip()),
                        DEFAULT_NODES,
                    )?;
                    let result = nystrom_eigs(params.momentum_kernel(), &grid, grid.len());
                    (grid, result)
                }
            };
            let result = result.context("oracle")?;
            let z = params.widths().z();
            let occupations: Vec<f64> = (0..req.n_keep.min(grid.len()))
                .map(|m| (1.0 - z) * z.powi(m as i32))
                .collect();
            let mut deviations = result.deviations_from_geometric(z);
            deviations.truncate(req.n_keep);
            let cmp = ClosedFormComparison {
                z,
                occupations,
                max_deviation: deviations.iter().copied().fold(0.0, f64::max),
                deviations,
            };
            let space = match req.space {
                Space::Position => "position",
                Space::Momentum => "momentum",
            };
            (grid, result, None, Some(cmp), space)
        }
        Model::InverseSquare => {
            let ground = InverseSquareGround::new(req.omega0, req.coupling).context("oracle")?;
            let grid = match (req.half_width, req.nodes) {
                (None, n) => ground
                    .grid(n.unwrap_or(INVERSE_SQUARE_NODES))
                    .context("oracle")?,
                (Some(_), n) => {
                    // Keep the node count even so no node lands on the origin.
                    let n = n.unwrap_or(INVERSE_SQUARE_NODES);
                    QuadratureGrid::gauss_legendre(n + n % 2, req.half_width.unwrap_or(1.0))
                        .context("oracle")?
                }
            };
            let inner = ground.inner_integration();
            let result = rdm_spectrum_with(ground.wavefunction(), &grid, grid.len(), inner)
                .context("oracle")?;
            (grid, result, Some(inner), None, "position")
        }
    };
    let entropy = entropy_of_spectrum(&result.eigenvalues).context("oracle")?;
    let OracleResult {
        mut eigenvalues,
        purity_numeric,
        trace,
        residual,
    } = result;
    eigenvalues.truncate(req.n_keep);
    Ok(OracleReport {
        schema_version: SCHEMA_VERSION,
        command: "oracle",
        model: match req.model {
            Model::Heisenberg => "heisenberg",
            Model::InverseSquare => "inverse-square",
        },
        omega0: req.omega0,
        coupling: req.coupling,
        space,
        nodes: grid.len(),
        half_width: grid.half_width(),
        inner_integration: inner,
        eigenvalues,
        trace,
        residual,
        purity: purity_numeric,
        linear_entropy: 1.0 - purity_numeric,
        von_neumann: entropy.von_neumann,
        closed_form,
    })
}

fn default_half_width(decay_rate: f64) -> f64 {
    mehler_core::oracle::HALF_WIDTH_DECAY_LENGTHS / decay_rate.sqrt()
}

impl Report for OracleReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&["m", "eigenvalue", "closed_form", "deviation"]);
        for (m, mu) in self.eigenvalues.iter().enumerate() {
            let (exact, dev) = match &self.closed_form {
                Some(c) => (c.occupations.get(m).copied(), c.deviations.get(m).copied()),
                None => (None, None),
            };
            t.push(vec![
                m.to_string(),
                fmt_f64(*mu),
                exact.map(fmt_f64).unwrap_or_default(),
                dev.map(fmt_f64).unwrap_or_default(),
            ]);
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CouplingGrid {
    Values(Vec<f64>),
    Log { from: f64, to: f64, points: usize },
}

impl CouplingGrid {
    pub fn values(&self) -> Vec<f64> {
        match self {
            CouplingGrid::Values(v) => v.clone(),
            CouplingGrid::Log { from, to, points } => log_grid(*from, *to, *points),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MapReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub omega0: f64,
    pub rule: MatchRule,
    pub points: Vec<MappingResult>,
    /// Log-log fit of the surrogate purity; absent when the grid spans fewer
    /// than three decades.
    pub fit: Option<PowerLawFit>,
    pub fit_note: Option<String>,
}

pub fn cmd_map(
    grid: &CouplingGrid,
    rule: MatchRule,
    omega0: f64,
    oracle: Option<OracleSettings>,
) -> Result<MapReport, CliError> {
    let values = grid.values();
    if values.is_empty() {
        return Err(CliError::Usage("empty coupling grid".into()));
    }
    let points = values
        .iter()
        .map(|&lam| match oracle {
            Some(settings) => compare_purities(omega0, lam, rule, settings),
            None => map_closed_form(omega0, lam, rule),
        })
        .collect::<mehler_core::Result<Vec<_>>>()
        .context("map")?;
    let (fit, fit_note) = match purity_scaling_exponent(omega0, &values, rule) {
        Ok(fit) => (Some(fit), None),
        Err(e @ Error::GridTooNarrow(_)) => (None, Some(e.to_string())),
        Err(e) => return Err(e).context("map"),
    };
    Ok(MapReport {
        schema_version: SCHEMA_VERSION,
        command: "map",
        omega0,
        rule,
        points,
        fit,
        fit_note,
    })
}

impl Report for MapReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&[
            "lambda_cap",
            "rule",
            "lambda_asymptotic",
            "lambda_exact",
            "lambda_used",
            "e_c",
            "e_h_at_exact",
            "purity_h",
            "purity_c",
            "linear_entropy_c",
            "purity_h_asymptote",
        ]);
        for p in &self.points {
            let rule = match p.rule {
                MatchRule::Exact => "exact",
                MatchRule::Asymptotic => "asymptotic",
            };
            let mut row = vec![fmt_f64(p.lambda_cap), rule.to_string()];
            row.extend(
                [
                    p.lambda_asymptotic,
                    p.lambda_exact,
                    p.lambda_used,
                    p.e_c,
                    p.e_h_at_exact,
                    p.purity_h,
                    p.purity_c,
                    p.linear_entropy_c,
                    p.purity_h_asymptote,
                ]
                .map(fmt_f64),
            );
            t.push(row);
        }
        t
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub kind: SampleKind,
    pub width: f64,
    pub n: usize,
    pub seed: u64,
    pub path: String,
}

pub fn cmd_sample(
    kind: SampleKind,
    width: f64,
    n: usize,
    seed: u64,
    out: &Path,
) -> Result<SampleReport, CliError> {
    let values = synthetic_samples(kind, width, n, seed)?;
    let header = format!(
        "synthetic {} samples\nwidth {width:.16e}\nseed {seed}",
        kind_name(kind)
    );
    write_samples(out, &header, &values)?;
    Ok(SampleReport {
        schema_version: SCHEMA_VERSION,
        command: "sample",
        kind,
        width,
        n,
        seed,
        path: out.display().to_string(),
    })
}

impl Report for SampleReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&["kind", "width", "n", "seed", "path"]);
        t.push(vec![
            kind_name(self.kind).into(),
            fmt_f64(self.width),
            self.n.to_string(),
            self.seed.to_string(),
            self.path.clone(),
        ]);
        t
    }
}
