use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mehler_core::{MatchRule, SampleKind};

use crate::error::CliError;

#[derive(Debug, Clone, Parser)]
#[command(
    name = "mehler",
    version,
    about = "Occupation spectra and entanglement of a trapped particle pair"
)]
pub struct RunConfig {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Closed-form widths, spectrum and entropies of the harmonically coupled pair.
    Forward(ForwardArgs),
    /// Spectrum and entropies from a width pair or from two sample files.
    Invert(InvertArgs),
    /// Numerical diagonalization of a one-body density matrix.
    Oracle(OracleArgs),
    /// Energy-matched comparison with the inverse-square model.
    Map(MapArgs),
    /// Width estimate from a sample file.
    Fit(FitArgs),
    /// Write seeded synthetic Gaussian samples.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ForwardArgs {
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    /// Renyi orders.
    #[arg(long, value_delimiter = ',', default_value = "0.5,2,3")]
    pub q: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct InvertArgs {
    #[arg(
        long,
        requires = "omega_cap_s",
        required_unless_present = "pos_samples"
    )]
    pub omega_s: Option<f64>,
    #[arg(long, requires = "omega_s")]
    pub omega_cap_s: Option<f64>,
    #[arg(long, requires = "mom_samples", conflicts_with_all = ["omega_s", "omega_cap_s"])]
    pub pos_samples: Option<PathBuf>,
    #[arg(long, requires = "pos_samples")]
    pub mom_samples: Option<PathBuf>,
    /// Trap frequency used for the dual coupling pair.
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    /// Truncation tolerance on the occupation tail.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.5,2,3")]
    pub q: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Heisenberg,
    InverseSquare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Space {
    Position,
    Momentum,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub lambda_cap: Option<f64>,
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(long)]
    pub half_width: Option<f64>,
    /// Number of leading eigenvalues to report.
    #[arg(long, default_value_t = 11)]
    pub n_keep: usize,
    /// Kernel to diagonalize (heisenberg only).
    #[arg(long, value_enum, default_value_t = Space::Position)]
    pub space: Space,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    Exact,
    Asymptotic,
}

impl From<Rule> for MatchRule {
    fn from(rule: Rule) -> Self {
        match rule {
            Rule::Exact => MatchRule::Exact,
            Rule::Asymptotic => MatchRule::Asymptotic,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct MapArgs {
    /// Explicit coupling values.
    #[arg(long, value_delimiter = ',')]
    pub lambda_cap: Vec<f64>,
    /// Log grid lower end.
    #[arg(long, requires_all = ["to", "points"], conflicts_with = "lambda_cap")]
    pub from: Option<f64>,
    #[arg(long, requires = "from")]
    pub to: Option<f64>,
    #[arg(long, requires = "from")]
    pub points: Option<usize>,
    #[arg(long, value_enum, default_value_t = Rule::Asymptotic)]
    pub rule: Rule,
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    /// Also diagonalize the inverse-square state at every point.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub nodes: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Position,
    Momentum,
}

impl From<Kind> for SampleKind {
    fn from(kind: Kind) -> Self {
        match kind {
            Kind::Position => SampleKind::Position,
            Kind::Momentum => SampleKind::Momentum,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub samples: PathBuf,
    #[arg(long, value_enum)]
    pub kind: Kind,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Width the samples are drawn for (omega_s or Omega_s).
    #[arg(long)]
    pub width: f64,
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(usage(format!(
            "--{name} must be finite and positive, got {v}"
        )))
    }
}

fn q_grid(q: &[f64]) -> Result<(), CliError> {
    q.iter().try_for_each(|&v| positive("q", v))
}

fn nodes(n: Option<usize>) -> Result<(), CliError> {
    match n {
        Some(n) if n < 2 => Err(usage(format!("--nodes must be at least 2, got {n}"))),
        _ => Ok(()),
    }
}

impl RunConfig {
    /// Checks every flag against the preconditions of the operation it feeds.
    pub fn validate(&self) -> Result<(), CliError> {
        match &self.command {
            Command::Forward(a) => {
                positive("omega0", a.omega0)?;
                if !(a.lambda.is_finite() && a.lambda > -0.5) {
                    return Err(usage(format!(
                        "--lambda must exceed -0.5, got {}",
                        a.lambda
                    )));
                }
                q_grid(&a.q)
            }
            Command::Invert(a) => {
                positive("omega0", a.omega0)?;
                if let Some(t) = a.tol {
                    if !(t > 0.0 && t < 1.0) {
                        return Err(usage(format!("--tol must lie in (0, 1), got {t}")));
                    }
                }
                if let (Some(s), Some(c)) = (a.omega_s, a.omega_cap_s) {
                    positive("omega-s", s)?;
                    positive("omega-cap-s", c)?;
                }
                q_grid(&a.q)
            }
            Command::Oracle(a) => {
                positive("omega0", a.omega0)?;
                nodes(a.nodes)?;
                if let Some(h) = a.half_width {
                    positive("half-width", h)?;
                }
                if a.n_keep == 0 {
                    return Err(usage("--n-keep must be at least 1"));
                }
                match a.model {
                    Model::Heisenberg => match a.lambda {
                        Some(l) if l.is_finite() && l > -0.5 => Ok(()),
                        Some(l) => Err(usage(format!("--lambda must exceed -0.5, got {l}"))),
                        None => Err(usage("--model heisenberg needs --lambda")),
                    },
                    Model::InverseSquare => match a.lambda_cap {
                        Some(l) => positive("lambda-cap", l),
                        None => Err(usage("--model inverse-square needs --lambda-cap")),
                    },
                }
            }
            Command::Map(a) => {
                positive("omega0", a.omega0)?;
                nodes(a.nodes)?;
                if let (Some(lo), Some(hi)) = (a.from, a.to) {
                    positive("from", lo)?;
                    positive("to", hi)?;
                    if hi < lo {
                        return Err(usage("--to must not be below --from"));
                    }
                }
                a.lambda_cap
                    .iter()
                    .try_for_each(|&l| positive("lambda-cap", l))?;
                if a.lambda_cap.is_empty() && a.points.unwrap_or(0) == 0 {
                    return Err(usage(
                        "empty coupling grid: give --lambda-cap or --from/--to/--points",
                    ));
                }
                Ok(())
            }
            Command::Fit(_) => Ok(()),
            Command::Sample(a) => {
                positive("width", a.width)?;
                if a.n < 2 {
                    return Err(usage(format!("--n must be at least 2, got {}", a.n)));
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, clap::Error> {
        RunConfig::try_parse_from(std::iter::once("mehler").chain(args.iter().copied()))
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        RunConfig::command().debug_assert();
    }

    #[test]
    fn negative_coupling_parses() {
        let cfg = parse(&["forward", "--lambda", "-0.45"]).unwrap();
        assert!(cfg.validate().is_ok());
        let cfg = parse(&["forward", "--lambda", "-0.6"]).unwrap();
        assert!(matches!(cfg.validate(), Err(CliError::Usage(_))));
    }

    #[test]
    fn invert_needs_a_complete_source() {
        assert!(parse(&["invert", "--omega-s", "1"]).is_err());
        assert!(parse(&["invert", "--pos-samples", "a"]).is_err());
        assert!(parse(&[
            "invert",
            "--omega-s",
            "1",
            "--omega-cap-s",
            "2",
            "--pos-samples",
            "a",
            "--mom-samples",
            "b"
        ])
        .is_err());
        assert!(parse(&["invert"]).is_err());
        assert!(parse(&["invert", "--pos-samples", "a", "--mom-samples", "b"]).is_ok());
    }

    #[test]
    fn map_grid_checks() {
        let cfg = parse(&["map"]).unwrap();
        assert!(matches!(cfg.validate(), Err(CliError::Usage(_))));
        let cfg = parse(&["map", "--from", "1", "--to", "10", "--points", "0"]).unwrap();
        assert!(cfg.validate().is_err());
        let cfg = parse(&["map", "--lambda-cap", "2,3"]).unwrap();
        assert!(cfg.validate().is_ok());
        assert!(parse(&["map", "--from", "1"]).is_err());
    }

    #[test]
    fn oracle_needs_the_right_coupling() {
        assert!(parse(&["oracle", "--model", "heisenberg"])
            .unwrap()
            .validate()
            .is_err());
        assert!(
            parse(&["oracle", "--model", "inverse-square", "--lambda", "1"])
                .unwrap()
                .validate()
                .is_err()
        );
        assert!(parse(&[
            "oracle",
            "--model",
            "heisenberg",
            "--lambda",
            "1",
            "--nodes",
            "1"
        ])
        .unwrap()
        .validate()
        .is_err());
        assert!(
            parse(&["oracle", "--model", "inverse-square", "--lambda-cap", "1"])
                .unwrap()
                .validate()
                .is_ok()
        );
    }
}
