//! Batch front end for `mehler-core`: every command returns a serializable
//! report that renders as JSON (17 significant digits) or CSV.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod samples;

pub use commands::{
    cmd_fit, cmd_forward, cmd_invert, cmd_map, cmd_oracle, cmd_sample, CouplingGrid, InvertSource,
    OracleRequest, Report,
};
pub use config::{Command, Format, RunConfig};
pub use error::CliError;

use mehler_core::mapping::OracleSettings;

fn render<R: Report>(report: &R, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => output::to_json(report),
        Format::Csv => report.table().to_csv(),
    }
}

/// Validates the configuration, runs the command and renders its report.
pub fn execute(config: &RunConfig) -> Result<String, CliError> {
    config.validate()?;
    let format = config.format;
    match &config.command {
        Command::Forward(a) => render(&cmd_forward(a.omega0, a.lambda, &a.q)?, format),
        Command::Invert(a) => {
            let source = match (&a.pos_samples, &a.mom_samples, a.omega_s, a.omega_cap_s) {
                (Some(p), Some(m), _, _) => InvertSource::Samples {
                    position: p.clone(),
                    momentum: m.clone(),
                },
                (_, _, Some(omega_s), Some(omega_cap_s)) => InvertSource::Widths {
                    omega_s,
                    omega_cap_s,
                },
                _ => {
                    return Err(CliError::Usage(
                        "invert needs a width pair or two sample files".into(),
                    ))
                }
            };
            render(&cmd_invert(&source, a.omega0, a.tol, &a.q)?, format)
        }
        Command::Oracle(a) => {
            let coupling = match a.model {
                config::Model::Heisenberg => a.lambda,
                config::Model::InverseSquare => a.lambda_cap,
            };
            let req = OracleRequest {
                model: a.model,
                omega0: a.omega0,
                coupling: coupling.unwrap_or(f64::NAN),
                nodes: a.nodes,
                half_width: a.half_width,
                n_keep: a.n_keep,
                space: a.space,
            };
            render(&cmd_oracle(&req)?, format)
        }
        Command::Map(a) => {
            let grid = match (a.from, a.to, a.points) {
                (Some(from), Some(to), Some(points)) => CouplingGrid::Log { from, to, points },
                _ => CouplingGrid::Values(a.lambda_cap.clone()),
            };
            let oracle = a.oracle.then(|| {
                let mut settings = OracleSettings::default();
                if let Some(n) = a.nodes {
                    settings.min_nodes = n;
                }
                settings
            });
            render(&cmd_map(&grid, a.rule.into(), a.omega0, oracle)?, format)
        }
        Command::Fit(a) => render(&cmd_fit(&a.samples, a.kind.into())?, format),
        Command::Sample(a) => render(
            &cmd_sample(a.kind.into(), a.width, a.n, a.seed, &a.out)?,
            format,
        ),
    }
}
