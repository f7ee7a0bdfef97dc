use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: malformed rows\n{}", format_rows(.rows))]
    MalformedRows {
        path: PathBuf,
        rows: Vec<(usize, String)>,
    },

    #[error("{context}: {source}")]
    Core {
        context: &'static str,
        source: mehler_core::Error,
    },

    #[error("output: {0}")]
    Output(String),
}

fn format_rows(rows: &[(usize, String)]) -> String {
    rows.iter()
        .map(|(line, text)| format!("  line {line}: {text:?}"))
        .collect::<Vec<_>>()
        .join("\n")
}

impl CliError {
    /// 2 for anything the caller can fix by changing the input, 3 when the
    /// numerics failed on valid input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core { source, .. } if source.is_numerical() => 3,
            CliError::Output(_) => 1,
            _ => 2,
        }
    }
}

pub(crate) trait Context<T> {
    fn context(self, context: &'static str) -> Result<T, CliError>;
}

impl<T> Context<T> for mehler_core::Result<T> {
    fn context(self, context: &'static str) -> Result<T, CliError> {
        self.map_err(|source| CliError::Core { context, source })
    }
}
