// SPDX-License-Identifier: MIT

use std::path::PathBuf;

use frwt_core::FrwtError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Core(#[from] FrwtError),

    #[error("unknown suite {name:?}; valid suites: {valid}")]
    UnknownSuite { name: String, valid: String },

    #[error("{failed} of {total} checks failed")]
    VerifyFailed { failed: usize, total: usize },
}

impl CliError {
    /// Process exit code.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io { .. } => 2,
            CliError::Core(e) => match e {
                FrwtError::DeltaKernel { .. } | FrwtError::DomainMismatch => 3,
                FrwtError::InadmissibleWavelet { .. } => 4,
                FrwtError::UnknownWavelet(_)
                | FrwtError::InvalidParameter(_)
                | FrwtError::InvalidGrid(_)
                | FrwtError::InvalidAnglePair { .. } => 2,
                _ => 1,
            },
            CliError::VerifyFailed { .. } => 1,
            CliError::UnknownSuite { .. } => 5,
        }
    }

    /// Extra lines printed after the main message.
    pub fn details(&self) -> Vec<String> {
        match self {
            CliError::Core(FrwtError::DeltaKernel { .. }) => vec![
                "orders that are multiples of pi are computed exactly by the identity/parity dispatch: \
                 use `--engine fast`, or `--engine direct` without `--out-grid`"
                    .to_string(),
            ],
            CliError::Core(FrwtError::DomainMismatch) => {
                vec!["at identity/parity orders the output grid must be the input grid or its reflection".to_string()]
            }
            CliError::Core(FrwtError::InadmissibleWavelet { trace }) => {
                let mut v = vec!["admissibility integral by lower cutoff u_min:".to_string()];
                v.extend(trace.iter().map(|(u, c)| format!("  u_min {u:.3e}  C {c:.6e}")));
                v
            }
            _ => Vec::new(),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn io_err(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}
