//! Scenario-driven harness around `entlink-core`: declarative TOML configs,
//! seeded Monte Carlo CHSH sessions, link-budget sweeps, relay planning, and
//! deterministic CSV/JSON reports.

use thiserror::Error;

pub mod plans;
pub mod report;
pub mod scenario;
pub mod session;
pub mod sweeps;

/// Harness-level failure, mapped onto process exit codes:
/// validation/infeasibility exit 2, numerical divergence exit 3.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid config: {0}")]
    Validation(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("numerical divergence: {0}")]
    Divergence(String),
    #[error("inconsistent report: {0}")]
    Inconsistent(String),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Divergence(_) => 3,
            _ => 2,
        }
    }
}

pub(crate) fn read_to_string(path: &std::path::Path) -> Result<String, HarnessError> {
    std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.display().to_string(),
        source,
    })
}
