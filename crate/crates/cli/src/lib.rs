//! Batch driver: reads one input document, runs the matching frontend and
//! renders the report.

pub mod input;
pub mod report;
pub mod run;

use thiserror::Error;

pub use input::{parse_input, Format, InputDocument};
pub use report::ReportDocument;
pub use run::run_analysis;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("unsupported computation: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<simplecurrent::Error> for CliError {
    fn from(e: simplecurrent::Error) -> Self {
        use simplecurrent::Error as E;
        match e {
            E::BoundExceeded { .. } | E::InfiniteGroup | E::Overflow(_) => {
                CliError::Unsupported(e.to_string())
            }
            E::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
