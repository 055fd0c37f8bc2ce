//! Input parsing, command dispatch and report emission for the `dgloci`
//! command-line tool.

pub mod command;
pub mod emit;
pub mod input;

use thiserror::Error;

pub use command::{run_command, Command, CmMode, Overrides};
pub use emit::{emit, Format};
pub use input::{parse_input, print_document, Diagnostic, DgSpec, DocOptions, InputDocument};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(Diagnostic),
    #[error("{0}")]
    Usage(String),
    #[error("{op}: {source}")]
    Compute { op: String, source: dgloci::Error },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn compute(op: &str, source: dgloci::Error) -> Self {
        CliError::Compute { op: op.into(), source }
    }

    /// 0 success, 1 parse or validation, 2 unsupported input, 3 resource
    /// limit, 4 internal invariant.
    pub fn exit_code(&self) -> i32 {
        use dgloci::Error as E;
        match self {
            CliError::Input(_) | CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Compute { source, .. } => match source {
                E::Parse { .. } | E::Invalid(_) | E::RingMismatch(_) => 1,
                E::Unsupported(_) => 2,
                E::Resource(_) => 3,
                E::Internal(_) => 4,
            },
        }
    }
}
