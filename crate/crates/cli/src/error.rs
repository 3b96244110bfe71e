use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{what} file, line {line} column {column}: {message}")]
    Json {
        what: &'static str,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] intertwine::Error),

    /// Verification ran but the recomputed spectrum disagrees.
    #[error("{0}")]
    Mismatch(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Field {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn json(what: &'static str, e: serde_json::Error) -> Self {
        CliError::Json {
            what,
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }

    /// 1 I/O, 2 parse, 3 numeric failure, 4 precondition violation.
    pub fn exit_code(&self) -> i32 {
        use intertwine::Error as E;
        match self {
            CliError::Io { .. } => 1,
            CliError::Json { .. } | CliError::Field { .. } => 2,
            CliError::Usage(_) => 4,
            CliError::Mismatch(_) => 3,
            CliError::Core(e) => match e {
                E::SingularMatrix(_)
                | E::NonConvergence { .. }
                | E::DegreeExceedsOrder { .. }
                | E::JetMismatch(_)
                | E::ImageCollision { .. }
                | E::InconsistentStructure { .. } => 3,
                E::DimensionMismatch { .. }
                | E::Pole { .. }
                | E::ContourViolation(_)
                | E::Precondition(_)
                | E::InvalidGroupElement { .. }
                | E::NotInDisk { .. }
                | E::InvalidSpec(_)
                | E::EigenvaluesRequired
                | E::Unsupported(_) => 4,
            },
        }
    }
}
