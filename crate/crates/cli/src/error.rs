use std::path::PathBuf;

/// Exit status for rejected input.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit status for a failed numerical procedure.
pub const EXIT_NUMERICAL: i32 = 3;
/// Exit status for filesystem errors.
pub const EXIT_IO: i32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Config { path: PathBuf, line: usize, column: usize, message: String },
    #[error("{path}:{line}: {message}")]
    SampleLine { path: PathBuf, line: usize, message: String },
    #[error("measure `{measure}` needs --{param}")]
    MissingParameter { measure: &'static str, param: &'static str },
    #[error("{0}")]
    Validation(String),
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: riskcurves_core::Error,
    },
}

impl CliError {
    pub fn core(context: impl Into<String>, source: riskcurves_core::Error) -> Self {
        CliError::Core { context: context.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Core { source, .. } if source.is_numerical() => EXIT_NUMERICAL,
            _ => EXIT_VALIDATION,
        }
    }
}
