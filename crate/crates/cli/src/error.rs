use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}: {message}")]
    Syntax { path: String, line: usize, message: String },
    #[error("{path}: {source}")]
    Validation {
        path: String,
        #[source]
        source: bkit_core::Error,
    },
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("unknown category `{0}`")]
    UnresolvedCategory(String),
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("{0}")]
    BadArity(String),
    #[error(transparent)]
    Core(#[from] bkit_core::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;
