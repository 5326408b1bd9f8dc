use std::io;
use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    /// Bad content at a known location of an input file.
    #[error("{origin}:{line}: {message}")]
    Parse { origin: String, line: u64, message: String },

    #[error("{0}")]
    Invalid(String),

    #[error("nothing to plot: {0}")]
    EmptyPlot(&'static str),

    #[error(transparent)]
    Core(#[from] pareto_judge_core::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn parse(origin: &str, line: u64, message: impl Into<String>) -> Self {
        Error::Parse { origin: origin.to_string(), line, message: message.into() }
    }
}
