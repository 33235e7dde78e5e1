use thiserror::Error;

/// Coarse failure class, used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Bad configuration or arguments (exit code 2).
    Config,
    /// Malformed or inconsistent input data (exit code 3).
    Data,
    /// Numerical failure (exit code 4).
    Numerical,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {name}={value} outside [{min}, {max}]")]
    ParamOutOfBounds {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("non-finite value in {channel} at index {index}")]
    NonFinite { channel: &'static str, index: usize },

    #[error(
        "requested power {requested:.6} W infeasible; max deliverable {max_deliverable:.6} W"
    )]
    PowerInfeasible { requested: f64, max_deliverable: f64 },

    #[error("rank-deficient regressors: no excitation along {direction}")]
    RankDeficient { direction: &'static str },

    #[error(
        "protocol config inconsistent: c-rate and pulse duration imply SOC step \
         {implied:.6}, configured {configured:.6}"
    )]
    InconsistentSocStep { implied: f64, configured: f64 },

    #[error("series length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("csv error at line {line}: {msg}")]
    Csv { line: usize, msg: String },

    #[error("identification failed: {0}")]
    Identification(String),

    #[error("filter error: {0}")]
    Filter(String),

    #[error("pipeline stage '{stage}' failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("toml error: {0}")]
    Toml(#[from] toml::de::Error),
}

impl Error {
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    pub fn stage(stage: &'static str, source: Error) -> Self {
        Error::Stage {
            stage,
            source: Box::new(source),
        }
    }

    pub fn category(&self) -> ErrorCategory {
        use Error::*;
        match self {
            ParamOutOfBounds { .. } | InvalidTable(_) | InvalidConfig(_)
            | InconsistentSocStep { .. } | Toml(_) => ErrorCategory::Config,
            NonFinite { .. } | LengthMismatch { .. } | Empty(_) | Dataset(_)
            | Csv { .. } | Io { .. } | Json(_) => ErrorCategory::Data,
            PowerInfeasible { .. } | RankDeficient { .. } | Identification(_)
            | Filter(_) => ErrorCategory::Numerical,
            Stage { source, .. } => source.category(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
