use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid vertex: {0}")]
    Vertex(String),

    #[error("not a code: {0}")]
    NotACode(String),

    #[error("budget exceeded: {what} needs {needed} steps, budget is {budget}")]
    Budget { what: String, needed: u128, budget: u64 },

    #[error("dense cap exceeded: scheme has {vertices} vertices, cap is {cap}")]
    DenseCap { vertices: u128, cap: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unavailable: {0}")]
    Unavailable(String),

    #[error("module decomposition failed: {0}")]
    Decomposition(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code for reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Config(_) => "config",
            Error::Vertex(_) => "vertex",
            Error::NotACode(_) => "not-a-code",
            Error::Budget { .. } => "budget",
            Error::DenseCap { .. } => "dense-cap",
            Error::Parse { .. } => "parse",
            Error::Unavailable(_) => "unavailable",
            Error::Decomposition(_) => "decomposition",
            Error::Hypothesis(_) => "hypothesis",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
