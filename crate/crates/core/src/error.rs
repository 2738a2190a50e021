use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DzetaError {
    #[error("pole: {0}")]
    Pole(String),
    #[error("domain: {0}")]
    Domain(String),
    #[error("singular locus {0}")]
    Singular(String),
    #[error("singular path: {0}")]
    SingularPath(String),
    #[error("convergence: {0}")]
    Convergence(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

impl DzetaError {
    /// Short machine-readable tag, stable across versions.
    pub fn kind(&self) -> &'static str {
        match self {
            DzetaError::Pole(_) => "pole",
            DzetaError::Domain(_) => "domain",
            DzetaError::Singular(_) => "singular",
            DzetaError::SingularPath(_) => "singular_path",
            DzetaError::Convergence(_) => "convergence",
            DzetaError::InsufficientData(_) => "insufficient_data",
        }
    }
}

pub type Result<T> = std::result::Result<T, DzetaError>;
