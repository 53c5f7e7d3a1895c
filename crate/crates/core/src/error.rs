use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("model `{model}` has no charge `{label}`")]
    UnknownCharge { model: String, label: String },

    #[error("invalid model data: {0}")]
    MalformedModel(String),

    #[error("model fails check `{check}` (residual {residual:.3e})")]
    ModelCheck { check: String, residual: f64 },

    #[error("model `{0}` is not modular")]
    NotModular(String),

    #[error("operands belong to different models (`{0}` vs `{1}`)")]
    ModelMismatch(String, String),

    #[error("charge `{fermion}` of `{model}` is not a transparent fermion: {reason}")]
    NotFermion {
        model: String,
        fermion: String,
        reason: String,
    },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("Renyi order must be positive and different from 1, got {0}")]
    InvalidAlpha(f64),

    #[error("projection onto the vacuum sector has zero weight")]
    DegenerateProjection,

    #[error("partition of sector `{sector}` is not a complete orthogonal partition: {detail}")]
    BadPartition { sector: String, detail: String },

    #[error("charge `{0}` cannot be reached on this boundary")]
    Unreachable(String),

    #[error("charges {0:?} cannot fuse to the vacuum")]
    FusionForbidden(Vec<String>),

    #[error("brute-force enumeration of {size} terms exceeds the cap of {cap}")]
    Infeasible { size: f64, cap: f64 },

    #[error("numerical contract violated: {0}")]
    Numerical(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("unsupported document version {found} for `{kind}` (expected {expected})")]
    Version {
        kind: String,
        expected: u32,
        found: u32,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn charge(model: &str, label: &str) -> Self {
        Error::UnknownCharge {
            model: model.to_string(),
            label: label.to_string(),
        }
    }

    /// True for errors that signal failed input validation rather than a
    /// numerical failure or an I/O problem.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::ModelCheck { .. }
                | Error::NotModular(_)
                | Error::NotFermion { .. }
                | Error::MalformedModel(_)
                | Error::InvalidState(_)
                | Error::InvalidDistribution(_)
                | Error::BadPartition { .. }
                | Error::FusionForbidden(_)
                | Error::Parse { .. }
                | Error::Version { .. }
                | Error::Json(_)
                | Error::ModelMismatch(..)
        )
    }

    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Numerical(_) | Error::Infeasible { .. } | Error::DegenerateProjection | Error::Unreachable(_)
        )
    }
}
