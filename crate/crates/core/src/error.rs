use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not orthogonal (max |QQᵀ - I| = {defect:e})")]
    NotOrthogonal { defect: f64 },

    #[error("matrix is not symmetric (max |A_ij - A_ji| = {defect:e})")]
    NotSymmetric { defect: f64 },

    #[error("matrix is not skew-symmetric (max |A_ij + A_ji| = {defect:e})")]
    NotSkew { defect: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("trace of an empty product")]
    EmptyProduct,

    #[error("unknown group name `{0}`")]
    UnknownGroup(String),

    #[error("group {0} is continuous and has no finite element list")]
    ContinuousGroup(&'static str),

    #[error("group closure exceeded {cap} elements; generator table is corrupt")]
    ClosureOverflow { cap: usize },

    #[error("structural set closure exceeded {cap} members; seed is poorly chosen")]
    SetOverflow { cap: usize },

    #[error("transformation does not stabilize the set: member {member} has no match (nearest distance {distance:e})")]
    NotStabilized { member: String, distance: f64 },

    #[error("ambiguous match for member {member}: more than one candidate within tolerance")]
    AmbiguousMatch { member: String },

    #[error(
        "model for {group} is not symmetrized; Man-Goddard groups require a symmetrized model"
    )]
    Unsymmetrized { group: &'static str },

    #[error("model error: {0}")]
    Model(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("line {line}: {source}")]
    AtLine { line: u64, source: Box<Error> },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Whether this error is a data-validation failure (as opposed to a usage or parse error).
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotSymmetric { .. }
                | Error::NotSkew { .. }
                | Error::NonFinite(_)
                | Error::NotOrthogonal { .. }
                | Error::Unsymmetrized { .. }
                | Error::Model(_)
                | Error::Invalid(_)
        ) || matches!(self, Error::AtLine { source, .. } if source.is_validation())
    }
}
