use thiserror::Error;

/// A single violated axiom found while validating input data.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub detail: String,
}

impl Violation {
    pub fn new(axiom: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            axiom: axiom.into(),
            detail: detail.into(),
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.axiom, self.detail)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid structure: {}", join(.0))]
    Invalid(Vec<Violation>),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("size guard exceeded: {what} would exceed {limit}")]
    SizeGuard { what: String, limit: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("fixture error in {location}: {message}")]
    Fixture { location: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn join(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    pub fn invalid(axiom: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Invalid(vec![Violation::new(axiom, detail)])
    }

    pub fn unknown(kind: &'static str, name: impl Into<String>) -> Self {
        Error::Unknown {
            kind,
            name: name.into(),
        }
    }

    /// Violations carried by an `Invalid` error, empty otherwise.
    pub fn violations(&self) -> &[Violation] {
        match self {
            Error::Invalid(v) => v,
            _ => &[],
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
