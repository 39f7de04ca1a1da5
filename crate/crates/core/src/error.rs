use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("element `{element}` does not belong to hypergroup `{hypergroup}`")]
    Domain { element: String, hypergroup: String },

    #[error("hypergroup mismatch: expected `{expected}`, got element from another hypergroup")]
    Mismatch { expected: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("cannot parse element `{input}`: {reason}")]
    ParseElement { input: String, reason: String },

    /// The structure constants violate a hypergroup axiom in a way that makes
    /// the requested quantity undefined.
    #[error("structural failure: {0}")]
    Structural(String),

    #[error("certificate failure at {witness}: {reason}")]
    Certificate { witness: String, reason: String },

    #[error("group spec: {0}")]
    GroupSpec(String),

    #[error("group order exceeds cap of {cap}")]
    OrderCap { cap: usize },

    #[error("group table invalid: {0}")]
    GroupValidation(String),

    #[error("cache: {0}")]
    Cache(#[from] CacheError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("format version {found} is not supported (expected {expected})")]
    Version { found: u32, expected: u32 },
    #[error("descriptor hash mismatch: file has {found}, hypergroup has {expected}")]
    Hash { found: String, expected: String },
    #[error("corrupt cache file: {0}")]
    Corrupt(String),
    #[error("nothing to store: cache is empty")]
    Empty,
}
