use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported prime {0}: only 2, 3, 5 and 7 are supported")]
    UnsupportedPrime(u32),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u8, u8),

    #[error("elements or modules live over different algebras")]
    AlgebraMismatch,

    #[error("elements live in different sequence rings")]
    RingMismatch,

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid algebra map: {0}")]
    InvalidAlgebraMap(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid module map: {0}")]
    InvalidModuleMap(String),

    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("exhaustive scan over {needed} elements exceeds the bound {bound}")]
    ScanBoundExceeded { needed: u128, bound: u128 },

    #[error("guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("idempotent iteration did not stabilize within {0} steps")]
    LiftFailed(usize),

    #[error("left flatness certificate of T over S is missing")]
    FlatnessCertificateMissing,

    #[error("internal verification failed: {0}")]
    Verification(String),

    #[error("unknown scenario `{name}`; registered scenarios: {registered}")]
    UnknownScenario { name: String, registered: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {message}")]
    Definition { path: PathBuf, message: String },
}
