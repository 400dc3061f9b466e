use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("diagonals ({0}, {1}, {2}) are not in the interior of the moment polytope")]
    NotInterior(f64, f64, f64),

    #[error("vertices v1, v3, v5 are collinear; no standard frame exists")]
    DegenerateFrame,

    #[error("fan triangle {index} with sides ({a}, {b}, {c}) violates the strict triangle inequality")]
    TriangleInequalityViolated { index: usize, a: f64, b: f64, c: f64 },

    #[error("a fan polygon with {n} sides needs {expected} diagonals and angles, got {diagonals} and {angles}")]
    FanArity {
        n: usize,
        expected: usize,
        diagonals: usize,
        angles: usize,
    },

    #[error("{0} is not a trefoil class; lemma filters need chirality and curl of ±1")]
    InvalidTarget(String),

    #[error("unknown region `{0}`")]
    UnknownRegion(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("report contains no usable samples")]
    NoSamples,

    #[error("estimate upper 95% edge {ci_upper} is not below the proven bound {bound}")]
    BoundViolated { ci_upper: f64, bound: f64 },

    #[error("failed to start worker pool: {0}")]
    ThreadPool(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
