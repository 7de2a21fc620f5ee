use thiserror::Error;

use crate::polytope::Diagnostic;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vector {index} is zero")]
    ZeroVector { index: usize },

    #[error("circuit enumeration limited to {max} vectors, got {len}")]
    TooManyVectors { len: usize, max: usize },

    #[error("dimension {0} is outside the supported range 1..={max}", max = crate::gf2::MAX_DIM)]
    UnsupportedDimension(usize),

    #[error("cyclic polytope C^{n}({m}) needs more than {n} points (and n >= 2)")]
    BadCyclicParameters { n: usize, m: usize },

    #[error("invalid polytope: {}", join_diagnostics(.0))]
    InvalidPolytope(Vec<Diagnostic>),

    #[error("{face:?} is not a face of the polytope")]
    NotAFace { face: Vec<usize> },

    #[error("cannot truncate {face:?}: only faces of codimension >= 2 can be truncated")]
    NotTruncatable { face: Vec<usize> },

    #[error("vector {index} ({value}) does not fit in dimension {n}")]
    VectorTooWide { index: usize, value: u32, n: usize },

    #[error("oriented map requires odd vectors, vector {index} ({value}) is even")]
    EvenVectorInOrientedMap { index: usize, value: u32 },

    #[error("map has dimension {map_dim} and {map_len} vectors, polytope has dimension {dim} and {facets} facets")]
    MapMismatch {
        map_dim: usize,
        map_len: usize,
        dim: usize,
        facets: usize,
    },

    #[error("preset {preset} does not fit: {reason}")]
    PresetMismatch { preset: String, reason: String },

    #[error("no resolving vector exists for face {face:?}")]
    NoVectorFound { face: Vec<usize> },

    #[error("certificate failed self-check: {0}")]
    CertificateFailed(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed JSON: {0}")]
    Parse(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("invariant violated in field `{field}`: {message}")]
    Invariant { field: String, message: String },
}

fn join_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
