use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(String),

    #[error("ragged row {row}: expected {expected} fields, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("non-numeric value {value:?} at row {row}, column {column}")]
    NonNumeric {
        row: usize,
        column: usize,
        value: String,
    },

    #[error("fewer than 2 channels")]
    TooFewChannels,

    #[error("fewer than 2 rows")]
    TooFewRows,

    #[error("non-positive price {value} at row {row}, column {column}")]
    NonPositivePrice { row: usize, column: usize, value: f64 },

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("node {node} left the admissible range with value {value} at iteration {iteration}")]
    Divergent {
        node: usize,
        iteration: usize,
        value: f64,
    },

    #[error("covariance block {block} is not positive semi-definite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { block: usize, min_eigenvalue: f64 },

    #[error("reference pair already present")]
    ReferenceAlreadyPresent,

    #[error("insufficient data: occupancy condition fails at grid size 2")]
    InsufficientData,

    #[error("expansion undefined: no cell holds two distinct points")]
    ExpansionUndefined,

    #[error("correlation decay time needs a positive expansion rate, got {0}")]
    NonPositiveRate(f64),

    #[error("no abrupt change larger than {gap} in the ordered values; use the reference method")]
    NoAbruptChange { gap: f64 },

    #[error("missing reference pair")]
    MissingReferencePair,

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("adjacency is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),

    #[error("adjacency has a self-loop at node {0}")]
    SelfLoop(usize),

    #[error("pair ({left}, {right}): {source}")]
    Pair {
        left: String,
        right: String,
        #[source]
        source: Box<Error>,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
