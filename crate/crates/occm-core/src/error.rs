use thiserror::Error;

/// Errors surfaced by the mining/clustering pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("universe size mismatch: pattern is over {pattern} items, database over {db}")]
    UniverseMismatch { pattern: usize, db: usize },

    #[error("transaction {index} has width {got}, database universe has {expected} items")]
    TransactionWidth {
        index: usize,
        got: usize,
        expected: usize,
    },

    #[error("empty universe: a database needs at least one item")]
    EmptyUniverse,

    #[error("empty database: at least one transaction is required")]
    EmptyDatabase,

    #[error("patterns must be non-empty item sets")]
    EmptyPattern,

    #[error("item {item} out of range for universe of {universe} items")]
    ItemOutOfRange { item: usize, universe: usize },

    #[error("invalid support threshold: {reason}")]
    InvalidAlpha { reason: String },

    #[error("infeasible support threshold: resolved alpha {alpha} exceeds {n} transactions")]
    InfeasibleThreshold { alpha: usize, n: usize },

    #[error("universe of {items} items exceeds the supported capacity of {cap}")]
    CapacityExceeded { items: usize, cap: usize },

    #[error("invalid max pattern size {got}: must be in 1..={universe}")]
    InvalidMaxPatternSize { got: usize, universe: usize },

    #[error("cover has {got} transactions, the redundancy census needs at least 3")]
    CensusCoverTooSmall { got: usize },

    #[error("candidate pattern list is empty")]
    NoCandidatePatterns,

    #[error("cluster count theta must be at least 1")]
    InvalidTheta,

    #[error("brute-force enumeration of {subsets} subsets exceeds the cap of {cap}")]
    EnumerationCapExceeded { subsets: u128, cap: u128 },

    #[error("pattern of {size} items exceeds the exact Shapley cap of {cap}")]
    ShapleyCapExceeded { size: usize, cap: usize },

    #[error("{path}:{line}: {reason}")]
    Parse {
        path: String,
        line: usize,
        reason: String,
    },

    #[error("{path}: file contains no transactions")]
    EmptyFile { path: String },

    #[error("label count {labels} does not match {transactions} transactions")]
    LabelCountMismatch { labels: usize, transactions: usize },

    #[error("found {classes} label classes but theta is {theta}")]
    ClassCountMismatch { classes: usize, theta: usize },

    #[error("F1 requires an optimal solution, got status {status}")]
    SolutionNotOptimal { status: String },

    #[error("labels are required for F1 scoring")]
    MissingLabels,

    #[error("nothing to report: no rows")]
    EmptyReport,

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
