//! Error types for every fallible operation in the crate.

use thiserror::Error;

/// Construction or combination of sequences failed.
#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("sequence must contain at least one point")]
    Empty,
    #[error("point dimension must be at least 1")]
    ZeroDimension,
    #[error("value count {count} is not a multiple of dimension {dim}")]
    RaggedValues { count: usize, dim: usize },
    #[error("non-finite value at flat index {index}")]
    NonFinite { index: usize },
    #[error("cannot concatenate an empty list of sequences")]
    EmptyConcat,
    #[error("sequence {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        found: usize,
        expected: usize,
    },
}

/// Dynamic-time-warping alignment failed before any cost was computed.
#[derive(Debug, Error)]
pub enum DtwError {
    #[error("cannot align dimension {a} against dimension {b}")]
    DimensionMismatch { a: usize, b: usize },
    #[error(
        "window {window} cannot bridge lengths {len_a} and {len_b}; \
         it must be at least their difference"
    )]
    InfeasibleWindow {
        window: usize,
        len_a: usize,
        len_b: usize,
    },
}

/// Network construction or training failed.
#[derive(Debug, Error)]
pub enum SomError {
    #[error("grid must have at least one row and one column")]
    EmptyGrid,
    #[error("epochs must be at least 1")]
    ZeroEpochs,
    #[error("learning rate {0} is outside (0, 1)")]
    InvalidLearningRate(f64),
    #[error("neighborhood radius {radius} is outside (0, {max}]")]
    InvalidRadius { radius: f64, max: f64 },
    #[error("a {rows}x{cols} grid needs {needed} pairwise-distinct patterns, found only {found}")]
    NotEnoughDistinctPatterns {
        rows: usize,
        cols: usize,
        needed: usize,
        found: usize,
    },
    #[error("{anchors} anchors exceed the {units} units of a {rows}x{cols} grid")]
    TooManyAnchors {
        anchors: usize,
        units: usize,
        rows: usize,
        cols: usize,
    },
    #[error("anchor index {index} is out of range for {patterns} patterns")]
    AnchorOutOfRange { index: usize, patterns: usize },
    #[error("no training patterns were provided")]
    NoPatterns,
    #[error("pattern dimension {pattern} differs from network dimension {network}")]
    DimensionMismatch { pattern: usize, network: usize },
    #[error("unit count {units} does not match grid {rows}x{cols}")]
    ShapeMismatch {
        units: usize,
        rows: usize,
        cols: usize,
    },
    #[error(transparent)]
    Dtw(#[from] DtwError),
}

/// Matrix-profile computation or motif extraction failed.
#[derive(Debug, Error)]
pub enum MotifError {
    #[error("subsequence window must be at least 1")]
    ZeroWindow,
    #[error("series of length {n} is too short for window {m}; need at least {min}")]
    SeriesTooShort { n: usize, m: usize, min: usize },
    #[error("matrix profile requires a univariate series, got dimension {0}")]
    NotUnivariate(usize),
}

/// Loading or preparing a labeled dataset failed.
#[derive(Debug, Error)]
pub enum UcrError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} contains no data rows")]
    EmptyFile { path: String },
    #[error("{path}: row {row} has {found} values, expected {expected}")]
    RaggedRow {
        path: String,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("{path}: row {row}: {token:?} is not a finite number")]
    BadNumber {
        path: String,
        row: usize,
        token: String,
    },
    #[error("{path}: row {row} has a class token but no values")]
    MissingValues { path: String, row: usize },
    #[error("no sequences remain after filtering")]
    EmptyAfterFilter,
    #[error("sample size {requested} exceeds the {available} sequences available")]
    SampleTooLarge { requested: usize, available: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Report construction or rendering failed.
#[derive(Debug, Error)]
pub enum ReportError {
    #[error("matrix shape {got_rows}x{got_cols} does not match the {rows}x{cols} network")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("failed to write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Som(#[from] SomError),
}
