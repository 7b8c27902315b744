//! Self-organizing maps over variable-length, multi-dimensional time series,
//! with dynamic time warping as the distance and alignment backbone.
//!
//! The crate covers a complete motif-exploration pipeline:
//!
//! 1. obtain motif centers, either synthetically ([`synth`]) or by
//!    matrix-profile extraction from a long series ([`motif`], fed by
//!    [`ucr`] ingestion);
//! 2. train a map whose units are themselves variable-length sequences
//!    ([`som`]), comparing and adapting through warping alignments
//!    ([`dtw`]);
//! 3. inspect the trained map through neighbor-distance and winner-count
//!    matrices rendered as SVG and CSV ([`report`]).
//!
//! Every seeded entry point is deterministic: the same inputs, seed, and
//! thread count or not, produce identical results.

pub mod doc;
pub mod dtw;
pub mod error;
pub mod motif;
pub mod report;
pub mod series;
pub mod som;
pub mod synth;
pub mod ucr;

pub use doc::{MotifDocument, MotifEntry};
pub use dtw::{dtw, dtw_distance, path_groups, AlignmentPath, DtwResult};
pub use error::{DtwError, MotifError, ReportError, SeriesError, SomError, UcrError};
pub use motif::{
    exclusion_zone, extract_motifs, matrix_profile, motif_centers, MatrixProfile, Motif, MotifSet,
    RADIUS_FACTOR,
};
pub use report::{render, u_matrix, winner_matrix, RenderedFiles, UMatrix, WinnerMatrix};
pub use series::{concatenate, znormalize, LongSeries, Sequence, FLAT_SIGMA};
pub use som::{
    adapt_unit, anchor_fill_order, default_radius, SomNetwork, TrainingConfig, TrainingTrace,
    ADAPTATION_CUTOFF, DEFAULT_ALPHA, RADIUS_FLOOR,
};
pub use synth::{generate, MotifCluster};
pub use ucr::{load_ucr, prepare, LabeledDataset};
