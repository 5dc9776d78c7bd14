//! Statistics over a finished [`GainLedger`](crate::attribution::GainLedger).
//!
//! Everything here is a pure function of the ledger (plus the corpus, for
//! sampled reach). Values are generic over [`Scalar`](crate::num::Scalar).
//! Rank ties are always broken by ascending country or category code.

mod correlation;
mod macro_area;
mod rank;
mod reach;
mod sgsi;

pub use correlation::{midranks, spearman, spearman_rho, Spearman};
pub use macro_area::{macro_area_ranges, AreaRange, MacroAreaMap, MacroAreaRanges, ReachMeasure};
pub use rank::{gains_to_benefits_ratio, rank_table, top_rank_frequencies, RankRow, RankTable};
pub use reach::{
    geographical_reach, reach_correlations, reach_report, sampled_reach, ReachIndex, ReachReport,
    ReachRow, SamplingConfig, DEFAULT_SEED,
};
pub use sgsi::{
    sgsi, sgsi_from_counts, sgsi_matrix, sgsi_matrix_with, sgsi_with, SgsiConfig, SgsiMatrix,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("unknown subject category {0:?}")]
    UnknownSubjectCategory(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least 2 observations, got {0}")]
    TooFewObservations(usize),
    #[error("non-finite value in rank correlation input")]
    NotFinite,
    #[error("top_n must be at least 1")]
    InvalidTopN,
    #[error("k must be at least 1")]
    InvalidK,
    #[error("subject categories without a macro-area: {0:?}")]
    UnmappedSubjectCategories(Vec<String>),
    #[error("no sampled reach for subject category {0:?}")]
    MissingSampledReach(String),
    #[error("subject category {sc:?} assigned to both {first:?} and {second:?}")]
    ConflictingMacroArea {
        sc: String,
        first: String,
        second: String,
    },
    #[error("sampling needs n_samples >= 1 and sample_size >= 1")]
    InvalidSampling,
    #[error("{path}: {message}")]
    MacroMapFile { path: String, message: String },
}
