//! Citation-based benefit and gain accounting.
//!
//! A publication produced in a source country generates one *benefit* per
//! citation it receives. Every distinct country on the citing publication's
//! affiliation list earns one *gain* from that benefit. This crate ingests a
//! bibliographic corpus, normalizes citing countries, builds the benefit and
//! gain ledgers and derives the statistics on top of them: country rankings,
//! geographical reach per subject category, and the Scientific Gain
//! Specialization Index (SGSI).
//!
//! Metric code is generic over the floating-point scalar (see [`Scalar`]);
//! the aliases below fix it to `f64`, which is what the CLI uses.

pub mod attribution;
pub mod corpus;
pub mod geo;
pub mod metrics;
pub mod num;
pub mod report;
pub mod synth;

pub use attribution::{build_ledger, GainLedger, MadeInConfig};
pub use corpus::{load_corpus, Corpus, Publication};
pub use geo::GeoRuleSet;
pub use num::Scalar;

/// SGSI matrix over `f64`.
pub type SgsiMatrix = metrics::SgsiMatrix<f64>;
/// SGSI matrix over `f32`.
pub type SgsiMatrix32 = metrics::SgsiMatrix<f32>;
/// Country ranking table over `f64`.
pub type RankTable = metrics::RankTable<f64>;
/// Per-SC reach report over `f64`.
pub type ReachReport = metrics::ReachReport<f64>;
/// Spearman result over `f64`.
pub type Spearman = metrics::Spearman<f64>;
