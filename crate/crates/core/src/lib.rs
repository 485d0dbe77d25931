//! Exact computation of simple Hurwitz numbers by two independent routes:
//! topological recursion on the Lambert curve, and a character-sum oracle.
//!
//! The series and recursion layers are generic over [`Scalar`]; the aliases
//! below fix the exact rational instantiation used for all checks, plus a
//! floating-point one for quick approximate work.

pub mod burnside;
pub mod hurwitz;
pub mod kontsevich;
pub mod partitions;
pub mod properties;
pub mod scalar;
pub mod series;
pub mod toprec;

pub use burnside::{hurwitz_connected, HurwitzOracle, OracleError};
pub use hurwitz::{
    extract_hurwitz, h_series, verify_bm, BmReport, ExtractError, HSeries, HurwitzRecord, Method,
};
pub use kontsevich::{elsv_consistency, times_by_recursion, times_from_curve, TimesSequence};
pub use partitions::{partitions_of, Partition, PartitionError};
pub use scalar::{format_rational, parse_rational, Rational, Scalar};
pub use series::{Series, SeriesError, EXACT};
pub use toprec::{Conventions, LocalCurve, PoleForm, RecursionError, TopRec};

/// Exact series.
pub type QSeries = Series<Rational>;
/// Double-precision series.
pub type FSeries = Series<f64>;
/// Single-precision series.
pub type F32Series = Series<f32>;
/// Exact local curve data.
pub type QCurve = LocalCurve<Rational>;
/// Exact recursion engine.
pub type QTopRec = TopRec<Rational>;
/// Double-precision recursion engine.
pub type FTopRec = TopRec<f64>;
