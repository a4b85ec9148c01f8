//! Exact Lorenz curves and inequality indices.
//!
//! Distributions come in two flavours: grouped head-count data
//! ([`GroupedDistribution`]) whose Lorenz curve is an exact kink list, and
//! analytic families ([`AnalyticDistribution`]) with closed-form Lorenz
//! functions. From either one can compute the Kolkata index `k` (the fixed
//! point of the complementary Lorenz function), its normalized form
//! `2k - 1`, the Gini and Pietra indices, Lorenz dominance between curves,
//! the Hirsch index of a citation profile and the power-law exponent of the
//! upper tail beyond `k`.
//!
//! ```
//! use ineq_core::{GroupedDistribution, indices};
//!
//! let dist = GroupedDistribution::from_raw_samples(&[20.0, 20.0, 30.0, 50.0]).unwrap();
//! let k = indices::kolkata_discrete(&dist);
//! assert!((k - 7.0 / 12.0).abs() < 1e-12);
//! ```

pub mod distributions;
pub mod dominance;
mod error;
pub mod hindex;
pub mod indices;
pub mod io;
pub mod lorenz;
mod numeric;
pub mod tailfit;

pub use distributions::{AnalyticDistribution, Distribution, Family, GroupedDistribution, IncomeGroup, LorenzSegment};
pub use dominance::{DominanceResult, Verdict};
pub use error::{Error, Result};
pub use hindex::CitationProfile;
pub use indices::{Coincidence, IndexKind, IndexReport};
pub use lorenz::{CurvePoint, LorenzCurve};
pub use tailfit::TailFit;
