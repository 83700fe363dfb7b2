//! Proper scoring rules, canonical curves and lattice fusion for
//! information systems: joint distributions over hypotheses and
//! observations, valued by the expected score of their posteriors.

pub mod canonical;
pub mod dist;
pub mod error;
pub mod fusion;
pub mod gen;
pub mod numfmt;
pub mod oracle;
pub mod score;
pub mod system;
pub mod tol;

pub use canonical::{CanonicalCurve, Comparison, LikelihoodVector, Point};
pub use dist::Distribution;
pub use error::{Error, Result};
pub use fusion::{Coupling, ScoreReport, ValueReport};
pub use score::{PayoffMatrix, ScoreRule};
pub use system::InfoSystem;
