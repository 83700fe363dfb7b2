//! Numeric tolerances shared across the crate.

/// Allowed deviation of a probability sum from 1.
pub const PROB_SUM: f64 = 1e-9;

/// Slack for algebraic identities between score functionals.
pub const SCORE_IDENTITY: f64 = 1e-12;

/// Geometric slack for containment, intersection and collinearity on curves.
pub const GEOMETRY: f64 = 1e-9;

/// Maximum prior difference for two systems to count as describing the same event.
pub const PRIOR_MATCH: f64 = 1e-9;

/// Residual allowed on the garbling equations.
pub const GARBLING: f64 = 1e-9;

/// Slack allowed on value comparisons between information systems.
pub const VALUE: f64 = 1e-9;
