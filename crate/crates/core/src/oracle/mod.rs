//! Numerical verifiers for the properness-based results the rest of the
//! crate relies on: the mixture lemma for proper scores, its corollary for
//! convex sets of distributions, and minimality of the curve join.
//!
//! These are independent of the lattice code paths they check: they work by
//! grid search, direct evaluation and random sampling.

mod grid;

pub use grid::{for_each_composition, grid_min_g, refine_min_g, GridMinimum, SimplexGrid};

use crate::canonical::{canonicalize, dominates, join, CanonicalCurve};
use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::gen::{self, dirichlet_weights, seeded};
use crate::score::ScoreRule;
use crate::system::InfoSystem;
use crate::tol;

/// Default mixture-weight grid resolution.
pub const DEFAULT_RESOLUTION: usize = 200;

/// Allowed shortfall of `G(P, Q) - G(Q)` at a grid minimizer.
pub const COROLLARY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct CorollaryReport {
    /// Best point of the mixture-weight grid.
    pub minimizer: GridMinimum,
    /// The grid point after compass-search refinement; the check runs here.
    pub refined: GridMinimum,
    /// `min over sampled P of G(P, Q) - G(Q)` at the raw grid point.
    pub grid_slack: f64,
    /// `min over sampled P of G(P, Q) - G(Q)` at the refined point.
    pub min_slack: f64,
    pub samples: usize,
    pub passed: bool,
}

/// Locates `Q = argmin_K G` (grid search, then refinement) and checks
/// `G(P, Q) >= G(Q)` for `n_samples` random `P` in `K` plus every vertex of
/// `K`.
///
/// A grid point alone sits up to one grid step from the true minimizer,
/// which leaves slacks of order `1 / resolution`; the refinement brings that
/// down to round-off so the 1e-6 tolerance is meaningful.
pub fn corollary_check(
    score: &ScoreRule,
    vertices: &[Distribution],
    resolution: usize,
    n_samples: usize,
    seed: u64,
) -> Result<CorollaryReport> {
    let minimizer = grid_min_g(score, vertices, resolution)?;
    let refined = refine_min_g(score, vertices, &minimizer.weights, 1.0 / resolution as f64)?;
    let mut rng = seeded(seed);
    let mut probes: Vec<Distribution> = vertices.to_vec();
    for _ in 0..n_samples {
        let w = dirichlet_weights(&mut rng, vertices.len());
        probes.push(grid::mixture(vertices, &w));
    }
    let min_slack_at = |q: &Distribution| -> Result<f64> {
        let g_q = score.g_value(q)?;
        let mut worst = f64::INFINITY;
        for p in &probes {
            worst = worst.min(score.g_cross(p, q)? - g_q);
        }
        Ok(worst)
    };
    let grid_slack = min_slack_at(&minimizer.point)?;
    let min_slack = min_slack_at(&refined.point)?;
    Ok(CorollaryReport {
        minimizer,
        refined,
        grid_slack,
        min_slack,
        samples: probes.len(),
        passed: min_slack >= -COROLLARY_TOLERANCE,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem1Report {
    /// Largest `|G(R) - a G(P,R) - (1-a) G(Q,R)|` over the grid.
    pub max_decomposition_error: f64,
    /// Whether `G(R) >= G(Q)` held at every grid point.
    pub hypothesis_holds: bool,
    /// `min over a > 0 of G(P, R) - G(Q)`, when the hypothesis holds.
    pub min_conclusion_slack: Option<f64>,
    /// `G(P, R)` at the smallest positive `a`, approaching `G(P, Q)`.
    pub limit_value: f64,
    /// `G(P, Q) - G(Q)`, the conclusion itself.
    pub conclusion_slack: f64,
    pub passed: bool,
}

/// `a * x` with `0 * -inf` read as 0.
fn scaled(a: f64, x: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a * x
    }
}

/// Walks `R = aP + (1-a)Q` over `a = k / a_steps` and checks the
/// decomposition `G(R) = a G(P,R) + (1-a) G(Q,R)` to 1e-12. When
/// `G(R) >= G(Q)` holds across the grid it also checks `G(P,R) >= G(Q)` at
/// each positive `a`.
pub fn theorem1_check(
    score: &ScoreRule,
    p: &Distribution,
    q: &Distribution,
    a_steps: usize,
) -> Result<Theorem1Report> {
    p.check_dim(q)?;
    let a_steps = a_steps.max(1);
    let g_q = score.g_value(q)?;
    let mut max_err: f64 = 0.0;
    let mut hypothesis_holds = true;
    let mut conclusion_min = f64::INFINITY;
    let mut limit_value = f64::NAN;
    for k in 0..=a_steps {
        let a = k as f64 / a_steps as f64;
        let r = p.mix(q, a)?;
        let g_r = score.g_value(&r)?;
        let g_pr = score.g_cross(p, &r)?;
        let g_qr = score.g_cross(q, &r)?;
        let rhs = scaled(a, g_pr) + scaled(1.0 - a, g_qr);
        let err = if g_r == rhs { 0.0 } else { (g_r - rhs).abs() };
        max_err = max_err.max(err);
        if g_r < g_q - tol::SCORE_IDENTITY {
            hypothesis_holds = false;
        }
        if k > 0 {
            conclusion_min = conclusion_min.min(g_pr - g_q);
            if k == 1 {
                limit_value = g_pr;
            }
        }
    }
    let conclusion_slack = score.g_cross(p, q)? - g_q;
    let min_conclusion_slack = hypothesis_holds.then_some(conclusion_min);
    let passed = max_err <= tol::SCORE_IDENTITY
        && min_conclusion_slack.is_none_or(|s| s >= -tol::VALUE);
    Ok(Theorem1Report {
        max_decomposition_error: max_err,
        hypothesis_holds,
        min_conclusion_slack,
        limit_value,
        conclusion_slack,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LubReport {
    pub join: CanonicalCurve,
    pub join_dominates_inputs: bool,
    pub dominators_checked: usize,
    pub violations: usize,
}

impl LubReport {
    pub fn passed(&self) -> bool {
        self.join_dominates_inputs && self.violations == 0
    }
}

/// Generates common upper bounds of `P` and `Q` and checks that each one
/// dominates their join. The bounds are perfect information, the join itself,
/// and `n_dominators` random curves hulled with both inputs.
pub fn lub_minimality_check(
    p: &InfoSystem,
    q: &InfoSystem,
    n_dominators: usize,
    seed: u64,
) -> Result<LubReport> {
    for s in [p, q] {
        if s.n_hypotheses() != 2 {
            return Err(Error::NotBinary {
                hypotheses: s.n_hypotheses(),
            });
        }
    }
    p.check_compatible(q)?;
    let (a, b) = (canonicalize(p)?, canonicalize(q)?);
    let lub = join(&a, &b);
    let mut rng = seeded(seed);
    let mut bounds = vec![CanonicalCurve::perfect(), lub.clone()];
    for k in 0..n_dominators {
        let r = gen::curve(&mut rng, 2 + k % 7);
        bounds.push(join(&join(&r, &a), &b));
    }
    let violations = bounds
        .iter()
        .filter(|r| dominates(r, &a) && dominates(r, &b) && !dominates(r, &lub))
        .count();
    Ok(LubReport {
        join_dominates_inputs: dominates(&lub, &a) && dominates(&lub, &b),
        join: lub,
        dominators_checked: bounds.len(),
        violations,
    })
}
