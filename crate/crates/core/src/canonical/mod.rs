//! Canonical curves of binary-hypothesis systems and the lattice built on them.
//!
//! Each observation `i` contributes the likelihood vector
//! `(P(i | not e), P(i | e))`. Sorting these by decreasing likelihood ratio and
//! accumulating them traces a concave curve from `(0,0)` to `(1,1)`; the
//! region between the curve and the diagonal is the canonical region. One
//! system dominates another (is at least as valuable under every proper
//! score) exactly when its region contains the other's, so:
//!
//! * join (minimal composition) is the upper concave envelope of both curves,
//! * meet (common information) is their pointwise minimum,
//! * dominance is vertex containment.
//!
//! Axis convention: `x` is cumulative `P(i | not e)` (hypothesis index 1) and
//! `y` is cumulative `P(i | e)` (hypothesis index 0), which puts the curve
//! above the diagonal.

mod curve;

pub use curve::{CanonicalCurve, Point};

use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::system::{check_prior, default_labels, InfoSystem};
use crate::tol;

/// Per-observation likelihoods under the two hypotheses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LikelihoodVector {
    /// `P(i | e)`
    pub p_e: f64,
    /// `P(i | not e)`
    pub p_not_e: f64,
}

impl LikelihoodVector {
    /// Orders by decreasing `p_e / p_not_e`, with a zero denominator first.
    fn ratio_cmp(&self, other: &Self) -> std::cmp::Ordering {
        (other.p_e * self.p_not_e).total_cmp(&(self.p_e * other.p_not_e))
    }
}

fn require_binary(system: &InfoSystem) -> Result<()> {
    if system.n_hypotheses() != 2 {
        return Err(Error::NotBinary {
            hypotheses: system.n_hypotheses(),
        });
    }
    Ok(())
}

/// Likelihood vectors of every observation with positive marginal.
pub fn likelihood_vectors(system: &InfoSystem) -> Result<Vec<LikelihoodVector>> {
    require_binary(system)?;
    let prior = system.prior();
    Ok((0..system.n_observations())
        .map(|i| LikelihoodVector {
            p_e: system.joint(0, i) / prior[0],
            p_not_e: system.joint(1, i) / prior[1],
        })
        .filter(|t| t.p_e > 0.0 || t.p_not_e > 0.0)
        .collect())
}

/// The canonical curve of a binary system.
pub fn canonicalize(system: &InfoSystem) -> Result<CanonicalCurve> {
    let mut vectors = likelihood_vectors(system)?;
    vectors.sort_by(LikelihoodVector::ratio_cmp);
    let mut points = Vec::with_capacity(vectors.len() + 1);
    let mut acc = Point::ORIGIN;
    points.push(acc);
    for t in &vectors {
        acc = Point::new(acc.x + t.p_not_e, acc.y + t.p_e);
        points.push(acc);
    }
    // the running sums end at (1,1) up to rounding
    if let Some(last) = points.last_mut() {
        *last = Point::ONE;
    }
    for p in &mut points {
        p.x = p.x.clamp(0.0, 1.0);
        p.y = p.y.clamp(0.0, 1.0);
    }
    Ok(CanonicalCurve::from_hull(points))
}

/// Rebuilds a binary system from a curve and a prior: one observation per
/// segment, labelled `s1..sk`.
pub fn reconstruct(curve: &CanonicalCurve, prior: &Distribution) -> Result<InfoSystem> {
    if prior.len() != 2 {
        return Err(Error::DegeneratePrior);
    }
    check_prior(prior)?;
    let (mut row_e, mut row_not_e) = (Vec::new(), Vec::new());
    for w in curve.vertices().windows(2) {
        row_e.push(prior[0] * (w[1].y - w[0].y).max(0.0));
        row_not_e.push(prior[1] * (w[1].x - w[0].x).max(0.0));
    }
    let labels = default_labels("s", row_e.len());
    InfoSystem::new(default_labels("h", 2), labels, vec![row_e, row_not_e])
}

/// Least upper bound: the upper concave envelope of both curves.
pub fn join(a: &CanonicalCurve, b: &CanonicalCurve) -> CanonicalCurve {
    let points = a.vertices().iter().chain(b.vertices()).copied().collect();
    CanonicalCurve::from_hull(points)
}

/// Greatest lower bound: the pointwise minimum of both curves.
pub fn meet(a: &CanonicalCurve, b: &CanonicalCurve) -> CanonicalCurve {
    let mut xs: Vec<f64> = a.vertices().iter().chain(b.vertices()).map(|v| v.x).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let lower = |x: f64| a.eval(x).min(b.eval(x));
    let mut points = vec![Point::ORIGIN];
    for (k, &x) in xs.iter().enumerate() {
        points.push(Point::new(x, lower(x)));
        if let Some(&next) = xs.get(k + 1) {
            let d0 = a.eval(x) - b.eval(x);
            let d1 = a.eval(next) - b.eval(next);
            if d0 * d1 < 0.0 {
                let cx = x + (next - x) * d0 / (d0 - d1);
                points.push(Point::new(cx, lower(cx)));
            }
        }
    }
    CanonicalCurve::from_hull(points)
}

/// `a >= b`: every vertex of `b` lies on or below `a` (within 1e-9).
pub fn dominates(a: &CanonicalCurve, b: &CanonicalCurve) -> bool {
    b.vertices()
        .iter()
        .all(|v| v.y <= a.eval(v.x) + tol::GEOMETRY)
}

/// Mutual dominance, which also means equal vertex lists up to tolerance.
pub fn curve_equal(a: &CanonicalCurve, b: &CanonicalCurve) -> bool {
    dominates(a, b) && dominates(b, a)
}

/// Largest vertical gap between the two curves, measured at all vertices.
pub fn curve_distance(a: &CanonicalCurve, b: &CanonicalCurve) -> f64 {
    a.vertices()
        .iter()
        .map(|v| (v.y - b.eval(v.x)).abs())
        .chain(b.vertices().iter().map(|v| (v.y - a.eval(v.x)).abs()))
        .fold(0.0, f64::max)
}

/// Perfect information for the given prior.
pub fn perfect(prior: &Distribution) -> Result<InfoSystem> {
    InfoSystem::perfect(prior)
}

/// Null information on `n_obs` uniform observations.
pub fn null_is(prior: &Distribution, n_obs: usize) -> Result<InfoSystem> {
    InfoSystem::null(prior, n_obs)
}

/// How two binary systems compare under dominance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Dominates,
    DominatedBy,
    Incomparable,
}

pub fn compare(a: &CanonicalCurve, b: &CanonicalCurve) -> Comparison {
    match (dominates(a, b), dominates(b, a)) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::Dominates,
        (false, true) => Comparison::DominatedBy,
        (false, false) => Comparison::Incomparable,
    }
}
