//! Minimal composition of two binary systems and the value guarantee that
//! justifies asserting it when the true joint behaviour of the two sources
//! is unknown.
//!
//! For binary hypotheses the fused system `P + Q` is rebuilt from the join of
//! both canonical curves. Any actual composition `R` (a coupling of the two
//! sources) dominates both inputs and hence `P + Q`, so acting on `P + Q`'s
//! posteriors while `R` holds is worth at least `H(P + Q)`, which is itself at
//! least `max(H(P), H(Q))`.
//!
//! For more hypotheses there is no constructive join; [`garbling_dominates`],
//! [`fallback_compare`] and [`minimal_dominators`] cover what remains.

mod coupling;
mod garbling;

pub use coupling::{coupling_as_is, sample_couplings, Coupling};
pub use garbling::{best_garbling, garbling_dominates, garbling_residual};

use crate::canonical::{canonicalize, join, reconstruct};
use crate::error::{Error, Result};
use crate::score::ScoreRule;
use crate::system::InfoSystem;
use crate::tol;

/// The minimal composition of two binary systems with a common prior.
pub fn fuse(p: &InfoSystem, q: &InfoSystem) -> Result<InfoSystem> {
    for s in [p, q] {
        if s.n_hypotheses() != 2 {
            return Err(Error::NotBinary {
                hypotheses: s.n_hypotheses(),
            });
        }
    }
    p.check_compatible(q)?;
    let curve = join(&canonicalize(p)?, &canonicalize(q)?);
    reconstruct(&curve, &p.prior())?.with_hypothesis_labels(p.hypothesis_labels().to_vec())
}

/// Re-expresses `fused` on `actual`'s observation space for one score rule.
///
/// Each observation of `actual` is sent to the fused posterior the score
/// prefers given that observation's own posterior, ties going to the
/// earlier (higher likelihood ratio) segment. For a proper score the
/// preferred segment is monotone in the likelihood ratio, so this partitions
/// the ratio axis into one interval per fused segment.
pub fn reexpress(score: &ScoreRule, fused: &InfoSystem, actual: &InfoSystem) -> Result<InfoSystem> {
    let fused_posteriors = (0..fused.n_observations())
        .filter(|&k| fused.marginal()[k] > 0.0)
        .map(|k| fused.posterior(k))
        .collect::<Result<Vec<_>>>()?;
    let marginal = actual.marginal();
    let h = actual.n_hypotheses();
    let mut rows = vec![vec![0.0; actual.n_observations()]; h];
    for (i, &w) in marginal.probs().iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        let posterior = actual.posterior(i)?;
        let mut best = 0;
        let mut best_value = score.g_cross(&posterior, &fused_posteriors[0])?;
        for (k, f) in fused_posteriors.iter().enumerate().skip(1) {
            let v = score.g_cross(&posterior, f)?;
            if v > best_value {
                best = k;
                best_value = v;
            }
        }
        for (e, row) in rows.iter_mut().enumerate() {
            row[i] = w * fused_posteriors[best][e];
        }
    }
    InfoSystem::new(
        actual.hypothesis_labels().to_vec(),
        actual.observation_labels().to_vec(),
        rows,
    )
}

/// Values of one score rule across the guarantee chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreReport {
    pub score: ScoreRule,
    pub h_p: f64,
    pub h_q: f64,
    /// `H(P + Q)`
    pub h_fused: f64,
    /// `H(R, P + Q)` for every sampled composition `R`.
    pub realized: Vec<f64>,
    pub guarantee_holds: bool,
}

impl ScoreReport {
    pub fn min_realized(&self) -> f64 {
        self.realized.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_realized(&self) -> f64 {
        self.realized.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `min H(R, P+Q) - H(P+Q)`: how far the weakest composition clears the promise.
    pub fn realized_slack(&self) -> f64 {
        self.min_realized() - self.h_fused
    }

    /// `H(P+Q) - max(H(P), H(Q))`.
    pub fn fusion_gain(&self) -> f64 {
        self.h_fused - self.h_p.max(self.h_q)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValueReport {
    pub scores: Vec<ScoreReport>,
    pub couplings: usize,
}

impl ValueReport {
    pub fn guarantee_holds(&self) -> bool {
        self.scores.iter().all(|s| s.guarantee_holds)
    }
}

/// Checks `H(R, P+Q) >= H(P+Q) >= max(H(P), H(Q))` for `n` sampled
/// compositions `R` and every given score.
pub fn verify_guarantee(
    p: &InfoSystem,
    q: &InfoSystem,
    scores: &[ScoreRule],
    n: usize,
    seed: u64,
) -> Result<ValueReport> {
    let fused = fuse(p, q)?;
    let compositions: Vec<InfoSystem> = sample_couplings(p, q, n, seed)?
        .iter()
        .map(Coupling::to_system)
        .collect();
    let mut reports = Vec::with_capacity(scores.len());
    for score in scores {
        let h_p = score.h_value(p)?;
        let h_q = score.h_value(q)?;
        let h_fused = score.h_value(&fused)?;
        let realized = compositions
            .iter()
            .map(|r| score.h_cross(r, &reexpress(score, &fused, r)?))
            .collect::<Result<Vec<_>>>()?;
        let min_realized = realized.iter().copied().fold(f64::INFINITY, f64::min);
        let guarantee_holds = min_realized >= h_fused - tol::VALUE
            && h_fused >= h_p.max(h_q) - tol::VALUE;
        reports.push(ScoreReport {
            score: score.clone(),
            h_p,
            h_q,
            h_fused,
            realized,
            guarantee_holds,
        });
    }
    Ok(ValueReport {
        scores: reports,
        couplings: compositions.len(),
    })
}

/// One entry of a single-score ranking.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ranked {
    /// Position in the input list.
    pub index: usize,
    pub value: f64,
}

/// Ranks systems by descending `H` under one score; equal values keep input order.
pub fn fallback_compare(score: &ScoreRule, systems: &[InfoSystem]) -> Result<Vec<Ranked>> {
    if let Some(first) = systems.first() {
        if systems
            .iter()
            .any(|s| s.hypothesis_labels() != first.hypothesis_labels())
        {
            return Err(Error::LabelMismatch);
        }
    }
    let mut ranked = systems
        .iter()
        .enumerate()
        .map(|(index, s)| Ok(Ranked { index, value: score.h_value(s)? }))
        .collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|a, b| b.value.total_cmp(&a.value));
    Ok(ranked)
}

/// Indices of the candidates that dominate both `p` and `q` and strictly
/// dominate no other such candidate.
pub fn minimal_dominator_indices(
    candidates: &[InfoSystem],
    p: &InfoSystem,
    q: &InfoSystem,
) -> Result<Vec<usize>> {
    p.check_compatible(q)?;
    for c in candidates {
        p.check_compatible(c)?;
    }
    let mut upper = Vec::new();
    for (k, c) in candidates.iter().enumerate() {
        if garbling_dominates(c, p)? && garbling_dominates(c, q)? {
            upper.push(k);
        }
    }
    let mut minimal = Vec::new();
    for &k in &upper {
        let mut strictly_above_another = false;
        for &other in &upper {
            if other == k {
                continue;
            }
            let (a, b) = (&candidates[k], &candidates[other]);
            if garbling_dominates(a, b)? && !garbling_dominates(b, a)? {
                strictly_above_another = true;
                break;
            }
        }
        if !strictly_above_another {
            minimal.push(k);
        }
    }
    Ok(minimal)
}

/// The minimal common dominators among `candidates`.
pub fn minimal_dominators(
    candidates: &[InfoSystem],
    p: &InfoSystem,
    q: &InfoSystem,
) -> Result<Vec<InfoSystem>> {
    Ok(minimal_dominator_indices(candidates, p, q)?
        .into_iter()
        .map(|k| candidates[k].clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{curve_equal, CanonicalCurve};
    use crate::dist::Distribution;
    use crate::score::PayoffMatrix;

    fn symmetric() -> InfoSystem {
        InfoSystem::from_rows(vec![vec![0.45, 0.05], vec![0.05, 0.45]]).unwrap()
    }

    fn all_scores() -> Vec<ScoreRule> {
        vec![
            ScoreRule::Logarithmic,
            ScoreRule::Quadratic,
            ScoreRule::Decision(PayoffMatrix::identity(2)),
        ]
    }

    #[test]
    fn fuse_with_null_and_self() {
        let p = InfoSystem::from_rows(vec![vec![0.2, 0.1, 0.2], vec![0.05, 0.3, 0.15]]).unwrap();
        let null = InfoSystem::null(&p.prior(), 2).unwrap();
        let cp = canonicalize(&p).unwrap();
        assert!(curve_equal(&canonicalize(&fuse(&p, &null).unwrap()).unwrap(), &cp));
        assert!(curve_equal(&canonicalize(&fuse(&p, &p).unwrap()).unwrap(), &cp));
    }

    #[test]
    fn fuse_errors() {
        let p = symmetric();
        let skewed = InfoSystem::from_rows(vec![vec![0.2, 0.1], vec![0.3, 0.4]]).unwrap();
        assert!(matches!(fuse(&p, &skewed), Err(Error::PriorMismatch { .. })));
        let relabelled = symmetric().with_hypothesis_labels(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(fuse(&p, &relabelled), Err(Error::LabelMismatch));
        let three = InfoSystem::null(&Distribution::uniform(3).unwrap(), 2).unwrap();
        assert_eq!(fuse(&p, &three), Err(Error::NotBinary { hypotheses: 3 }));
    }

    #[test]
    fn guarantee_against_null_is_tight_on_the_right() {
        let p = symmetric();
        let null = InfoSystem::null(&p.prior(), 3).unwrap();
        let report = verify_guarantee(&p, &null, &all_scores(), 10, 5).unwrap();
        assert!(report.guarantee_holds());
        for s in &report.scores {
            assert!((s.h_fused - s.h_p).abs() < 1e-12);
            assert!(s.h_fused >= s.h_q);
        }
    }

    #[test]
    fn independence_coupling_of_symmetric_channels() {
        // Two independent looks through the same 0.9 channel. The fused curve
        // is the single channel's, and the composition sees posteriors
        // (81/82, 1/82), (0.5, 0.5), (1/82, 81/82) with weights 0.41, 0.18, 0.41.
        let p = symmetric();
        let report = verify_guarantee(&p, &p, &[ScoreRule::Logarithmic], 1, 0).unwrap();
        let s = &report.scores[0];
        let h = 0.9f64 * 0.9f64.ln() + 0.1 * 0.1f64.ln();
        assert!((s.h_fused - h).abs() < 1e-12);
        // observations with posterior (0.5, 0.5) report 0.9 one way or the other
        let a = 81.0 / 82.0;
        let expected = 0.82 * (a * 0.9f64.ln() + (1.0 - a) * 0.1f64.ln())
            + 0.18 * (0.5 * 0.9f64.ln() + 0.5 * 0.1f64.ln());
        assert!((s.realized[0] - expected).abs() < 1e-12);
        assert!(s.guarantee_holds);
    }

    #[test]
    fn fallback_ranking() {
        let prior = Distribution::new(vec![0.3, 0.7]).unwrap();
        let null = InfoSystem::null(&prior, 2).unwrap();
        let star = InfoSystem::perfect(&prior).unwrap();
        let ranked = fallback_compare(&ScoreRule::Logarithmic, &[null.clone(), star]).unwrap();
        assert_eq!(ranked.iter().map(|r| r.index).collect::<Vec<_>>(), vec![1, 0]);
        assert_eq!(ranked[0].value, 0.0);
        let ranked = fallback_compare(&ScoreRule::Quadratic, &[null.clone(), null.clone()]).unwrap();
        assert_eq!(ranked.iter().map(|r| r.index).collect::<Vec<_>>(), vec![0, 1]);
        let other = symmetric().with_hypothesis_labels(vec!["x".into(), "y".into()]).unwrap();
        assert_eq!(
            fallback_compare(&ScoreRule::Quadratic, &[null, other]),
            Err(Error::LabelMismatch)
        );
    }

    #[test]
    fn minimal_dominator_examples() {
        let p = symmetric();
        let q = InfoSystem::from_rows(vec![vec![0.25, 0.25], vec![0.475, 0.025]]).unwrap();
        let star = InfoSystem::perfect(&p.prior()).unwrap();
        let null = InfoSystem::null(&p.prior(), 2).unwrap();
        assert_eq!(minimal_dominators(std::slice::from_ref(&star), &p, &q).unwrap(), vec![star.clone()]);
        assert!(minimal_dominators(&[null], &p, &q).unwrap().is_empty());
        let fused = fuse(&p, &q).unwrap();
        assert_eq!(
            minimal_dominator_indices(&[fused.clone(), star], &p, &q).unwrap(),
            vec![0]
        );
        let fused_curve = canonicalize(&fused).unwrap();
        assert!(!curve_equal(&fused_curve, &CanonicalCurve::perfect()));
    }
}
