//! Proper scoring rules and the expected-value functionals built on them.
//!
//! For a score `S(Q, e)`:
//! * `G(P) = sum_e P(e) S(P, e)`, the expected self-score of `P`;
//! * `G(P, Q) = sum_e P(e) S(Q, e)`, the expected score of reporting `Q` when `P` holds;
//! * `H(P) = sum_i P(i) G(P(E | i))` for an information system;
//! * `H(P, Q) = sum_i P(i) G(P(E | i), Q(E | i))` for two systems on one observation space.
//!
//! Terms whose weight is zero are skipped, which gives the `0 log 0 = 0`
//! convention for the logarithmic score.

use std::fmt;

use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::system::InfoSystem;

/// Decision payoffs `U(a, e)`: one row per action, one column per hypothesis.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffMatrix {
    rows: Vec<Vec<f64>>,
}

impl PayoffMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let width = rows
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidPayoff("need at least one action".into()))?;
        if width == 0 {
            return Err(Error::InvalidPayoff("need at least one hypothesis column".into()));
        }
        for (a, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::InvalidPayoff(format!(
                    "action {a} has {} payoffs, expected {width}",
                    row.len()
                )));
            }
            if row.iter().any(|u| !u.is_finite()) {
                return Err(Error::InvalidPayoff(format!("action {a} has a non-finite payoff")));
            }
        }
        Ok(Self { rows })
    }

    /// One action per hypothesis, paying 1 for a correct guess.
    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n)
                .map(|a| (0..n).map(|e| if a == e { 1.0 } else { 0.0 }).collect())
                .collect(),
        }
    }

    pub fn n_actions(&self) -> usize {
        self.rows.len()
    }

    pub fn n_hypotheses(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn payoff(&self, action: usize, e: usize) -> f64 {
        self.rows[action][e]
    }

    pub fn expected_payoff(&self, action: usize, p: &Distribution) -> f64 {
        weighted_sum(p, |e| self.rows[action][e])
    }

    /// `a*(Q)`: the action with the highest expected payoff; ties go to the lowest index.
    pub fn optimal_action(&self, q: &Distribution) -> usize {
        let mut best = 0;
        let mut best_value = self.expected_payoff(0, q);
        for a in 1..self.rows.len() {
            let v = self.expected_payoff(a, q);
            if v > best_value {
                best = a;
                best_value = v;
            }
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScoreRule {
    /// `S(Q, e) = ln Q(e)`.
    Logarithmic,
    /// `S(Q, e) = 2 Q(e) - sum_e' Q(e')^2`.
    Quadratic,
    /// `S(Q, e) = U(a*(Q), e)`.
    Decision(PayoffMatrix),
}

impl fmt::Display for ScoreRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScoreRule::Logarithmic => f.write_str("log"),
            ScoreRule::Quadratic => f.write_str("quad"),
            ScoreRule::Decision(_) => f.write_str("decision"),
        }
    }
}

fn weighted_sum(p: &Distribution, mut term: impl FnMut(usize) -> f64) -> f64 {
    p.probs()
        .iter()
        .enumerate()
        .filter(|(_, w)| **w > 0.0)
        .map(|(e, w)| w * term(e))
        .sum()
}

impl ScoreRule {
    fn check_dim(&self, n: usize) -> Result<()> {
        if let ScoreRule::Decision(u) = self {
            if u.n_hypotheses() != n {
                return Err(Error::DimensionMismatch {
                    expected: u.n_hypotheses(),
                    found: n,
                });
            }
        }
        Ok(())
    }

    /// `S(Q, e)`. The logarithmic score of an event given probability zero is `-inf`.
    pub fn score(&self, q: &Distribution, e: usize) -> Result<f64> {
        self.check_dim(q.len())?;
        if e >= q.len() {
            return Err(Error::IndexOutOfRange { index: e, len: q.len() });
        }
        Ok(self.score_unchecked(q, e, &mut None))
    }

    // `cache` holds the per-report constant (sum of squares or optimal action)
    fn score_unchecked(&self, q: &Distribution, e: usize, cache: &mut Option<f64>) -> f64 {
        match self {
            ScoreRule::Logarithmic => q[e].ln(),
            ScoreRule::Quadratic => {
                let sq = *cache.get_or_insert_with(|| q.probs().iter().map(|x| x * x).sum());
                2.0 * q[e] - sq
            }
            ScoreRule::Decision(u) => {
                let a = *cache.get_or_insert_with(|| u.optimal_action(q) as f64) as usize;
                u.payoff(a, e)
            }
        }
    }

    /// `G(P)`, the expected self-score.
    pub fn g_value(&self, p: &Distribution) -> Result<f64> {
        self.g_cross(p, p)
    }

    /// `G(P, Q)`, the expected score of reporting `Q` under `P`. Can be `-inf`
    /// for the logarithmic score when `Q` rules out an event `P` allows.
    pub fn g_cross(&self, p: &Distribution, q: &Distribution) -> Result<f64> {
        p.check_dim(q)?;
        self.check_dim(p.len())?;
        let mut cache = None;
        Ok(weighted_sum(p, |e| self.score_unchecked(q, e, &mut cache)))
    }

    /// `H(P)`: posterior self-scores averaged over the observation marginal.
    pub fn h_value(&self, system: &InfoSystem) -> Result<f64> {
        self.check_dim(system.n_hypotheses())?;
        let marginal = system.marginal();
        let mut total = 0.0;
        for (i, &w) in marginal.probs().iter().enumerate() {
            if w > 0.0 {
                total += w * self.g_value(&system.posterior(i)?)?;
            }
        }
        Ok(total)
    }

    /// `H(P, Q)`: the value of acting on `Q`'s posteriors when `P` is the
    /// actual system. Both must share observation labels and hypothesis count.
    pub fn h_cross(&self, actual: &InfoSystem, estimate: &InfoSystem) -> Result<f64> {
        if actual.observation_labels() != estimate.observation_labels()
            || actual.n_hypotheses() != estimate.n_hypotheses()
        {
            return Err(Error::ObservationSpaceMismatch);
        }
        self.check_dim(actual.n_hypotheses())?;
        let marginal = actual.marginal();
        let estimate_marginal = estimate.marginal();
        let mut total = 0.0;
        for (i, &w) in marginal.probs().iter().enumerate() {
            if w <= 0.0 {
                continue;
            }
            if estimate_marginal[i] <= 0.0 {
                return Err(Error::UndefinedPosterior { index: i });
            }
            total += w * self.g_cross(&actual.posterior(i)?, &estimate.posterior(i)?)?;
        }
        Ok(total)
    }
}
