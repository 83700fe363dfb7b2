use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::tol;

/// A joint distribution over hypotheses (rows) and observations (columns).
///
/// Columns with zero marginal are allowed; they carry no weight in any value
/// computation.
#[derive(Debug, Clone, PartialEq)]
pub struct InfoSystem {
    hypothesis_labels: Vec<String>,
    observation_labels: Vec<String>,
    joint: Vec<f64>,
    n_obs: usize,
}

/// Default labels `h1, h2, ...` / `o1, o2, ...`.
pub fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

impl InfoSystem {
    /// Validates a joint matrix against the information-system invariants.
    pub fn new(
        hypothesis_labels: Vec<String>,
        observation_labels: Vec<String>,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let n_hyp = rows.len();
        let n_obs = rows.first().map_or(0, Vec::len);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n_obs {
                return Err(Error::NotRectangular {
                    row: r,
                    expected: n_obs,
                    found: row.len(),
                });
            }
        }
        if n_hyp < 2 || n_obs < 1 {
            return Err(Error::EmptyAxis {
                hypotheses: n_hyp,
                observations: n_obs,
            });
        }
        if hypothesis_labels.len() != n_hyp {
            return Err(Error::LabelCount {
                axis: "hypotheses",
                labels: hypothesis_labels.len(),
                entries: n_hyp,
            });
        }
        if observation_labels.len() != n_obs {
            return Err(Error::LabelCount {
                axis: "observations",
                labels: observation_labels.len(),
                entries: n_obs,
            });
        }
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry { row: r, col: c });
                }
                if v < 0.0 {
                    return Err(Error::NegativeEntry { row: r, col: c, value: v });
                }
            }
        }
        let sum: f64 = rows.iter().flatten().sum();
        if (sum - 1.0).abs() > tol::PROB_SUM {
            return Err(Error::SumNotOne { sum });
        }
        for (r, row) in rows.iter().enumerate() {
            if row.iter().sum::<f64>() <= 0.0 {
                return Err(Error::ZeroPriorRow { row: r });
            }
        }
        Ok(Self {
            hypothesis_labels,
            observation_labels,
            joint: rows.into_iter().flatten().collect(),
            n_obs,
        })
    }

    /// Same as [`InfoSystem::new`] with generated labels.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_hyp = rows.len();
        let n_obs = rows.first().map_or(0, Vec::len);
        Self::new(default_labels("h", n_hyp), default_labels("o", n_obs), rows)
    }

    /// Builds a system from a prior and per-hypothesis observation likelihoods
    /// `P(i | e)` (one row per hypothesis).
    pub fn from_likelihoods(
        hypothesis_labels: Vec<String>,
        observation_labels: Vec<String>,
        prior: &Distribution,
        likelihoods: &[Vec<f64>],
    ) -> Result<Self> {
        if likelihoods.len() != prior.len() {
            return Err(Error::DimensionMismatch {
                expected: prior.len(),
                found: likelihoods.len(),
            });
        }
        let rows = likelihoods
            .iter()
            .zip(prior.probs())
            .map(|(row, p)| row.iter().map(|l| p * l).collect())
            .collect();
        Self::new(hypothesis_labels, observation_labels, rows)
    }

    /// Perfect information: one observation per hypothesis, each revealing it.
    pub fn perfect(prior: &Distribution) -> Result<Self> {
        check_prior(prior)?;
        let n = prior.len();
        let rows = (0..n)
            .map(|e| (0..n).map(|i| if i == e { prior[e] } else { 0.0 }).collect())
            .collect();
        Self::new(default_labels("h", n), default_labels("o", n), rows)
    }

    /// Null information on `n_obs` equally likely observations: the product of
    /// the prior with the uniform observation distribution.
    pub fn null(prior: &Distribution, n_obs: usize) -> Result<Self> {
        check_prior(prior)?;
        let n = prior.len();
        let w = 1.0 / n_obs as f64;
        let rows = prior
            .probs()
            .iter()
            .map(|p| vec![p * w; n_obs])
            .collect();
        Self::new(default_labels("h", n), default_labels("o", n_obs), rows)
    }

    pub fn n_hypotheses(&self) -> usize {
        self.hypothesis_labels.len()
    }

    pub fn n_observations(&self) -> usize {
        self.n_obs
    }

    pub fn hypothesis_labels(&self) -> &[String] {
        &self.hypothesis_labels
    }

    pub fn observation_labels(&self) -> &[String] {
        &self.observation_labels
    }

    /// Joint probability `P(e, i)`.
    pub fn joint(&self, e: usize, i: usize) -> f64 {
        self.joint[e * self.n_obs + i]
    }

    pub fn row(&self, e: usize) -> &[f64] {
        &self.joint[e * self.n_obs..(e + 1) * self.n_obs]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.joint.chunks(self.n_obs).map(<[f64]>::to_vec).collect()
    }

    /// Row sums `P(e)`.
    pub fn prior(&self) -> Distribution {
        Distribution::from_normalized(
            (0..self.n_hypotheses())
                .map(|e| self.row(e).iter().sum())
                .collect(),
        )
    }

    /// Column sums `P(i)`.
    pub fn marginal(&self) -> Distribution {
        Distribution::from_normalized(
            (0..self.n_obs)
                .map(|i| (0..self.n_hypotheses()).map(|e| self.joint(e, i)).sum())
                .collect(),
        )
    }

    /// `P(E | i)`: column `i` divided by its sum.
    pub fn posterior(&self, i: usize) -> Result<Distribution> {
        if i >= self.n_obs {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.n_obs,
            });
        }
        let column: Vec<f64> = (0..self.n_hypotheses()).map(|e| self.joint(e, i)).collect();
        let total: f64 = column.iter().sum();
        if total <= 0.0 {
            return Err(Error::ZeroProbabilityObservation { index: i });
        }
        Ok(Distribution::from_normalized(
            column.into_iter().map(|v| v / total).collect(),
        ))
    }

    /// `P(I | e)`: row `e` divided by the prior of `e`.
    pub fn likelihoods(&self, e: usize) -> Vec<f64> {
        let row = self.row(e);
        let total: f64 = row.iter().sum();
        row.iter().map(|v| v / total).collect()
    }

    /// Checks that two systems share hypothesis labels and (within 1e-9) the prior.
    pub fn check_compatible(&self, other: &InfoSystem) -> Result<()> {
        if self.hypothesis_labels != other.hypothesis_labels {
            return Err(Error::LabelMismatch);
        }
        let max_diff = self.prior().max_abs_diff(&other.prior());
        if max_diff > tol::PRIOR_MATCH {
            return Err(Error::PriorMismatch { max_diff });
        }
        Ok(())
    }

    pub fn with_hypothesis_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n_hypotheses() {
            return Err(Error::LabelCount {
                axis: "hypotheses",
                labels: labels.len(),
                entries: self.n_hypotheses(),
            });
        }
        self.hypothesis_labels = labels;
        Ok(self)
    }
}

pub(crate) fn check_prior(prior: &Distribution) -> Result<()> {
    if prior.len() < 2 || prior.probs().iter().any(|p| *p <= 0.0) {
        return Err(Error::DegeneratePrior);
    }
    Ok(())
}
