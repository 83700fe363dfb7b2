use std::ops::Index;

use crate::error::{Error, Result};
use crate::tol;

/// A probability vector over a finite set of hypotheses (or observations).
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    /// Validates non-negativity and unit sum (within 1e-9).
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty".into()));
        }
        for (i, &p) in probs.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::InvalidDistribution(format!("entry {i} is not finite")));
            }
            if p < 0.0 {
                return Err(Error::InvalidDistribution(format!("entry {i} is negative ({p})")));
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tol::PROB_SUM {
            return Err(Error::InvalidDistribution(format!("entries sum to {sum}")));
        }
        Ok(Self { probs })
    }

    /// Scales a non-negative weight vector to unit sum.
    pub fn normalized(weights: &[f64]) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 || weights.iter().any(|w| *w < 0.0 || !w.is_finite()) {
            return Err(Error::InvalidDistribution(
                "weights must be finite, non-negative and not all zero".into(),
            ));
        }
        Ok(Self {
            probs: weights.iter().map(|w| w / sum).collect(),
        })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDistribution("empty".into()));
        }
        Ok(Self {
            probs: vec![1.0 / n as f64; n],
        })
    }

    /// Point mass on `index`.
    pub fn degenerate(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, len: n });
        }
        let mut probs = vec![0.0; n];
        probs[index] = 1.0;
        Ok(Self { probs })
    }

    /// `a * self + (1 - a) * other`.
    pub fn mix(&self, other: &Distribution, a: f64) -> Result<Self> {
        self.check_dim(other)?;
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::InvalidDistribution(format!("mixture weight {a} outside [0,1]")));
        }
        Ok(Self {
            probs: self
                .probs
                .iter()
                .zip(&other.probs)
                .map(|(p, q)| a * p + (1.0 - a) * q)
                .collect(),
        })
    }

    /// Convex combination of several distributions with the given weights.
    pub fn combine(points: &[Distribution], weights: &[f64]) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::InvalidDistribution("no points to combine".into()))?;
        if weights.len() != points.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                found: weights.len(),
            });
        }
        let mut probs = vec![0.0; first.len()];
        for (p, &w) in points.iter().zip(weights) {
            first.check_dim(p)?;
            for (acc, x) in probs.iter_mut().zip(&p.probs) {
                *acc += w * x;
            }
        }
        Self::new(probs)
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.probs
    }

    /// Largest absolute coordinate difference.
    pub fn max_abs_diff(&self, other: &Distribution) -> f64 {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub(crate) fn check_dim(&self, other: &Distribution) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    /// Builds from an already-normalized vector without re-checking the sum.
    pub(crate) fn from_normalized(probs: Vec<f64>) -> Self {
        Self { probs }
    }
}

impl Index<usize> for Distribution {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.probs[index]
    }
}
