//! Seeded random generators for systems, curves, distributions and payoffs.
//!
//! Everything here takes an explicit RNG so test and oracle runs reproduce.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Exp1};

use crate::canonical::{canonicalize, CanonicalCurve};
use crate::dist::Distribution;
use crate::score::PayoffMatrix;
use crate::system::{default_labels, InfoSystem};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Flat Dirichlet weights of length `n`.
pub fn dirichlet_weights<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|w: f64| w / sum).collect()
}

/// Uniform draw from the probability simplex of dimension `n`.
pub fn distribution<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Distribution {
    Distribution::normalized(&dirichlet_weights(rng, n)).expect("positive weights")
}

/// A prior whose entries are all at least `floor`.
pub fn prior<R: Rng + ?Sized>(rng: &mut R, n: usize, floor: f64) -> Distribution {
    let w = dirichlet_weights(rng, n);
    let scale = 1.0 - floor * n as f64;
    Distribution::normalized(&w.iter().map(|x| floor + scale * x).collect::<Vec<_>>())
        .expect("positive weights")
}

/// Random system with the given prior and `n_obs` observations; each
/// hypothesis' likelihood row is a flat Dirichlet draw.
pub fn system_with_prior<R: Rng + ?Sized>(
    rng: &mut R,
    prior: &Distribution,
    n_obs: usize,
) -> InfoSystem {
    let likelihoods: Vec<Vec<f64>> = (0..prior.len())
        .map(|_| dirichlet_weights(rng, n_obs))
        .collect();
    InfoSystem::from_likelihoods(
        default_labels("h", prior.len()),
        default_labels("o", n_obs),
        prior,
        &likelihoods,
    )
    .expect("random system is valid")
}

/// Random system with a random prior.
pub fn system<R: Rng + ?Sized>(rng: &mut R, n_hyp: usize, n_obs: usize) -> InfoSystem {
    let p = prior(rng, n_hyp, 0.02);
    system_with_prior(rng, &p, n_obs)
}

/// Post-processes `system` through a random row-stochastic matrix with
/// `n_out` outputs, producing a system it dominates.
pub fn garbling<R: Rng + ?Sized>(rng: &mut R, system: &InfoSystem, n_out: usize) -> InfoSystem {
    let channel: Vec<Vec<f64>> = (0..system.n_observations())
        .map(|_| dirichlet_weights(rng, n_out))
        .collect();
    let rows = (0..system.n_hypotheses())
        .map(|e| {
            (0..n_out)
                .map(|j| {
                    system
                        .row(e)
                        .iter()
                        .zip(&channel)
                        .map(|(p, m)| p * m[j])
                        .sum()
                })
                .collect()
        })
        .collect();
    InfoSystem::new(
        system.hypothesis_labels().to_vec(),
        default_labels("g", n_out),
        rows,
    )
    .expect("garbled system is valid")
}

/// A random canonical curve with at most `n_segments` segments.
pub fn curve<R: Rng + ?Sized>(rng: &mut R, n_segments: usize) -> CanonicalCurve {
    let half = Distribution::uniform(2).expect("two hypotheses");
    canonicalize(&system_with_prior(rng, &half, n_segments)).expect("binary system")
}

/// Payoffs drawn uniformly from `[-1, 1]`.
pub fn payoff<R: Rng + ?Sized>(rng: &mut R, n_actions: usize, n_hyp: usize) -> PayoffMatrix {
    PayoffMatrix::new(
        (0..n_actions)
            .map(|_| (0..n_hyp).map(|_| rng.random_range(-1.0..=1.0)).collect())
            .collect(),
    )
    .expect("non-empty payoff")
}
