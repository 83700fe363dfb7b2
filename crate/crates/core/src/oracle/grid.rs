use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::score::ScoreRule;

/// Calls `visit` with every composition of `total` into `parts` non-negative
/// integers, in lexicographically increasing order.
pub fn for_each_composition(total: usize, parts: usize, mut visit: impl FnMut(&[usize])) {
    if parts == 0 {
        return;
    }
    let mut current = vec![0; parts];
    fn fill(pos: usize, remaining: usize, current: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
        if pos + 1 == current.len() {
            current[pos] = remaining;
            visit(current);
            return;
        }
        for v in 0..=remaining {
            current[pos] = v;
            fill(pos + 1, remaining - v, current, visit);
        }
    }
    fill(0, total, &mut current, &mut visit);
}

/// All distributions whose entries are multiples of `1 / resolution`.
#[derive(Debug, Clone)]
pub struct SimplexGrid {
    pub dimension: usize,
    pub resolution: usize,
    pub points: Vec<Distribution>,
}

impl SimplexGrid {
    pub fn new(dimension: usize, resolution: usize) -> Result<Self> {
        if dimension == 0 || resolution == 0 {
            return Err(Error::InvalidDistribution(
                "grid needs a positive dimension and resolution".into(),
            ));
        }
        let mut points = Vec::new();
        for_each_composition(resolution, dimension, |c| {
            points.push(Distribution::from_normalized(
                c.iter().map(|&k| k as f64 / resolution as f64).collect(),
            ));
        });
        Ok(Self {
            dimension,
            resolution,
            points,
        })
    }
}

/// Grid minimizer of `G` over the polytope spanned by `vertices`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMinimum {
    pub point: Distribution,
    /// Mixture weights on the vertices, multiples of `1 / resolution`.
    pub weights: Vec<f64>,
    pub value: f64,
}

pub(crate) fn check_vertices(vertices: &[Distribution]) -> Result<usize> {
    let first = vertices
        .first()
        .ok_or_else(|| Error::InvalidDistribution("polytope needs at least one vertex".into()))?;
    for v in vertices {
        first.check_dim(v)?;
    }
    Ok(first.len())
}

pub(crate) fn mixture(vertices: &[Distribution], weights: &[f64]) -> Distribution {
    let mut probs = vec![0.0; vertices[0].len()];
    for (v, &w) in vertices.iter().zip(weights) {
        for (acc, x) in probs.iter_mut().zip(v.probs()) {
            *acc += w * x;
        }
    }
    Distribution::from_normalized(probs)
}

/// Minimizes `G` over mixtures of `vertices` whose weights lie on a grid with
/// `resolution` steps. Ties go to the lexicographically smallest weights.
pub fn grid_min_g(score: &ScoreRule, vertices: &[Distribution], resolution: usize) -> Result<GridMinimum> {
    let dim = check_vertices(vertices)?;
    if resolution == 0 {
        return Err(Error::InvalidDistribution("resolution must be positive".into()));
    }
    // surface dimension errors for decision payoffs before the sweep
    score.g_value(&vertices[0])?;
    let _ = dim;

    let step = 1.0 / resolution as f64;
    let mut best: Option<GridMinimum> = None;
    for_each_composition(resolution, vertices.len(), |c| {
        let weights: Vec<f64> = c.iter().map(|&k| k as f64 * step).collect();
        let point = mixture(vertices, &weights);
        let value = score.g_value(&point).expect("dimensions checked");
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(GridMinimum {
                point,
                weights,
                value,
            });
        }
    });
    Ok(best.expect("at least one grid point"))
}

/// Polishes a minimizer of `G` over mixtures of `vertices` by compass search
/// on the weights: mass moves between pairs of vertices in steps starting at
/// `initial_step`, halving whenever no move improves `G`. `G` is evaluated
/// only at feasible mixtures, so the result stays inside the polytope.
pub fn refine_min_g(
    score: &ScoreRule,
    vertices: &[Distribution],
    start: &[f64],
    initial_step: f64,
) -> Result<GridMinimum> {
    check_vertices(vertices)?;
    if start.len() != vertices.len() {
        return Err(Error::DimensionMismatch {
            expected: vertices.len(),
            found: start.len(),
        });
    }
    let mut weights = start.to_vec();
    let mut value = score.g_value(&mixture(vertices, &weights))?;
    let mut step = initial_step;
    let mut evaluations = 0usize;
    while step > 1e-10 && evaluations < 1_000_000 {
        let mut improved = false;
        for to in 0..weights.len() {
            for from in 0..weights.len() {
                if to == from {
                    continue;
                }
                let delta = step.min(weights[from]);
                if delta <= 0.0 {
                    continue;
                }
                let mut trial = weights.clone();
                trial[to] += delta;
                trial[from] -= delta;
                evaluations += 1;
                let v = score.g_value(&mixture(vertices, &trial))?;
                if v < value {
                    weights = trial;
                    value = v;
                    improved = true;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    Ok(GridMinimum {
        point: mixture(vertices, &weights),
        weights,
        value,
    })
}
