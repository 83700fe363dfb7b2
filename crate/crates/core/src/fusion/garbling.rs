//! Dominance for any number of hypotheses, decided by garbling feasibility.
//!
//! `P` dominates `Q` when some row-stochastic matrix `M` turns `P`'s joint
//! into `Q`'s: `P_joint * M = Q_joint`. We solve
//!
//! ```text
//! minimize t  subject to  |(P M - Q)(e, j)| <= t,  sum_j M(i, j) = 1,  M >= 0
//! ```
//!
//! and accept when the optimal `M`, cleaned of solver round-off, reproduces
//! `Q` within 1e-9.

use minilp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem};

use crate::error::{Error, Result};
use crate::system::InfoSystem;
use crate::tol;

/// The smallest achievable max-residual of `P M = Q` and the matrix reaching it.
pub fn best_garbling(p: &InfoSystem, q: &InfoSystem) -> Result<(f64, Vec<Vec<f64>>)> {
    p.check_compatible(q)?;
    let (h, m, k) = (p.n_hypotheses(), p.n_observations(), q.n_observations());

    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<Vec<_>> = (0..m)
        .map(|_| (0..k).map(|_| lp.add_var(0.0, (0.0, 1.0))).collect())
        .collect();
    let t = lp.add_var(1.0, (0.0, f64::INFINITY));

    for row in &vars {
        let mut expr = LinearExpr::empty();
        for &v in row {
            expr.add(v, 1.0);
        }
        lp.add_constraint(expr, ComparisonOp::Eq, 1.0);
    }
    for e in 0..h {
        for j in 0..k {
            let target = q.joint(e, j);
            let mut upper = LinearExpr::empty();
            let mut lower = LinearExpr::empty();
            for (i, row) in vars.iter().enumerate() {
                let w = p.joint(e, i);
                if w != 0.0 {
                    upper.add(row[j], w);
                    lower.add(row[j], w);
                }
            }
            upper.add(t, -1.0);
            lower.add(t, 1.0);
            lp.add_constraint(upper, ComparisonOp::Le, target);
            lp.add_constraint(lower, ComparisonOp::Ge, target);
        }
    }

    let solution = lp.solve().map_err(|e| Error::Solver(e.to_string()))?;
    let matrix: Vec<Vec<f64>> = vars
        .iter()
        .map(|row| {
            let raw: Vec<f64> = row.iter().map(|&v| solution[v].max(0.0)).collect();
            let sum: f64 = raw.iter().sum();
            if sum > 0.0 {
                raw.into_iter().map(|x| x / sum).collect()
            } else {
                vec![1.0 / k as f64; k]
            }
        })
        .collect();
    Ok((garbling_residual(p, q, &matrix), matrix))
}

/// `max |(P M - Q)(e, j)|`.
#[allow(clippy::needless_range_loop)]
pub fn garbling_residual(p: &InfoSystem, q: &InfoSystem, matrix: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for e in 0..p.n_hypotheses() {
        for j in 0..q.n_observations() {
            let v: f64 = (0..p.n_observations())
                .map(|i| p.joint(e, i) * matrix[i][j])
                .sum();
            worst = worst.max((v - q.joint(e, j)).abs());
        }
    }
    worst
}

/// `P >= Q` for systems with any number of hypotheses.
pub fn garbling_dominates(p: &InfoSystem, q: &InfoSystem) -> Result<bool> {
    let (residual, _) = best_garbling(p, q)?;
    Ok(residual <= tol::GARBLING)
}
