use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::error::{Error, Result};
use crate::gen::{dirichlet_weights, seeded};
use crate::system::InfoSystem;
use crate::tol;

/// A composition of two systems: a joint over (hypothesis, observation of P,
/// observation of Q) whose two marginals are the component systems.
#[derive(Debug, Clone, PartialEq)]
pub struct Coupling {
    hypothesis_labels: Vec<String>,
    p_labels: Vec<String>,
    q_labels: Vec<String>,
    data: Vec<f64>,
}

impl Coupling {
    /// Validates `data[e][i][j]` against both component systems.
    pub fn new(p: &InfoSystem, q: &InfoSystem, data: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        let (h, m, k) = (p.n_hypotheses(), p.n_observations(), q.n_observations());
        if data.len() != h
            || data.iter().any(|layer| {
                layer.len() != m || layer.iter().any(|row| row.len() != k)
            })
        {
            return Err(Error::InvalidCoupling(format!("expected a {h}x{m}x{k} array")));
        }
        let coupling = Self {
            hypothesis_labels: p.hypothesis_labels().to_vec(),
            p_labels: p.observation_labels().to_vec(),
            q_labels: q.observation_labels().to_vec(),
            data: data.into_iter().flatten().flatten().collect(),
        };
        coupling.validate(p, q)?;
        Ok(coupling)
    }

    fn validate(&self, p: &InfoSystem, q: &InfoSystem) -> Result<()> {
        if let Some(v) = self.data.iter().find(|v| v.is_nan() || **v < 0.0) {
            return Err(Error::InvalidCoupling(format!("entry {v} is negative or NaN")));
        }
        let sum: f64 = self.data.iter().sum();
        if (sum - 1.0).abs() > tol::PROB_SUM {
            return Err(Error::InvalidCoupling(format!("entries sum to {sum}")));
        }
        let gap = self.marginal_error(p, q);
        if gap > tol::PROB_SUM {
            return Err(Error::InvalidCoupling(format!(
                "marginals differ from the components by {gap}"
            )));
        }
        Ok(())
    }

    pub fn n_hypotheses(&self) -> usize {
        self.hypothesis_labels.len()
    }

    pub fn n_p(&self) -> usize {
        self.p_labels.len()
    }

    pub fn n_q(&self) -> usize {
        self.q_labels.len()
    }

    /// `R(e, i, j)`.
    pub fn get(&self, e: usize, i: usize, j: usize) -> f64 {
        self.data[(e * self.n_p() + i) * self.n_q() + j]
    }

    /// Largest deviation of either marginal from the corresponding component joint.
    pub fn marginal_error(&self, p: &InfoSystem, q: &InfoSystem) -> f64 {
        let mut worst: f64 = 0.0;
        for e in 0..self.n_hypotheses() {
            for i in 0..self.n_p() {
                let s: f64 = (0..self.n_q()).map(|j| self.get(e, i, j)).sum();
                worst = worst.max((s - p.joint(e, i)).abs());
            }
            for j in 0..self.n_q() {
                let s: f64 = (0..self.n_p()).map(|i| self.get(e, i, j)).sum();
                worst = worst.max((s - q.joint(e, j)).abs());
            }
        }
        worst
    }

    /// Flattens to a system over the product observation space, with
    /// observation `(i, j)` labelled `"{i}×{j}"`.
    pub fn to_system(&self) -> InfoSystem {
        let labels = self
            .p_labels
            .iter()
            .flat_map(|a| self.q_labels.iter().map(move |b| format!("{a}×{b}")))
            .collect();
        let rows = self
            .data
            .chunks(self.n_p() * self.n_q())
            .map(<[f64]>::to_vec)
            .collect();
        InfoSystem::new(self.hypothesis_labels.clone(), labels, rows)
            .expect("validated coupling is a valid system")
    }
}

/// Flattened system of a coupling.
pub fn coupling_as_is(coupling: &Coupling) -> InfoSystem {
    coupling.to_system()
}

type Plan = Vec<Vec<f64>>;

fn independent_plan(a: &[f64], b: &[f64]) -> Plan {
    a.iter().map(|x| b.iter().map(|y| x * y).collect()).collect()
}

/// Northwest-corner transport plan of `a` onto `b` after reordering rows by
/// `row_order` and columns by `col_order`. The result is a vertex of the
/// transportation polytope with those marginals.
fn northwest_corner(a: &[f64], b: &[f64], row_order: &[usize], col_order: &[usize]) -> Plan {
    let mut plan = vec![vec![0.0; b.len()]; a.len()];
    let mut ra: Vec<f64> = row_order.iter().map(|&i| a[i]).collect();
    let mut rb: Vec<f64> = col_order.iter().map(|&j| b[j]).collect();
    let (mut r, mut c) = (0, 0);
    while r < ra.len() && c < rb.len() {
        let v = ra[r].min(rb[c]);
        plan[row_order[r]][col_order[c]] = v;
        ra[r] -= v;
        rb[c] -= v;
        if ra[r] <= rb[c] {
            r += 1;
        } else {
            c += 1;
        }
    }
    plan
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                extend(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Ordering pairs enumerated exhaustively up to this many pairs, sampled beyond.
const EXHAUSTIVE_ORDERINGS: usize = 720;
const SAMPLED_ORDERINGS: usize = 256;

/// Row/column orderings for the northwest-corner rule: identity first,
/// then reversed columns, then the rest.
fn orderings<R: Rng + ?Sized>(m: usize, k: usize, rng: &mut R) -> Vec<(Vec<usize>, Vec<usize>)> {
    let identity_m: Vec<usize> = (0..m).collect();
    let identity_k: Vec<usize> = (0..k).collect();
    let reversed_k: Vec<usize> = (0..k).rev().collect();
    let mut out = vec![
        (identity_m.clone(), identity_k.clone()),
        (identity_m.clone(), reversed_k),
    ];
    let count = (1..=m).product::<usize>().saturating_mul((1..=k).product::<usize>());
    if count <= EXHAUSTIVE_ORDERINGS {
        let cols = permutations(k);
        for rows in permutations(m) {
            for c in &cols {
                out.push((rows.clone(), c.clone()));
            }
        }
    } else {
        for _ in 0..SAMPLED_ORDERINGS {
            let mut rows = identity_m.clone();
            let mut cols = identity_k.clone();
            rows.shuffle(rng);
            cols.shuffle(rng);
            out.push((rows, cols));
        }
    }
    out
}

fn plans_close(a: &Plan, b: &Plan) -> bool {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .all(|(x, y)| (x - y).abs() <= 1e-12)
}

/// Distinct transportation-polytope vertices for marginals `a`, `b` reached
/// by the northwest-corner rule over the given orderings.
fn extreme_plans(a: &[f64], b: &[f64], orders: &[(Vec<usize>, Vec<usize>)]) -> Vec<Plan> {
    let mut plans: Vec<Plan> = Vec::new();
    for (rows, cols) in orders {
        let plan = northwest_corner(a, b, rows, cols);
        if !plans.iter().any(|p| plans_close(p, &plan)) {
            plans.push(plan);
        }
    }
    plans
}

/// `n` compositions of `p` and `q`, all with the right marginals.
///
/// Each hypothesis is coupled independently. The list starts with the
/// independence coupling, followed by extreme couplings (one northwest-corner
/// ordering applied to every hypothesis), and is topped up with seeded
/// random mixtures of per-hypothesis extremes.
pub fn sample_couplings(p: &InfoSystem, q: &InfoSystem, n: usize, seed: u64) -> Result<Vec<Coupling>> {
    p.check_compatible(q)?;
    let mut rng = seeded(seed);
    let h = p.n_hypotheses();
    let prior = p.prior();
    let cond_p: Vec<Vec<f64>> = (0..h).map(|e| p.likelihoods(e)).collect();
    let cond_q: Vec<Vec<f64>> = (0..h).map(|e| q.likelihoods(e)).collect();

    let build = |plans: Vec<Plan>| -> Result<Coupling> {
        let data = plans
            .into_iter()
            .enumerate()
            .map(|(e, plan)| {
                plan.into_iter()
                    .map(|row| row.into_iter().map(|v| (prior[e] * v).max(0.0)).collect())
                    .collect()
            })
            .collect();
        Coupling::new(p, q, data)
    };

    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return Ok(out);
    }
    out.push(build(
        (0..h).map(|e| independent_plan(&cond_p[e], &cond_q[e])).collect(),
    )?);

    let orders = orderings(p.n_observations(), q.n_observations(), &mut rng);
    let per_hyp: Vec<Vec<Plan>> = (0..h)
        .map(|e| extreme_plans(&cond_p[e], &cond_q[e], &orders))
        .collect();

    let mut joint_extremes: Vec<Vec<Plan>> = Vec::new();
    for (rows, cols) in &orders {
        if out.len() + joint_extremes.len() >= n {
            break;
        }
        let plans: Vec<Plan> = (0..h)
            .map(|e| northwest_corner(&cond_p[e], &cond_q[e], rows, cols))
            .collect();
        let seen = joint_extremes.iter().any(|other| {
            other.iter().zip(&plans).all(|(a, b)| plans_close(a, b))
        });
        if !seen {
            joint_extremes.push(plans);
        }
    }
    for plans in joint_extremes {
        out.push(build(plans)?);
    }

    while out.len() < n {
        let plans = per_hyp
            .iter()
            .map(|vertices| {
                let picks = vertices.len().min(3);
                let chosen: Vec<&Plan> = vertices.choose_multiple(&mut rng, picks).collect();
                let w = dirichlet_weights(&mut rng, chosen.len());
                let (rows, cols) = (chosen[0].len(), chosen[0][0].len());
                let mut mixed = vec![vec![0.0; cols]; rows];
                for (plan, wk) in chosen.iter().zip(&w) {
                    for (acc_row, row) in mixed.iter_mut().zip(plan.iter()) {
                        for (acc, v) in acc_row.iter_mut().zip(row) {
                            *acc += wk * v;
                        }
                    }
                }
                mixed
            })
            .collect();
        out.push(build(plans)?);
    }
    Ok(out)
}
