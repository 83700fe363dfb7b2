//! Command-line front end for `infologic`: reads and writes information-system
//! files and exposes the library operations as subcommands.
//!
//! [`run`] does all the work against an output sink so the commands can be
//! driven in-process; the binary only maps errors to exit codes.

pub mod error;
pub mod format;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use infologic::canonical::{canonicalize, compare, join, meet, reconstruct};
use infologic::fusion::{
    fallback_compare, fuse, garbling_dominates, minimal_dominator_indices, verify_guarantee,
};
use infologic::numfmt::sig12;
use infologic::oracle::{corollary_check, lub_minimality_check, theorem1_check};
use infologic::{CanonicalCurve, Comparison, InfoSystem, PayoffMatrix, ScoreRule};

pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "infologic", version, about = "Information systems, proper scores and their lattice")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScoreKind {
    Log,
    Quad,
    Decision,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PriorFrom {
    A,
    B,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a system file and print its prior, marginal and sizes
    Validate { path: PathBuf },
    /// Canonical curve of a binary system as "x,y" CSV
    Canon {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Least upper bound of two binary systems
    Join {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "a")]
        prior_from: PriorFrom,
    },
    /// Greatest lower bound of two binary systems
    Meet {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "a")]
        prior_from: PriorFrom,
    },
    /// Compare two binary systems by curve containment
    Dominates { a: PathBuf, b: PathBuf },
    /// Compare two systems with any number of hypotheses by garbling
    Garbling { a: PathBuf, b: PathBuf },
    /// H, G(prior) and the value of information under each score
    Value {
        path: PathBuf,
        #[arg(long = "score", value_enum, default_values_t = [ScoreKind::Log])]
        scores: Vec<ScoreKind>,
        #[arg(long)]
        payoff: Option<PathBuf>,
    },
    /// Minimal composition of two binary systems
    Fuse {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check H(R, P+Q) >= H(P+Q) >= max(H(P), H(Q)) over sampled compositions R
    Verify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Decision payoff; the identity ("guess the hypothesis") otherwise
        #[arg(long)]
        payoff: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Rank systems by H under one score
    Rank {
        #[arg(long, value_enum, default_value = "log")]
        score: ScoreKind,
        #[arg(long)]
        payoff: Option<PathBuf>,
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Candidates that dominate both systems and are minimal among those that do
    Dominators {
        a: PathBuf,
        b: PathBuf,
        #[arg(long = "candidate", required = true)]
        candidates: Vec<PathBuf>,
    },
    /// Check G(R) = a G(P,R) + (1-a) G(Q,R) along R = aP + (1-a)Q
    Theorem1 {
        #[arg(long, value_enum, default_value = "log")]
        score: ScoreKind,
        #[arg(long)]
        payoff: Option<PathBuf>,
        /// Comma-separated probabilities
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// Check G(P, Q) >= G(Q) over a polytope, Q its G-minimizer
    Corollary {
        #[arg(long, value_enum, default_value = "log")]
        score: ScoreKind,
        #[arg(long)]
        payoff: Option<PathBuf>,
        /// A polytope vertex as comma-separated probabilities; repeat per vertex
        #[arg(long = "vertex", required = true)]
        vertices: Vec<String>,
        #[arg(long, default_value_t = infologic::oracle::DEFAULT_RESOLUTION)]
        resolution: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check that random common upper bounds dominate the join
    Lub {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 100)]
        dominators: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

pub fn load_system(path: &Path) -> Result<InfoSystem, CliError> {
    format::parse_is(&read(path)?)
}

fn load_payoff(path: &Path) -> Result<PayoffMatrix, CliError> {
    format::parse_payoff(&read(path)?)
}

fn score_rule(kind: ScoreKind, payoff: Option<&Path>) -> Result<ScoreRule, CliError> {
    Ok(match kind {
        ScoreKind::Log => ScoreRule::Logarithmic,
        ScoreKind::Quad => ScoreRule::Quadratic,
        ScoreKind::Decision => {
            ScoreRule::Decision(load_payoff(payoff.ok_or(CliError::MissingPayoff)?)?)
        }
    })
}

fn require_binary(systems: &[&InfoSystem]) -> Result<(), CliError> {
    for s in systems {
        if s.n_hypotheses() != 2 {
            return Err(infologic::Error::NotBinary {
                hypotheses: s.n_hypotheses(),
            }
            .into());
        }
    }
    Ok(())
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write(p, text),
        None => out.write_all(text.as_bytes()).map_err(io),
    }
}

fn row(values: &[f64]) -> String {
    values.iter().map(|&x| sig12(x)).collect::<Vec<_>>().join("\t")
}

// join or meet of two binary files, rebuilt on the chosen file's prior
fn lattice_op(
    a: &Path,
    b: &Path,
    prior_from: PriorFrom,
    op: fn(&CanonicalCurve, &CanonicalCurve) -> CanonicalCurve,
) -> Result<InfoSystem, CliError> {
    let (p, q) = (load_system(a)?, load_system(b)?);
    require_binary(&[&p, &q])?;
    p.check_compatible(&q)?;
    let curve = op(&canonicalize(&p)?, &canonicalize(&q)?);
    let source = match prior_from {
        PriorFrom::A => &p,
        PriorFrom::B => &q,
    };
    Ok(reconstruct(&curve, &source.prior())?
        .with_hypothesis_labels(source.hypothesis_labels().to_vec())?)
}

fn comparison_word(c: Comparison) -> &'static str {
    match c {
        Comparison::Equal => "P=Q",
        Comparison::Dominates => "P>=Q",
        Comparison::DominatedBy => "Q>=P",
        Comparison::Incomparable => "incomparable",
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { path } => {
            let sys = load_system(&path)?;
            let text = format!(
                "hypotheses\t{}\nobservations\t{}\nprior\t{}\nmarginal\t{}\n",
                sys.n_hypotheses(),
                sys.n_observations(),
                row(sys.prior().probs()),
                row(sys.marginal().probs()),
            );
            emit(out, None, &text)
        }
        Command::Canon { path, out: csv, svg } => {
            let sys = load_system(&path)?;
            let curve = canonicalize(&sys)?;
            if let Some(svg) = svg {
                write(&svg, &format::curve_svg(&curve))?;
            }
            match csv {
                Some(csv) => {
                    write(&csv, &curve.to_csv())?;
                    emit(out, None, &format!("vertices\t{}\n", curve.vertices().len()))
                }
                None => emit(out, None, &curve.to_csv()),
            }
        }
        Command::Join { a, b, out: path, prior_from } => {
            let sys = lattice_op(&a, &b, prior_from, join)?;
            emit(out, path.as_deref(), &format::write_is(&sys))
        }
        Command::Meet { a, b, out: path, prior_from } => {
            let sys = lattice_op(&a, &b, prior_from, meet)?;
            emit(out, path.as_deref(), &format::write_is(&sys))
        }
        Command::Dominates { a, b } => {
            let (p, q) = (load_system(&a)?, load_system(&b)?);
            require_binary(&[&p, &q])?;
            p.check_compatible(&q)?;
            let c = compare(&canonicalize(&p)?, &canonicalize(&q)?);
            emit(out, None, &format!("{}\n", comparison_word(c)))
        }
        Command::Garbling { a, b } => {
            let (p, q) = (load_system(&a)?, load_system(&b)?);
            let c = match (garbling_dominates(&p, &q)?, garbling_dominates(&q, &p)?) {
                (true, true) => Comparison::Equal,
                (true, false) => Comparison::Dominates,
                (false, true) => Comparison::DominatedBy,
                (false, false) => Comparison::Incomparable,
            };
            emit(out, None, &format!("{}\n", comparison_word(c)))
        }
        Command::Value { path, scores, payoff } => {
            let sys = load_system(&path)?;
            let mut text = String::from("score\tH\tG_prior\tgain\n");
            for kind in scores {
                let score = score_rule(kind, payoff.as_deref())?;
                let h = score.h_value(&sys)?;
                let g = score.g_value(&sys.prior())?;
                text.push_str(&format!("{score}\t{}\n", row(&[h, g, h - g])));
            }
            emit(out, None, &text)
        }
        Command::Fuse { a, b, out: path } => {
            let (p, q) = (load_system(&a)?, load_system(&b)?);
            let fused = fuse(&p, &q)?;
            emit(out, path.as_deref(), &format::write_is(&fused))
        }
        Command::Verify { a, b, samples, seed, payoff, csv } => {
            let (p, q) = (load_system(&a)?, load_system(&b)?);
            let decision = match payoff {
                Some(path) => load_payoff(&path)?,
                None => PayoffMatrix::identity(p.n_hypotheses()),
            };
            let scores = [
                ScoreRule::Logarithmic,
                ScoreRule::Quadratic,
                ScoreRule::Decision(decision),
            ];
            let report = verify_guarantee(&p, &q, &scores, samples, seed)?;
            if let Some(csv) = csv {
                write(&csv, &format::value_report_csv(&report))?;
            }
            emit(out, None, &format::value_report_text(&report))?;
            let failed: Vec<String> = report
                .scores
                .iter()
                .filter(|s| !s.guarantee_holds)
                .map(|s| s.score.to_string())
                .collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::GuaranteeViolation(failed.join(", ")))
            }
        }
        Command::Rank { score, payoff, paths } => {
            let score = score_rule(score, payoff.as_deref())?;
            let systems = paths
                .iter()
                .map(|p| load_system(p))
                .collect::<Result<Vec<_>, _>>()?;
            let mut text = String::from("rank\tH\tpath\n");
            for (k, r) in fallback_compare(&score, &systems)?.iter().enumerate() {
                text.push_str(&format!("{}\t{}\t{}\n", k + 1, sig12(r.value), paths[r.index].display()));
            }
            emit(out, None, &text)
        }
        Command::Dominators { a, b, candidates } => {
            let (p, q) = (load_system(&a)?, load_system(&b)?);
            let systems = candidates
                .iter()
                .map(|c| load_system(c))
                .collect::<Result<Vec<_>, _>>()?;
            let mut text = String::new();
            for k in minimal_dominator_indices(&systems, &p, &q)? {
                text.push_str(&format!("{}\n", candidates[k].display()));
            }
            emit(out, None, &text)
        }
        Command::Theorem1 { score, payoff, p, q, steps } => {
            let score = score_rule(score, payoff.as_deref())?;
            let (p, q) = (format::parse_distribution(&p)?, format::parse_distribution(&q)?);
            let r = theorem1_check(&score, &p, &q, steps)?;
            let text = format!(
                "max_decomposition_error\t{}\nhypothesis_holds\t{}\nmin_conclusion_slack\t{}\nlimit_value\t{}\nconclusion_slack\t{}\npassed\t{}\n",
                sig12(r.max_decomposition_error),
                r.hypothesis_holds,
                r.min_conclusion_slack.map_or("-".into(), sig12),
                sig12(r.limit_value),
                sig12(r.conclusion_slack),
                r.passed
            );
            emit(out, None, &text)
        }
        Command::Corollary { score, payoff, vertices, resolution, samples, seed } => {
            let score = score_rule(score, payoff.as_deref())?;
            let vertices = vertices
                .iter()
                .map(|v| format::parse_distribution(v))
                .collect::<Result<Vec<_>, _>>()?;
            let r = corollary_check(&score, &vertices, resolution, samples, seed)?;
            let text = format!(
                "grid_minimizer\t{}\nrefined_minimizer\t{}\ngrid_slack\t{}\nmin_slack\t{}\nsamples\t{}\npassed\t{}\n",
                row(r.minimizer.point.probs()),
                row(r.refined.point.probs()),
                sig12(r.grid_slack),
                sig12(r.min_slack),
                r.samples,
                r.passed
            );
            emit(out, None, &text)
        }
        Command::Lub { a, b, dominators, seed } => {
            let (p, q) = (load_system(&a)?, load_system(&b)?);
            let r = lub_minimality_check(&p, &q, dominators, seed)?;
            let text = format!(
                "join_vertices\t{}\njoin_dominates_inputs\t{}\ndominators_checked\t{}\nviolations\t{}\n",
                r.join.vertices().len(),
                r.join_dominates_inputs,
                r.dominators_checked,
                r.violations
            );
            emit(out, None, &text)
        }
    }
}
