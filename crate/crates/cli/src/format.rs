//! Text formats: information-system files, payoff files, value reports and
//! curve SVGs.
//!
//! An information-system file looks like
//!
//! ```text
//! is v1
//! # optional comment lines anywhere
//! h1    h2
//! o1    o2
//! 0.45    0.05
//! 0.05    0.45
//! ```
//!
//! with tab-separated labels and one joint-probability row per hypothesis.

use std::fmt::Write as _;

use infologic::numfmt::sig12;
use infologic::{CanonicalCurve, InfoSystem, PayoffMatrix, ValueReport};

use crate::error::CliError;

const HEADER: &str = "is v1";

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty())
}

fn parse_number(line: usize, field: &str) -> Result<f64, CliError> {
    field.trim().parse::<f64>().map_err(|_| CliError::Parse {
        line,
        message: format!("not a number: {:?}", field.trim()),
    })
}

fn labels(line: usize, text: &str) -> Result<Vec<String>, CliError> {
    let fields: Vec<String> = text.split('\t').map(|s| s.trim().to_string()).collect();
    if fields.iter().any(String::is_empty) {
        return Err(CliError::Parse {
            line,
            message: "empty label".into(),
        });
    }
    Ok(fields)
}

pub fn parse_is(text: &str) -> Result<InfoSystem, CliError> {
    let mut lines = content_lines(text);
    let missing = |what: &str| CliError::Parse {
        line: 0,
        message: format!("missing {what}"),
    };
    let (n, header) = lines.next().ok_or_else(|| missing("header"))?;
    if header.trim() != HEADER {
        return Err(CliError::Parse {
            line: n,
            message: format!("expected header {HEADER:?}"),
        });
    }
    let (n, hyp) = lines.next().ok_or_else(|| missing("hypothesis labels"))?;
    let hypotheses = labels(n, hyp)?;
    let (n, obs) = lines.next().ok_or_else(|| missing("observation labels"))?;
    let observations = labels(n, obs)?;

    let mut rows = Vec::new();
    let mut last = n;
    for (n, line) in lines {
        last = n;
        let row = line
            .split('\t')
            .map(|f| parse_number(n, f))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != observations.len() {
            return Err(CliError::Parse {
                line: n,
                message: format!("{} entries for {} observations", row.len(), observations.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != hypotheses.len() {
        return Err(CliError::Parse {
            line: last,
            message: format!("{} rows for {} hypotheses", rows.len(), hypotheses.len()),
        });
    }
    Ok(InfoSystem::new(hypotheses, observations, rows)?)
}

// Shortest text that parses back to the same f64. Twelve digits would lose
// enough that canonicalizing a written join no longer reproduces the join's
// curve CSV.
fn entry(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x}")
    }
}

pub fn write_is(system: &InfoSystem) -> String {
    let mut out = format!("{HEADER}\n");
    out.push_str(&system.hypothesis_labels().join("\t"));
    out.push('\n');
    out.push_str(&system.observation_labels().join("\t"));
    out.push('\n');
    for e in 0..system.n_hypotheses() {
        let row: Vec<String> = system.row(e).iter().map(|&x| entry(x)).collect();
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

/// One action per line, payoffs per hypothesis separated by tabs or spaces.
pub fn parse_payoff(text: &str) -> Result<PayoffMatrix, CliError> {
    let rows = content_lines(text)
        .map(|(n, line)| line.split_whitespace().map(|f| parse_number(n, f)).collect())
        .collect::<Result<Vec<Vec<f64>>, _>>()?;
    Ok(PayoffMatrix::new(rows)?)
}

/// A comma-separated list of probabilities, as taken by the oracle commands.
pub fn parse_distribution(text: &str) -> Result<infologic::Distribution, CliError> {
    let probs = text
        .split(',')
        .map(|f| parse_number(0, f))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(infologic::Distribution::new(probs)?)
}

pub fn value_report_text(report: &ValueReport) -> String {
    let mut out = String::from("score\th_p\th_q\th_fused\tmin_realized\tmax_realized\tguarantee\n");
    for s in &report.scores {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            s.score,
            sig12(s.h_p),
            sig12(s.h_q),
            sig12(s.h_fused),
            sig12(s.min_realized()),
            sig12(s.max_realized()),
            if s.guarantee_holds { "holds" } else { "VIOLATED" }
        );
    }
    let _ = writeln!(out, "couplings\t{}", report.couplings);
    out
}

pub fn value_report_csv(report: &ValueReport) -> String {
    let mut out = String::from("score,h_p,h_q,h_fused,min_realized,max_realized,guarantee_holds\n");
    for s in &report.scores {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            s.score,
            sig12(s.h_p),
            sig12(s.h_q),
            sig12(s.h_fused),
            sig12(s.min_realized()),
            sig12(s.max_realized()),
            s.guarantee_holds
        );
    }
    out
}

/// The curve and the diagonal in a unit square drawn 400 px wide, y up.
pub fn curve_svg(curve: &CanonicalCurve) -> String {
    const SIZE: f64 = 400.0;
    const PAD: f64 = 20.0;
    let px = |x: f64| sig12(PAD + x * SIZE);
    let py = |y: f64| sig12(PAD + (1.0 - y) * SIZE);
    let points: Vec<String> = curve
        .vertices()
        .iter()
        .map(|v| format!("{},{}", px(v.x), py(v.y)))
        .collect();
    let total = SIZE + 2.0 * PAD;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="{PAD}" y="{PAD}" width="{SIZE}" height="{SIZE}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#888" stroke-dasharray="4 4"/>"##,
        px(0.0),
        py(0.0),
        px(1.0),
        py(1.0)
    );
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="blue" stroke-width="2"/>"#,
        points.join(" ")
    );
    for v in curve.vertices() {
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="3" fill="blue"/>"#, px(v.x), py(v.y));
    }
    out.push_str("</svg>\n");
    out
}
