//! The tab-separated table of theorem checks.

use std::fmt::Write;
use std::time::Duration;

use cartan_core::deform::TheoremReport;
use cartan_core::families::{Family, FamilySpec};

pub const HEADER: &str = "family\tn\tp\tlisted\tspan\th2\tmatch\twall_time";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch,
    Error(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub spec: FamilySpec,
    pub listed: Option<usize>,
    pub span: Option<usize>,
    pub h2: Option<usize>,
    pub verdict: Verdict,
    pub wall_time: Duration,
}

impl Row {
    pub fn from_report(r: &TheoremReport, wall_time: Duration) -> Self {
        Row {
            spec: r.spec,
            listed: Some(r.listed),
            span: r.span,
            h2: r.h2,
            verdict: if r.matched() { Verdict::Match } else { Verdict::Mismatch },
            wall_time,
        }
    }

    pub fn error(spec: FamilySpec, msg: impl Into<String>) -> Self {
        Row {
            spec,
            listed: None,
            span: None,
            h2: None,
            verdict: Verdict::Error(msg.into()),
            wall_time: Duration::ZERO,
        }
    }
}

/// Rows in insertion order. Wall times are rendered only on request so that
/// repeated runs produce identical bytes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResultTable {
    pub rows: Vec<Row>,
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

impl ResultTable {
    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.verdict == Verdict::Match)
    }

    pub fn total_time(&self) -> Duration {
        self.rows.iter().map(|r| r.wall_time).sum()
    }

    pub fn render(&self, timing: bool) -> String {
        let mut s = String::from(HEADER);
        s.push('\n');
        for r in &self.rows {
            let n = if r.spec.family == Family::M {
                "-".to_string()
            } else {
                r.spec.n.to_string()
            };
            let verdict = match &r.verdict {
                Verdict::Match => "match".to_string(),
                Verdict::Mismatch => "mismatch".to_string(),
                Verdict::Error(e) => format!("error: {}", e.replace(['\t', '\n'], " ")),
            };
            let time = if timing {
                format!("{:.3}", r.wall_time.as_secs_f64())
            } else {
                "-".to_string()
            };
            writeln!(
                s,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.spec.family,
                n,
                r.spec.p,
                opt(r.listed),
                opt(r.span),
                opt(r.h2),
                verdict,
                time
            )
            .unwrap();
        }
        s
    }
}
