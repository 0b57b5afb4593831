//! Suite reports: a convention header, the claim table and timings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::generators::{f_factors, format_factors, hchain_t_factors};
use crate::suite::{verify_all, Claim, Status, SuiteConfig, SuiteRun};

pub const TOOL: &str = "lmod";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub ctx: Context,
    pub config: SuiteConfig,
    /// Human-readable statement of every convention the verdicts depend on.
    pub conventions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_offsets: Option<Vec<i64>>,
}

impl Header {
    pub fn new(ctx: &Context, config: &SuiteConfig, label_offsets: Option<Vec<i64>>) -> Header {
        Header {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            ctx: *ctx,
            config: *config,
            conventions: conventions(ctx, config),
            label_offsets,
        }
    }
}

/// The convention lines embedded in every report.
pub fn conventions(ctx: &Context, config: &SuiteConfig) -> Vec<String> {
    let top = ctx.max_sigma();
    vec![
        "words are read right to left: the rightmost letter acts first".into(),
        format!("s_i is the anticlockwise half-twist exchanging p_i and p_(i+1), 1 <= i <= {top}"),
        "h_i = s_i s_(i+1) s_i".into(),
        "t_(i,j) = (s_i ... s_(j-1))^(j-i+1); t_(i,2n+2) is taken as t_(1,i-1) for i >= 3".into(),
        format!("r1 = s1 s2 ... s{top}; r = half twist on {} strands", ctx.points()),
        format!("F = {}", format_factors(&f_factors(ctx))),
        format!("C = {}", format_factors(&hchain_t_factors(ctx))),
        "disk: Artin action on F_(2n+1); star: disk modulo the full twist; sphere: outer action with psi".into(),
        format!(
            "oracle budget: {} free-group letters per intermediate image",
            config.budget_letters
        ),
        "cover: sheet s above the lifted arc l_a^s, sheet s - (a mod 2) below; deck rotation s -> s+1".into(),
        format!(
            "twist action x -> x {} <x,c>c in a symplectic basis with standard form",
            if config.conventions.twist_sign > 0 { "+" } else { "-" }
        ),
        "homology claims are necessary conditions only: the homology representation is not faithful".into(),
    ]
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub header: Header,
    pub claims: Vec<Claim>,
    /// Microseconds per claim id; omitted when reports must be reproducible
    /// byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_us: Option<BTreeMap<String, u64>>,
    pub summary: Summary,
}

impl Report {
    pub fn from_run(ctx: &Context, config: &SuiteConfig, run: SuiteRun, with_timings: bool) -> Report {
        let summary = summarize(&run.claims);
        Report {
            header: Header::new(ctx, config, run.label_offsets),
            claims: run.claims,
            timings_us: with_timings.then_some(run.timings_us),
            summary,
        }
    }

    /// Runs the whole suite.
    pub fn generate(ctx: &Context, config: &SuiteConfig, with_timings: bool) -> Report {
        Report::from_run(ctx, config, verify_all(ctx, config), with_timings)
    }

    /// 0 if every claim passed, 1 if any failed, 3 if some were skipped.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.skipped > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Invalid(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let h = &self.header;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} {}  n={} k={} g={}",
            h.tool,
            h.version,
            h.ctx.n(),
            h.ctx.k(),
            h.ctx.g()
        );
        for line in &h.conventions {
            let _ = writeln!(out, "  # {line}");
        }
        if let Some(offsets) = &h.label_offsets {
            let _ = writeln!(out, "  # sheet of gamma_i^1 for i = 1..: {offsets:?}");
        }
        let width = self.claims.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.claims {
            let _ = write!(out, "{}  {:<width$}  [{}] {}", c.status, c.id, c.group, c.statement);
            if let Some(us) = self.timings_us.as_ref().and_then(|t| t.get(&c.id)) {
                let _ = write!(out, "  ({:.1} ms)", *us as f64 / 1000.0);
            }
            out.push('\n');
            if let Some(q) = &c.qualifier {
                let _ = writeln!(out, "      {q}");
            }
            if let Some(note) = &c.note {
                let _ = writeln!(out, "      note: {note}");
            }
            if c.status == Status::Fail {
                for line in failing_items(c) {
                    let _ = writeln!(out, "      failed: {line}");
                }
            }
        }
        let s = self.summary;
        let _ = writeln!(out, "{} passed, {} failed, {} skipped", s.pass, s.fail, s.skipped);
        out
    }
}

fn summarize(claims: &[Claim]) -> Summary {
    let mut s = Summary::default();
    for c in claims {
        match c.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::Skipped => s.skipped += 1,
        }
    }
    s
}

fn failing_items(c: &Claim) -> Vec<String> {
    let Some(w) = &c.witness else {
        return Vec::new();
    };
    let mut out: Vec<String> = w
        .equalities
        .iter()
        .filter(|e| !e.passed())
        .map(|e| e.label.clone())
        .collect();
    out.extend(w.matrices.iter().filter(|m| !m.passed()).map(|m| m.label.clone()));
    out.extend(w.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()));
    if let Some(cert) = &w.certificate {
        out.extend(
            cert.targets
                .iter()
                .filter(|t| !t.equal)
                .map(|t| format!("{} = {}", t.target, t.witness)),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let ctx = Context::new(1, 3).unwrap();
        let report = Report::generate(&ctx, &SuiteConfig::default(), true);
        assert_eq!(report.exit_code(), 0);
        let back = Report::from_json(&report.to_json().unwrap()).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn text_lists_every_claim() {
        let ctx = Context::new(1, 3).unwrap();
        let report = Report::generate(&ctx, &SuiteConfig::default(), false);
        let text = report.to_text();
        for c in &report.claims {
            assert!(text.contains(&c.id));
        }
        assert!(text.contains("necessary condition only"));
    }

    #[test]
    fn reports_without_timings_are_reproducible() {
        let ctx = Context::new(2, 3).unwrap();
        let config = SuiteConfig::default();
        let a = Report::generate(&ctx, &config, false).to_json().unwrap();
        let b = Report::generate(&ctx, &config, false).to_json().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exit_code_for_skips() {
        let ctx = Context::new(9, 3).unwrap();
        let report = Report::generate(&ctx, &SuiteConfig::default(), false);
        assert_eq!(report.exit_code(), 3);
    }
}
