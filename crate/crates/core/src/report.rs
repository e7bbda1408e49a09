//! Hypothesis reports: the structured output format shared by every
//! certification command.
//!
//! A report is a context, an ordered list of checks, and an overall
//! verdict. Each check carries the mathematical criterion it certifies (its
//! anchor); a check with an empty anchor is a construction-time failure.
//! The `cited-not-checked` status marks steps that rest on cited results
//! (existence statements the artifact cannot verify); they are always
//! displayed and never flip a verdict.

use serde::Serialize;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
    CitedNotChecked,
}

impl CheckStatus {
    fn label(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::NotApplicable => "n/a ",
            CheckStatus::CitedNotChecked => "cite",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub evidence: String,
    pub anchor: String,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        status: CheckStatus,
        evidence: impl Into<String>,
        anchor: impl Into<String>,
    ) -> Self {
        let check = Check {
            name: name.into(),
            status,
            evidence: evidence.into(),
            anchor: anchor.into(),
        };
        assert!(
            !check.anchor.trim().is_empty(),
            "check `{}` has an empty anchor",
            check.name
        );
        check
    }

    pub fn pass(name: impl Into<String>, evidence: impl Into<String>, anchor: impl Into<String>) -> Self {
        Check::new(name, CheckStatus::Pass, evidence, anchor)
    }

    pub fn fail(name: impl Into<String>, evidence: impl Into<String>, anchor: impl Into<String>) -> Self {
        Check::new(name, CheckStatus::Fail, evidence, anchor)
    }

    pub fn outcome(
        name: impl Into<String>,
        ok: bool,
        evidence: impl Into<String>,
        anchor: impl Into<String>,
    ) -> Self {
        Check::new(
            name,
            if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            evidence,
            anchor,
        )
    }
}

/// The context block of a report: which parameters the checks refer to.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReportContext {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub level: Option<u64>,
    #[serde(rename = "a", skip_serializing_if = "Option::is_none")]
    pub exponent: Option<i64>,
    #[serde(rename = "ell", skip_serializing_if = "Option::is_none")]
    pub ell: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub context: ReportContext,
    pub checks: Vec<Check>,
    pub verdict: bool,
}

impl HypothesisReport {
    /// Assemble a report; the verdict is true iff no applicable check
    /// failed (not-applicable and cited-not-checked entries never flip it).
    pub fn new(context: ReportContext, checks: Vec<Check>) -> Self {
        let verdict = checks.iter().all(|c| c.status != CheckStatus::Fail);
        HypothesisReport {
            context,
            checks,
            verdict,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut header = self.context.command.clone();
        if let Some(p) = self.context.p {
            let _ = write!(header, " p={p}");
        }
        if let Some(n) = self.context.level {
            let _ = write!(header, " N={n}");
        }
        if let Some(a) = self.context.exponent {
            let _ = write!(header, " a={a}");
        }
        if let Some(ell) = self.context.ell {
            let _ = write!(header, " l={ell}");
        }
        if let Some(mode) = &self.context.mode {
            let _ = write!(header, " mode={mode}");
        }
        if let Some(precision) = self.context.precision {
            let _ = write!(header, " precision={precision}");
        }
        let verdict = if self.verdict { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{header}: {verdict}");
        if let Some(detail) = &self.context.detail {
            let _ = writeln!(out, "  note: {detail}");
        }
        for check in &self.checks {
            let _ = writeln!(
                out,
                "  [{}] {:<44} | {:<40} | {}",
                check.status.label(),
                check.name,
                check.evidence,
                check.anchor
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_logic() {
        let ctx = ReportContext {
            command: "test".into(),
            ..Default::default()
        };
        let report = HypothesisReport::new(
            ctx.clone(),
            vec![
                Check::pass("a", "e", "anchor"),
                Check::new("b", CheckStatus::NotApplicable, "e", "anchor"),
                Check::new("c", CheckStatus::CitedNotChecked, "e", "anchor"),
            ],
        );
        assert!(report.verdict);

        let failing = HypothesisReport::new(
            ctx,
            vec![Check::pass("a", "e", "anchor"), Check::fail("b", "e", "anchor")],
        );
        assert!(!failing.verdict);
    }

    #[test]
    #[should_panic(expected = "empty anchor")]
    fn empty_anchor_is_a_build_failure() {
        let _ = Check::pass("a", "evidence", "  ");
    }

    #[test]
    fn json_shape_is_stable() {
        let report = HypothesisReport::new(
            ReportContext {
                command: "hunt".into(),
                p: Some(13),
                level: Some(1),
                exponent: Some(3),
                ell: Some(5),
                ..Default::default()
            },
            vec![Check::pass("x", "y", "z")],
        );
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["context"]["p"], 13);
        assert_eq!(json["context"]["ell"], 5);
        assert_eq!(json["checks"][0]["status"], "pass");
        assert_eq!(json["verdict"], true);
    }
}
