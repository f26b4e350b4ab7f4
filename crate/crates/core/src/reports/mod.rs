//! Verification suites and the inclusion diagram, as deterministic JSON.

mod diagram;
mod suites;

use serde::Serialize;

use crate::constructions::Params;
use crate::error::{Error, Result};
use crate::verdict::Verdict;

pub use diagram::{inclusion_diagram, Diagram, Evidence, InclusionEdge};
pub use suites::{
    check_classifiers, check_constructions, check_core, check_iso, check_views, extension_scan, ExtensionScan,
};

/// Bumped whenever a report's shape changes.
pub const SCHEMA: u32 = 1;

pub const SUITES: [&str; 6] = ["core", "views", "iso", "classifiers", "constructions", "all"];

/// One named invariant and whether it held.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: String,
    pub id: String,
    pub pass: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

impl Check {
    pub fn new(suite: &str, id: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check { suite: suite.into(), id: id.into(), pass, detail: detail.into(), verdict: None }
    }

    pub fn with_verdict(mut self, v: Verdict) -> Self {
        self.verdict = Some(v);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub params: Params,
    pub checks: Vec<Check>,
    pub failures: usize,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

/// Pretty JSON with a trailing newline. No timings or paths go in, so reruns are byte-identical.
pub fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).unwrap_or_default();
    s.push('\n');
    s
}

/// Run one suite, or all of them.
pub fn verify(suite: &str, p: &Params) -> Result<SuiteReport> {
    let checks = match suite {
        "core" => check_core(p)?,
        "views" => check_views(p)?,
        "iso" => check_iso(p)?,
        "classifiers" => check_classifiers(p)?,
        "constructions" => check_constructions(p)?,
        "all" => {
            let mut v = check_core(p)?;
            v.extend(check_views(p)?);
            v.extend(check_iso(p)?);
            v.extend(check_classifiers(p)?);
            v.extend(check_constructions(p)?);
            v
        }
        _ => {
            return Err(Error::PreconditionViolated(format!(
                "unknown suite {suite}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    let failures = checks.iter().filter(|c| !c.pass).count();
    Ok(SuiteReport { schema: SCHEMA, suite: suite.into(), params: *p, checks, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Params {
        Params { window: 24, steps: 24, ..Params::default() }
    }

    #[test]
    fn suites_pass_on_a_small_window() {
        for suite in ["core", "iso", "classifiers", "constructions"] {
            let r = verify(suite, &small()).unwrap();
            let bad: Vec<_> = r.checks.iter().filter(|c| !c.pass).map(|c| format!("{}: {}", c.id, c.detail)).collect();
            assert!(bad.is_empty(), "{suite}: {bad:?}");
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(verify("everything", &small()), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn reports_carry_no_timings() {
        let json = verify("iso", &small()).unwrap().to_json();
        assert!(json.starts_with("{\n  \"schema\": 1,"));
        assert_eq!(json, verify("iso", &small()).unwrap().to_json());
    }
}
