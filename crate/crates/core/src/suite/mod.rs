//! Named checks, selection by glob, and deterministic reports.

mod checks;
pub mod claims;
pub mod emit;

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::nbar::KappaRange;
use crate::ring::Prime;

pub use checks::registry;
pub use emit::{emit_formula, FormulaFormat, FORMULA_NAMES};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check_id: &'static str,
    pub status: Status,
    pub detail: String,
    pub artifacts: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repro: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub p: Prime,
    #[serde(serialize_with = "ser_range")]
    pub kappa: KappaRange,
    pub samples: usize,
    pub seed: u64,
}

fn ser_range<S: serde::Serializer>(r: &KappaRange, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}..{}", r.0, r.1))
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            p: Prime::new(5).expect("5 is prime"),
            kappa: KappaRange(1, 6),
            samples: 1000,
            seed: 0,
        }
    }
}

impl SuiteConfig {
    /// A seed for one check, independent of the order checks run in.
    pub fn seed_for(&self, check_id: &str) -> u64 {
        // FNV-1a
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in check_id.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        h ^ self.seed
    }

    pub fn repro(&self, check_id: &str) -> String {
        format!(
            "g2 verify '{check_id}' --p {} --kappa {}..{} --samples {} --seed {}",
            self.p.get(),
            self.kappa.0,
            self.kappa.1,
            self.samples,
            self.seed
        )
    }
}

/// What a check returns when it runs to completion.
pub struct Outcome {
    pub pass: bool,
    pub detail: String,
    pub artifacts: Value,
}

impl Outcome {
    pub fn new(pass: bool, detail: impl Into<String>, artifacts: Value) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
            artifacts,
        }
    }
}

pub type CheckFn = fn(&SuiteConfig) -> Result<Option<Outcome>>;

pub struct Check {
    pub id: &'static str,
    pub summary: &'static str,
    pub run: CheckFn,
}

/// Checks whose id matches any comma-separated glob; `all` selects everything.
pub fn select(selector: &str) -> Result<Vec<&'static Check>> {
    let reg = registry();
    let mut picked: Vec<&'static Check> = Vec::new();
    for part in selector.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if part == "all" {
            picked.extend(reg.iter());
            continue;
        }
        let pat = glob::Pattern::new(part).map_err(|e| Error::Config(format!("bad selector `{part}`: {e}")))?;
        let hits: Vec<&Check> = reg.iter().filter(|c| pat.matches(c.id)).collect();
        if hits.is_empty() {
            return Err(Error::Config(format!("selector `{part}` matches no check")));
        }
        picked.extend(hits);
    }
    if picked.is_empty() {
        return Err(Error::Config("empty selector".into()));
    }
    picked.sort_by_key(|c| c.id);
    picked.dedup_by_key(|c| c.id);
    Ok(picked)
}

pub fn run_check(check: &Check, cfg: &SuiteConfig) -> CheckResult {
    let (status, detail, artifacts) = match (check.run)(cfg) {
        Ok(Some(o)) => (if o.pass { Status::Pass } else { Status::Fail }, o.detail, o.artifacts),
        Ok(None) => (
            Status::Skipped,
            "not applicable for this configuration".to_string(),
            Value::Null,
        ),
        Err(e) => (Status::Fail, format!("error: {e}"), Value::Null),
    };
    CheckResult {
        check_id: check.id,
        repro: (status == Status::Fail).then(|| cfg.repro(check.id)),
        status,
        detail,
        artifacts,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub selector: String,
    pub config: SuiteConfig,
    pub summary: Summary,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let _ = writeln!(s, "{tag}  {:<34} {}", c.check_id, c.detail);
            if let Some(r) = &c.repro {
                let _ = writeln!(s, "      repro: {r}");
            }
        }
        let _ = writeln!(
            s,
            "{} passed, {} failed, {} skipped",
            self.summary.passed, self.summary.failed, self.summary.skipped
        );
        s
    }

    pub fn to_latex(&self) -> String {
        let mut s = String::from("\\begin{tabular}{lll}\n\\hline\ncheck & status & detail \\\\\n\\hline\n");
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Skipped => "skipped",
            };
            let _ = writeln!(
                s,
                "\\texttt{{{}}} & {status} & {} \\\\",
                latex_escape(c.check_id),
                latex_escape(&c.detail)
            );
        }
        s.push_str("\\hline\n\\end{tabular}\n");
        s
    }
}

fn latex_escape(s: &str) -> String {
    s.replace('\\', "\\textbackslash{}")
        .replace('_', "\\_")
        .replace('&', "\\&")
        .replace('%', "\\%")
        .replace('#', "\\#")
}

/// Runs the selected checks in parallel and assembles a report ordered by id.
pub fn run_suite(selector: &str, cfg: &SuiteConfig) -> Result<Report> {
    let picked = select(selector)?;
    let mut checks: Vec<CheckResult> = picked.par_iter().map(|c| run_check(c, cfg)).collect();
    checks.sort_by_key(|c| c.check_id);
    let count = |s| checks.iter().filter(|c| c.status == s).count();
    let summary = Summary {
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        selector: selector.to_string(),
        config: cfg.clone(),
        summary,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_unique_and_sorted_selection() {
        let reg = registry();
        let mut ids: Vec<&str> = reg.iter().map(|c| c.id).collect();
        ids.sort();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n);
        let sel = select("weyl.*").unwrap();
        assert!(sel.iter().all(|c| c.id.starts_with("weyl.")));
        assert!(sel.windows(2).all(|w| w[0].id < w[1].id));
    }

    #[test]
    fn unknown_selector() {
        assert!(matches!(select("nosuch.*"), Err(Error::Config(_))));
        assert!(matches!(select(""), Err(Error::Config(_))));
    }

    #[test]
    fn seeds_differ_per_check() {
        let cfg = SuiteConfig::default();
        assert_ne!(cfg.seed_for("a"), cfg.seed_for("b"));
        assert_eq!(cfg.seed_for("a"), cfg.seed_for("a"));
    }

    #[test]
    fn weyl_suite_passes() {
        let r = run_suite("weyl.*", &SuiteConfig::default()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.exit_code(), 0);
    }
}
