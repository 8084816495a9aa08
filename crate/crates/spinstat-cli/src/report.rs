//! Machine-readable verification reports.
//!
//! Reports are deterministic for a fixed configuration: the timestamp field
//! is populated only from the SOURCE_DATE_EPOCH environment variable and is
//! null otherwise, so identical runs produce byte-identical JSON.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub suite: String,
    pub particles: usize,
    pub two_s: i32,
    pub orbital_dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub sense: String,
    pub max_n: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub config: SuiteConfig,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub timestamp: Option<u64>,
}

impl VerificationReport {
    pub fn new(config: SuiteConfig, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        let failed = checks.len() - passed;
        let timestamp = std::env::var("SOURCE_DATE_EPOCH")
            .ok()
            .and_then(|v| v.parse::<u64>().ok());
        VerificationReport { config, checks, passed, failed, timestamp }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialize report")
    }
}
