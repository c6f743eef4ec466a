//! JSON verification reports: one record per check, stable key order.

use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TestReport {
    pub test: String,
    pub statistic: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl TestReport {
    pub fn new(test: &str, statistic: &str, value: f64, threshold: f64) -> Self {
        Self {
            test: test.to_string(),
            statistic: statistic.to_string(),
            value,
            threshold,
            pass: value <= threshold,
        }
    }

    /// For checks where larger is better (none currently) or boolean gates.
    pub fn gate(test: &str, statistic: &str, pass: bool) -> Self {
        Self {
            test: test.to_string(),
            statistic: statistic.to_string(),
            value: if pass { 0.0 } else { 1.0 },
            threshold: 0.5,
            pass,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ReportSet {
    pub reports: Vec<TestReport>,
}

impl ReportSet {
    pub fn push(&mut self, report: TestReport) {
        self.reports.push(report);
    }

    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn write_json(&self, path: &Path) -> std::io::Result<()> {
        let file = std::fs::File::create(path)?;
        let mut out = std::io::BufWriter::new(file);
        serde_json::to_writer_pretty(&mut out, self)?;
        out.write_all(b"\n")
    }

    pub fn read_json(path: &Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(std::io::Error::other)
    }

    /// Fixed-width text table, one line per report.
    pub fn summary_table(&self) -> String {
        let mut out = String::from(format!(
            "{:<44} {:>10} {:>12} {:>12}  {}\n",
            "test", "statistic", "value", "threshold", "result"
        ));
        for r in &self.reports {
            out.push_str(&format!(
                "{:<44} {:>10} {:>12.4e} {:>12.4e}  {}\n",
                r.test,
                r.statistic,
                r.value,
                r.threshold,
                if r.pass { "pass" } else { "FAIL" }
            ));
        }
        out
    }
}
