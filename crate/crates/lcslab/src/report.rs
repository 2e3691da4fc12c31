//! Structured JSON reports, their TSV views and atomic file output.

use std::io::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cli::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ReportOnly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub observed: Value,
    pub status: Status,
}

impl Check {
    /// Passes when `observed == expected`.
    pub fn equal<T: Serialize + PartialEq>(name: impl Into<String>, expected: T, observed: T) -> Self {
        let status = if expected == observed { Status::Pass } else { Status::Fail };
        Check { name: name.into(), expected: json!(expected), observed: json!(observed), status }
    }

    pub fn holds(name: impl Into<String>, observed: bool) -> Self {
        Self::equal(name, true, observed)
    }

    /// Recorded but never failing.
    pub fn report_only<T: Serialize>(name: impl Into<String>, expected: Value, observed: T) -> Self {
        Check { name: name.into(), expected, observed: json!(observed), status: Status::ReportOnly }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub input_sha256: Option<String>,
    pub tags: Vec<String>,
    pub warnings: Vec<String>,
    pub started_unix: u64,
    pub finished_unix: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub meta: Meta,
    pub results: Value,
    pub checks: Vec<Check>,
    /// Set when the run stopped early; `results` then holds what was done.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn now() -> u64 {
    std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

impl Report {
    pub fn new(config: RunConfig) -> Self {
        let t = now();
        Report {
            meta: Meta {
                tool: "lcslab",
                version: env!("CARGO_PKG_VERSION"),
                config,
                input_sha256: None,
                tags: Vec::new(),
                warnings: Vec::new(),
                started_unix: t,
                finished_unix: t,
            },
            results: Value::Null,
            checks: Vec::new(),
            error: None,
        }
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn tag(&mut self, t: &str) {
        if !self.meta.tags.iter().any(|x| x == t) {
            self.meta.tags.push(t.to_string());
        }
    }

    /// Sets `results[key] = value`, turning `results` into an object.
    pub fn set(&mut self, key: &str, value: Value) {
        if !self.results.is_object() {
            self.results = json!({});
        }
        self.results[key] = value;
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn finish(&mut self) {
        self.meta.finished_unix = now();
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The result payload alone, for comparing runs.
    pub fn results_json(&self) -> String {
        serde_json::to_string(&self.results).expect("results serialize")
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let s = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::ReportOnly => "info",
            };
            out.push_str(&format!("{s:>4}  {}\n", c.name));
        }
        out
    }
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Aligned TSV of a `rows x columns` table with labelled rows and degree
/// columns `0..`.
pub fn tsv_matrix(label: &str, rows: &[Vec<usize>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut cells: Vec<Vec<String>> = Vec::with_capacity(rows.len() + 1);
    let mut header = vec![String::from("i\\d")];
    header.extend((0..width).map(|d| d.to_string()));
    cells.push(header);
    for (i, row) in rows.iter().enumerate() {
        let mut line = vec![format!("{label}{}", i + 1)];
        line.extend(row.iter().map(|x| x.to_string()));
        cells.push(line);
    }
    let mut col_w = vec![0; width + 1];
    for line in &cells {
        for (j, c) in line.iter().enumerate() {
            col_w[j] = col_w[j].max(c.len());
        }
    }
    let mut out = String::new();
    for line in &cells {
        let padded: Vec<String> = line.iter().enumerate().map(|(j, c)| format!("{c:>w$}", w = col_w[j])).collect();
        out.push_str(&padded.join("\t"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_statuses() {
        assert_eq!(Check::equal("a", 3, 3).status, Status::Pass);
        assert_eq!(Check::equal("a", 3, 4).status, Status::Fail);
        assert_eq!(Check::report_only("a", json!(1), 2).status, Status::ReportOnly);
        let s = serde_json::to_string(&Check::report_only("a", json!(1), 2)).unwrap();
        assert!(s.contains("\"report-only\""));
    }

    #[test]
    fn tsv_is_aligned() {
        let t = tsv_matrix("L", &[vec![1, 2, 10], vec![0, 0, 3]]);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], " L1\t1\t2\t10");
        assert_eq!(lines[2], " L2\t0\t0\t 3");
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.json");
        write_atomic(&p, "one").unwrap();
        write_atomic(&p, "two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
