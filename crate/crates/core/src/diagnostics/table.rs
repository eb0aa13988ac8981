use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;

/// Columnar numeric table rendered as comma-separated text with a header row.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.headers.len(), "row width");
        self.rows.push(row);
    }

    pub fn headers(&self) -> &[String] {
        &self.headers
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.headers.join(",");
        s.push('\n');
        for row in &self.rows {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{v:e}");
            }
            s.push('\n');
        }
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

/// One line of `summary.rec`.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRecord {
    pub name: String,
    pub statistic: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl SummaryRecord {
    /// Passes when `statistic <= tolerance`.
    pub fn at_most(name: &str, statistic: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            statistic,
            tolerance,
            pass: statistic <= tolerance,
        }
    }

    /// Passes when `statistic > threshold`.
    pub fn above(name: &str, statistic: f64, threshold: f64) -> Self {
        Self {
            name: name.to_string(),
            statistic,
            tolerance: threshold,
            pass: statistic > threshold,
        }
    }

    pub fn to_line(&self) -> String {
        format!(
            "name={} statistic={:e} tolerance={:e} pass={}",
            self.name, self.statistic, self.tolerance, self.pass
        )
    }
}

pub fn write_summary(path: &Path, records: &[SummaryRecord]) -> Result<()> {
    let mut s = String::new();
    for r in records {
        s.push_str(&r.to_line());
        s.push('\n');
    }
    std::fs::write(path, s)?;
    Ok(())
}
