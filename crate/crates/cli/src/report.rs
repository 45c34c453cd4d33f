//! The report every command produces, and its JSON, CSV and text forms.

use serde::Serialize;
use serde_json::Value;

use crate::Format;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Config {
    pub p: Option<u32>,
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub k: Option<usize>,
    pub max_degree: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

/// One re-checkable claim: what was checked, about which object, and where
/// its data sits in `results`.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub kind: String,
    pub degree_or_class: String,
    pub status: Status,
    pub stage: Option<String>,
    pub data_ref: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(kind: &str, object: impl ToString, passed: bool) -> Self {
        Check {
            kind: kind.to_string(),
            degree_or_class: object.to_string(),
            status: if passed { Status::Pass } else { Status::Fail },
            stage: None,
            data_ref: None,
            detail: None,
        }
    }

    /// A check whose outcome is the error, if any.
    pub fn from_result(kind: &str, object: impl ToString, outcome: Result<(), String>) -> Self {
        let mut c = Check::new(kind, object, outcome.is_ok());
        c.detail = outcome.err();
        c
    }

    pub fn stage(mut self, stage: impl ToString) -> Self {
        self.stage = Some(stage.to_string());
        self
    }

    pub fn data_ref(mut self, r: impl ToString) -> Self {
        self.data_ref = Some(r.to_string());
        self
    }

    pub fn detail(mut self, d: impl ToString) -> Self {
        self.detail = Some(d.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Totals {
    pub checks: usize,
    pub passed: usize,
}

/// Rows for the CSV and text forms.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub config: Config,
    pub results: Vec<Value>,
    pub certificates: Vec<Check>,
    pub totals: Totals,
    pub timing_ms: u64,
    #[serde(skip)]
    pub table: Table,
}

impl Report {
    pub fn new(config: Config, table: Table) -> Self {
        Report {
            config,
            table,
            ..Default::default()
        }
    }

    pub fn check(&mut self, c: Check) {
        self.totals.checks += 1;
        if c.passed() {
            self.totals.passed += 1;
        }
        self.certificates.push(c);
    }

    pub fn first_failure(&self) -> Option<String> {
        self.certificates.iter().find(|c| !c.passed()).map(|c| {
            let mut msg = format!("{} check failed for {}", c.kind, c.degree_or_class);
            if let Some(d) = &c.detail {
                msg.push_str(": ");
                msg.push_str(d);
            }
            msg
        })
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(|e| e.to_string())?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.header)
                    .map_err(|e| e.to_string())?;
                for row in &self.table.rows {
                    w.write_record(row).map_err(|e| e.to_string())?;
                }
                String::from_utf8(w.into_inner().map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())
            }
            Format::Text => Ok(self.text()),
        }
    }

    fn text(&self) -> String {
        let t = &self.table;
        let mut widths: Vec<usize> = t.header.iter().map(|h| h.chars().count()).collect();
        for row in &t.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}", w = *w))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&t.header);
        for row in &t.rows {
            out.push_str(&line(row));
        }
        for c in self.certificates.iter().filter(|c| !c.passed()) {
            out.push_str(&format!("FAILED {} {}", c.kind, c.degree_or_class));
            if let Some(d) = &c.detail {
                out.push_str(&format!(": {d}"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "checks passed: {}/{}\n",
            self.totals.passed, self.totals.checks
        ));
        out
    }
}
