//! Report documents shared by the command-line tool and the bindings, with
//! deterministic JSON, CSV and Markdown renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::poly::GroebnerStatus;
use crate::orbit::{Classification, OrbitLabel, OrbitRecord, Signature};
use crate::scroll::ScrollReport;
use crate::secant::{ContactReport, Gr27Report, GrassmannCase, ScanRecord, TclOutcome};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Md,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Md),
            _ => Err(Error::Parse(format!("unknown format `{s}` (json, csv, md)"))),
        }
    }
}

/// Tangential-contact ideal and its Gröbner outcome for one case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TclRecord {
    pub case: GrassmannCase,
    /// `random` or `paper`.
    pub points: String,
    pub nvars: usize,
    pub generators: usize,
    pub outcome: TclOutcome,
}

/// Dual variety of one orbit closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualRecord {
    pub orbit: OrbitLabel,
    pub dim: usize,
    pub dual_dim: Option<usize>,
    pub partner: Option<OrbitLabel>,
    pub partner_dim: Option<usize>,
    /// `dual_dim` equals the orbit dimension of the table partner.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub signature: Signature,
    pub classification: Classification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportRecord {
    Scan(ScanRecord),
    Contact(ContactReport),
    Tcl(TclRecord),
    Orbit(OrbitRecord),
    Dual(DualRecord),
    Classification(ClassificationRecord),
    Scroll(ScrollReport),
    Oracle(Gr27Report),
}

impl ReportRecord {
    fn kind(&self) -> &'static str {
        match self {
            ReportRecord::Scan(_) => "scan",
            ReportRecord::Contact(_) => "contact",
            ReportRecord::Tcl(_) => "tcl",
            ReportRecord::Orbit(_) => "orbit",
            ReportRecord::Dual(_) => "dual",
            ReportRecord::Classification(_) => "classification",
            ReportRecord::Scroll(_) => "scroll",
            ReportRecord::Oracle(_) => "oracle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub modulus: u64,
    pub seed: u64,
    pub command: String,
    pub records: Vec<ReportRecord>,
    pub warnings: Vec<String>,
}

impl ReportDocument {
    pub fn new(ctx: &FieldContext, command: impl Into<String>) -> Self {
        ReportDocument {
            tool_version: TOOL_VERSION.to_string(),
            modulus: ctx.field.modulus(),
            seed: ctx.seed,
            command: command.into(),
            records: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn push(&mut self, record: ReportRecord) {
        self.records.push(record);
    }

    pub fn warn(&mut self, warning: impl Into<String>) {
        self.warnings.push(warning.into());
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Md => self.to_markdown(),
        }
    }

    /// One row per record; nested objects become dotted columns, lists are
    /// written as compact JSON.
    pub fn to_csv(&self) -> Result<String> {
        let rows = self.flat_rows()?;
        let header = columns(&rows);
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).map_err(csv_error)?;
        for row in &rows {
            w.write_record(header.iter().map(|h| cell(row, h))).map_err(csv_error)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_markdown(&self) -> Result<String> {
        let mut out = String::new();
        writeln!(out, "# skewrank {}", self.command).unwrap();
        writeln!(out).unwrap();
        writeln!(
            out,
            "version {}, modulus {}, seed {}",
            self.tool_version, self.modulus, self.seed
        )
        .unwrap();
        writeln!(out).unwrap();

        let scans: Vec<&ScanRecord> = self
            .records
            .iter()
            .filter_map(|r| match r {
                ReportRecord::Scan(s) => Some(s),
                _ => None,
            })
            .collect();
        let orbits: Vec<&OrbitRecord> = self
            .records
            .iter()
            .filter_map(|r| match r {
                ReportRecord::Orbit(o) => Some(o),
                _ => None,
            })
            .collect();
        if !scans.is_empty() {
            out.push_str(&scan_table(&scans));
        }
        if !orbits.is_empty() {
            out.push_str(&orbit_table_md(&orbits));
        }
        for r in &self.records {
            if let ReportRecord::Oracle(o) = r {
                out.push_str(&oracle_table(o));
            }
        }
        let rest: Vec<&ReportRecord> = self
            .records
            .iter()
            .filter(|r| !matches!(r, ReportRecord::Scan(_) | ReportRecord::Orbit(_) | ReportRecord::Oracle(_)))
            .collect();
        if !rest.is_empty() {
            let rows = rest.iter().map(|r| flatten_record(r)).collect::<Result<Vec<_>>>()?;
            out.push_str(&generic_table(&rows));
        }
        if !self.warnings.is_empty() {
            writeln!(out, "\n## Warnings\n").unwrap();
            for w in &self.warnings {
                writeln!(out, "- {w}").unwrap();
            }
        }
        Ok(out)
    }

    fn flat_rows(&self) -> Result<Vec<Vec<(String, String)>>> {
        self.records.iter().map(flatten_record).collect()
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

fn flatten_record(record: &ReportRecord) -> Result<Vec<(String, String)>> {
    let value = serde_json::to_value(record)?;
    let mut out = vec![("kind".to_string(), record.kind().to_string())];
    if let Value::Object(map) = value {
        flatten_into("", &map, &mut out);
    }
    Ok(out)
}

fn flatten_into(prefix: &str, map: &Map<String, Value>, out: &mut Vec<(String, String)>) {
    for (k, v) in map {
        if prefix.is_empty() && k == "kind" {
            continue;
        }
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(inner) => flatten_into(&key, inner, out),
            _ => out.push((key, scalar(v))),
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Union of keys in first-seen order.
fn columns(rows: &[Vec<(String, String)>]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for row in rows {
        for (k, _) in row {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    cols
}

fn cell<'a>(row: &'a [(String, String)], key: &str) -> &'a str {
    row.iter().find(|(k, _)| k == key).map_or("", |(_, v)| v.as_str())
}

fn md_row(cells: &[String]) -> String {
    let escaped: Vec<String> = cells.iter().map(|c| c.replace('|', "\\|")).collect();
    format!("| {} |\n", escaped.join(" | "))
}

fn md_header(cols: &[&str]) -> String {
    let names: Vec<String> = cols.iter().map(|c| c.to_string()).collect();
    let mut s = md_row(&names);
    s.push_str(&md_row(&vec!["---".to_string(); cols.len()]));
    s
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn scan_table(records: &[&ScanRecord]) -> String {
    let mut s = String::from("## Secant varieties\n\n");
    s.push_str(&md_header(&[
        "k", "n", "r", "Expected", "Actual", "Defect", "Defective", "Contact", "Verdict",
    ]));
    for r in records {
        s.push_str(&md_row(&[
            r.case.k.to_string(),
            r.case.n.to_string(),
            r.case.r.to_string(),
            r.expected_affine.to_string(),
            r.actual_affine.to_string(),
            r.defect.to_string(),
            if r.defect > 0 { "yes".into() } else { "no".into() },
            opt(r.contact_kernel),
            opt(r.verdict),
        ]));
    }
    s.push('\n');
    s
}

fn orbit_table_md(records: &[&OrbitRecord]) -> String {
    let mut s = String::from("## Orbits\n\n");
    s.push_str(&md_header(&["Orbit", "Normal form", "D", "Dual", "Partner"]));
    for r in records {
        s.push_str(&md_row(&[
            r.label.to_string(),
            r.form.clone(),
            r.dim.to_string(),
            opt(r.dual_dim),
            if r.ambiguous_partners.is_empty() {
                opt(r.dual_partner)
            } else {
                r.ambiguous_partners.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("/")
            },
        ]));
    }
    s.push('\n');
    s
}

fn oracle_table(report: &Gr27Report) -> String {
    let mut s = String::from("## Oracle checks\n\n");
    writeln!(s, "Chart: {}\n", report.convention).unwrap();
    s.push_str(&md_header(&["Check", "Passed", "Detail"]));
    for c in &report.checks {
        s.push_str(&md_row(&[
            c.name.clone(),
            if c.passed { "yes".into() } else { "no".into() },
            c.detail.clone(),
        ]));
    }
    if let Some(g) = &report.groebner {
        s.push_str(&md_row(&[
            "Gröbner basis".into(),
            if g.status == GroebnerStatus::Complete { "complete".into() } else { "inconclusive".into() },
            format!("{} elements, dimension {}", g.basis_size, opt(g.dimension)),
        ]));
    }
    s.push('\n');
    s
}

fn generic_table(rows: &[Vec<(String, String)>]) -> String {
    let cols = columns(rows);
    let refs: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut s = String::from("## Records\n\n");
    s.push_str(&md_header(&refs));
    for row in rows {
        let cells: Vec<String> = cols.iter().map(|c| cell(row, c).to_string()).collect();
        s.push_str(&md_row(&cells));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::secant::ContactReport;

    fn doc() -> ReportDocument {
        let mut d = ReportDocument::new(&FieldContext::default(), "contact");
        d.push(ReportRecord::Contact(ContactReport {
            case: GrassmannCase::new(2, 9, 5).unwrap(),
            kernel_dims: vec![1, 1, 1],
            value: Some(1),
            hyperplanes: 10,
            per_point: Vec::new(),
        }));
        d
    }

    #[test]
    fn json_round_trip() {
        let d = doc();
        let text = d.to_json().unwrap();
        assert!(text.contains("\"kernel\": 1"));
        assert!(text.contains("\"kind\": \"contact\""));
        assert_eq!(ReportDocument::from_json(&text).unwrap(), d);
    }

    #[test]
    fn csv_flattens_case() {
        let csv = doc().to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "kind,case.k,case.n,case.r,kernel_dims,kernel,hyperplanes");
        assert_eq!(lines.next().unwrap(), "contact,2,9,5,\"[1,1,1]\",1,10");
    }

    #[test]
    fn format_names() {
        assert_eq!("MD".parse::<Format>().unwrap(), Format::Md);
        assert!("xml".parse::<Format>().is_err());
    }
}
