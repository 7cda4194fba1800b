//! Deterministic rendering of verification reports.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::format_rational;
use crate::verify::{Cell, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Md,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" => Ok(Format::Md),
            other => Err(Error::DomainViolation(format!("unknown format `{other}`"))),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::DomainViolation(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn render(report: &VerificationReport, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
        Format::Md => Ok(to_markdown(report)),
    }
}

const COLUMNS: [&str; 15] = [
    "theorem",
    "n",
    "max_degree",
    "lambda",
    "class_size",
    "minimum",
    "bound",
    "bound_verdict",
    "expected",
    "argmin",
    "expected_codes",
    "attained_within_family",
    "family_within_attained",
    "broom_resolution",
    "pass",
];

fn verdict_word<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
}

fn row(c: &Cell) -> [String; 15] {
    let join = |codes: &[crate::canonical::CanonicalCode]| {
        codes.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(";")
    };
    [
        c.theorem.id().to_string(),
        c.n.to_string(),
        c.max_degree.to_string(),
        format_rational(&c.lambda),
        c.class_size.to_string(),
        format_rational(&c.minimum),
        format_rational(&c.bound),
        verdict_word(&c.bound_verdict),
        c.expected.label.clone(),
        join(&c.argmin),
        join(&c.expected.codes),
        c.expected.attained_within_family.to_string(),
        c.expected.family_within_attained.to_string(),
        c.broom_resolution.map(|r| verdict_word(&r)).unwrap_or_default(),
        c.pass.to_string(),
    ]
}

/// One row per cell; code lists are `;`-separated.
pub fn to_csv(report: &VerificationReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::DomainViolation(e.to_string());
    w.write_record(COLUMNS).map_err(io)?;
    for c in &report.cells {
        w.write_record(row(c)).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::DomainViolation(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// A human-readable table. Code lists are summarized by their sizes.
pub fn to_markdown(report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {} {} verification\n", report.tool, report.version);
    let _ = writeln!(out, "Overall: {}\n", if report.passed { "PASS" } else { "FAIL" });
    out.push_str("| theorem | n | Δ | λ | trees | min | bound | verdict | family | argmin | family size | ⊆ family | ⊇ family | pass |\n");
    out.push_str("|---|---|---|---|---|---|---|---|---|---|---|---|---|---|\n");
    for c in &report.cells {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            c.theorem.id(),
            c.n,
            c.max_degree,
            format_rational(&c.lambda),
            c.class_size,
            format_rational(&c.minimum),
            format_rational(&c.bound),
            verdict_word(&c.bound_verdict),
            c.expected.label,
            c.argmin.len(),
            c.expected.codes.len(),
            c.expected.attained_within_family,
            c.expected.family_within_attained,
            if c.pass { "yes" } else { "no" },
        );
    }
    out
}
