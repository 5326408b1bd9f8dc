//! Rendering of [`ComparisonReport`]s.
//!
//! * CSV: one row per cell, `indicator,reference_method,dataset,mean,std,fold_count`,
//!   full precision so the file can be read back losslessly.
//! * Markdown: one table per indicator, reference methods as rows, datasets
//!   as columns, each cell `mean (std)` with two decimals. Distances are
//!   shown ×10² and hypervolume ×10³.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use pareto_judge_core::Indicator;

use crate::aggregate::{ComparisonReport, ReportRow};
use crate::error::{Error, Result};
use crate::records::is_identifier;

pub const REPORT_HEADER: [&str; 6] =
    ["indicator", "reference_method", "dataset", "mean", "std", "fold_count"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(format!("unknown report format `{other}` (expected csv or markdown)")),
        }
    }
}

/// Presentation multiplier and block title of an indicator.
pub fn display_scale(indicator: Indicator) -> (f64, String) {
    match indicator {
        Indicator::Ed | Indicator::Gd => (100.0, format!("{indicator} (×10²)")),
        Indicator::Hv => (1000.0, format!("{indicator} (×10³)")),
        Indicator::Sdr | Indicator::Ndr => (1.0, indicator.to_string()),
    }
}

/// `mean (std)` with two decimals after scaling.
pub fn format_cell(mean: f64, std: f64, scale: f64) -> String {
    format!("{:.2} ({:.2})", mean * scale + 0.0, std * scale + 0.0)
}

pub fn render_report(report: &ComparisonReport, format: ReportFormat) -> Result<String> {
    if report.rows.is_empty() {
        return Err(Error::Invalid("report has no rows".into()));
    }
    Ok(match format {
        ReportFormat::Csv => render_csv(report),
        ReportFormat::Markdown => render_markdown(report),
    })
}

fn render_csv(report: &ComparisonReport) -> String {
    let mut out = REPORT_HEADER.join(",");
    out.push('\n');
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.indicator, r.reference_method, r.dataset, r.mean, r.std, r.fold_count
        );
    }
    out
}

fn first_seen<'a>(items: impl Iterator<Item = &'a str>) -> Vec<&'a str> {
    let mut out: Vec<&str> = Vec::new();
    for item in items {
        if !out.contains(&item) {
            out.push(item);
        }
    }
    out
}

fn render_markdown(report: &ComparisonReport) -> String {
    let mut out = String::new();
    if !report.moo_method.is_empty() {
        let folds = report.fold_count();
        let noun = if folds == 1 { "fold" } else { "folds" };
        let _ = writeln!(out, "# {} against reference methods ({folds} {noun})\n", report.moo_method);
    }
    let mut indicators: Vec<Indicator> = Vec::new();
    for r in &report.rows {
        if !indicators.contains(&r.indicator) {
            indicators.push(r.indicator);
        }
    }
    for (k, &indicator) in indicators.iter().enumerate() {
        let rows: Vec<&ReportRow> = report.rows.iter().filter(|r| r.indicator == indicator).collect();
        let datasets = first_seen(rows.iter().map(|r| r.dataset.as_str()));
        let methods = first_seen(rows.iter().map(|r| r.reference_method.as_str()));
        let (scale, title) = display_scale(indicator);
        if k > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "## {title}\n");
        let _ = writeln!(out, "| Reference | {} |", datasets.join(" | "));
        let _ = writeln!(out, "|---|{}", "---|".repeat(datasets.len()));
        for m in methods {
            let cells: Vec<String> = datasets
                .iter()
                .map(|d| {
                    rows.iter()
                        .find(|r| r.reference_method == m && r.dataset == *d)
                        .map_or_else(|| "-".to_string(), |r| format_cell(r.mean, r.std, scale))
                })
                .collect();
            let _ = writeln!(out, "| {m} | {} |", cells.join(" | "));
        }
    }
    out
}

/// Reads a report written in the CSV format. The multi-solution method is not
/// part of that schema and is left empty.
pub fn read_report_csv<R: Read>(reader: R, origin: &str) -> Result<ComparisonReport> {
    let mut rdr = csv::ReaderBuilder::new().quoting(false).flexible(true).from_reader(reader);
    let header = rdr.headers().map_err(|e| Error::parse(origin, 1, e.to_string()))?.clone();
    let names: Vec<&str> = header.iter().map(str::trim).collect();
    if names != REPORT_HEADER {
        return Err(Error::parse(
            origin,
            1,
            format!("header `{}` does not match `{}`", names.join(","), REPORT_HEADER.join(",")),
        ));
    }
    let mut rows = Vec::new();
    for row in rdr.records() {
        let row =
            row.map_err(|e| Error::parse(origin, e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != REPORT_HEADER.len() {
            return Err(Error::parse(origin, line, format!("expected 6 fields, found {}", row.len())));
        }
        let bad = |col: usize, what: &str| {
            Error::parse(
                origin,
                line,
                format!("column `{}`: {what}, got `{}`", REPORT_HEADER[col], &row[col]),
            )
        };
        let indicator: Indicator = row[0].parse().map_err(|_| bad(0, "unknown indicator"))?;
        for col in [1, 2] {
            if !is_identifier(row[col].trim()) {
                return Err(bad(col, "expected an identifier"));
            }
        }
        let number = |col: usize| -> Result<f64> {
            match row[col].trim().parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(bad(col, "expected a finite number")),
            }
        };
        let (mean, std) = (number(3)?, number(4)?);
        if std < 0.0 {
            return Err(bad(4, "standard deviation must be non-negative"));
        }
        let fold_count: usize = row[5].trim().parse().map_err(|_| bad(5, "expected a positive integer"))?;
        if fold_count == 0 {
            return Err(bad(5, "expected a positive integer"));
        }
        rows.push(ReportRow {
            indicator,
            reference_method: row[1].trim().to_string(),
            dataset: row[2].trim().to_string(),
            mean,
            std,
            fold_count,
        });
    }
    Ok(ComparisonReport { moo_method: String::new(), rows })
}

pub fn parse_report_csv(path: &Path) -> Result<ComparisonReport> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_report_csv(file, &path.display().to_string())
}
