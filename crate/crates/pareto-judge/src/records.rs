//! Per-fold experiment results in CSV form.
//!
//! Two schemas are accepted, selected by [`PayloadKind`]:
//!
//! ```text
//! dataset,method,fold,solution_id,tp,fn,fp,tn
//! dataset,method,fold,solution_id,obj_1,...,obj_M
//! ```
//!
//! Comma separated, `.` decimal point, UTF-8, header first, no quoting.
//! Identifiers are limited to `[A-Za-z0-9_-]`.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use pareto_judge_core::{ConfusionMatrix, ObjectivePoint};

use crate::error::{Error, Result};

pub const COUNTS_HEADER: [&str; 8] = ["dataset", "method", "fold", "solution_id", "tp", "fn", "fp", "tn"];
const KEY_COLUMNS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PayloadKind {
    Counts,
    Objectives,
}

impl FromStr for PayloadKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "counts" => Ok(PayloadKind::Counts),
            "objectives" => Ok(PayloadKind::Objectives),
            other => Err(format!("unknown payload kind `{other}` (expected counts or objectives)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Counts(ConfusionMatrix),
    Objectives(ObjectivePoint),
}

impl Payload {
    /// Objective vector for dominance-based indicators; counts map to (TPR, TNR).
    pub fn objective_point(&self) -> ObjectivePoint {
        match self {
            Payload::Counts(m) => m.objective_point(),
            Payload::Objectives(p) => p.clone(),
        }
    }

    pub fn confusion(&self) -> Option<&ConfusionMatrix> {
        match self {
            Payload::Counts(m) => Some(m),
            Payload::Objectives(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecordKey {
    pub dataset: String,
    pub method: String,
    pub fold: u32,
    pub solution_id: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub key: RecordKey,
    pub payload: Payload,
}

/// Parsing knobs beyond the schema itself.
#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    /// 1-based objective columns holding minimization criteria; their values
    /// are negated on ingestion so every objective is maximized.
    pub minimize: BTreeSet<usize>,
}

pub fn parse_records(path: &Path, kind: PayloadKind) -> Result<Vec<ExperimentRecord>> {
    parse_records_with(path, kind, &ParseOptions::default())
}

pub fn parse_records_with(
    path: &Path,
    kind: PayloadKind,
    options: &ParseOptions,
) -> Result<Vec<ExperimentRecord>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_records(file, &path.display().to_string(), kind, options)
}

/// Parses records from any reader; `origin` names the source in diagnostics.
pub fn read_records<R: Read>(
    reader: R,
    origin: &str,
    kind: PayloadKind,
    options: &ParseOptions,
) -> Result<Vec<ExperimentRecord>> {
    let mut rdr =
        csv::ReaderBuilder::new().has_headers(false).quoting(false).flexible(true).from_reader(reader);
    let mut rows = rdr.records();

    let header = match rows.next() {
        None => return Err(Error::parse(origin, 1, "missing header row")),
        Some(row) => row.map_err(|e| csv_error(origin, e))?,
    };
    let dims = check_header(&header, origin, kind)?;
    if let Some(&col) = options.minimize.iter().find(|&&c| c == 0 || c > dims) {
        return Err(Error::Invalid(format!(
            "{origin}: cannot minimize objective column {col}: file has {dims} objectives"
        )));
    }

    let mut seen = HashSet::new();
    let mut records = Vec::new();
    for row in rows {
        let row = row.map_err(|e| csv_error(origin, e))?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() == 1 && row[0].trim().is_empty() {
            continue;
        }
        if row.len() != header.len() {
            return Err(Error::parse(
                origin,
                line,
                format!("expected {} fields, found {}", header.len(), row.len()),
            ));
        }
        let field = |i: usize| Field { origin, line, column: &header[i], text: row[i].trim() };

        let key = RecordKey {
            dataset: field(0).identifier()?,
            method: field(1).identifier()?,
            fold: field(2).integer()?,
            solution_id: field(3).integer()?,
        };
        let payload = match kind {
            PayloadKind::Counts => {
                let [tp, fn_, fp, tn] = [4, 5, 6, 7].map(|i| field(i).count());
                let matrix = ConfusionMatrix::new(tp?, fn_?, fp?, tn?)
                    .map_err(|e| Error::parse(origin, line, e.to_string()))?;
                Payload::Counts(matrix)
            }
            PayloadKind::Objectives => {
                let coords = (0..dims)
                    .map(|j| {
                        let v = field(KEY_COLUMNS + j).real()?;
                        Ok(if options.minimize.contains(&(j + 1)) { -v } else { v })
                    })
                    .collect::<Result<Vec<f64>>>()?;
                let point =
                    ObjectivePoint::new(coords).map_err(|e| Error::parse(origin, line, e.to_string()))?;
                Payload::Objectives(point)
            }
        };
        if !seen.insert(key.clone()) {
            return Err(Error::parse(
                origin,
                line,
                format!(
                    "duplicate key (dataset={}, method={}, fold={}, solution_id={})",
                    key.dataset, key.method, key.fold, key.solution_id
                ),
            ));
        }
        records.push(ExperimentRecord { key, payload });
    }
    Ok(records)
}

fn csv_error(origin: &str, e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    Error::parse(origin, line, e.to_string())
}

/// Validates the header row and returns the number of payload columns
/// (4 for counts, M for objectives).
fn check_header(header: &csv::StringRecord, origin: &str, kind: PayloadKind) -> Result<usize> {
    let names: Vec<&str> = header.iter().map(str::trim).collect();
    let fail = |expected: String| {
        Error::parse(origin, 1, format!("header `{}` does not match `{expected}`", names.join(",")))
    };
    match kind {
        PayloadKind::Counts => {
            if names != COUNTS_HEADER {
                return Err(fail(COUNTS_HEADER.join(",")));
            }
            Ok(4)
        }
        PayloadKind::Objectives => {
            let expected = "dataset,method,fold,solution_id,obj_1,...,obj_M".to_string();
            if names.len() <= KEY_COLUMNS || names[..KEY_COLUMNS] != COUNTS_HEADER[..KEY_COLUMNS] {
                return Err(fail(expected));
            }
            for (j, name) in names[KEY_COLUMNS..].iter().enumerate() {
                if *name != format!("obj_{}", j + 1) {
                    return Err(fail(expected));
                }
            }
            Ok(names.len() - KEY_COLUMNS)
        }
    }
}

struct Field<'a> {
    origin: &'a str,
    line: u64,
    column: &'a str,
    text: &'a str,
}

impl Field<'_> {
    fn error(&self, what: &str) -> Error {
        Error::parse(
            self.origin,
            self.line,
            format!("column `{}`: {what}, got `{}`", self.column.trim(), self.text),
        )
    }

    fn identifier(&self) -> Result<String> {
        if is_identifier(self.text) {
            Ok(self.text.to_string())
        } else {
            Err(self.error("expected an identifier of [A-Za-z0-9_-]"))
        }
    }

    fn integer(&self) -> Result<u32> {
        self.text.parse().map_err(|_| self.error("expected a non-negative integer"))
    }

    fn count(&self) -> Result<u64> {
        match self.text.parse::<i64>() {
            Ok(v) if v < 0 => Err(self.error("count must be non-negative")),
            Ok(v) => Ok(v as u64),
            Err(_) => self.text.parse::<u64>().map_err(|_| self.error("expected an integer count")),
        }
    }

    fn real(&self) -> Result<f64> {
        match self.text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(self.error("expected a finite number")),
        }
    }
}

pub fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
}

/// Serializes records in the schema matching their payload kind.
///
/// All records must share one payload kind (and one dimensionality).
pub fn emit_records(records: &[ExperimentRecord]) -> Result<String> {
    let mut out = String::new();
    let kind_dims = records.first().map(|r| match &r.payload {
        Payload::Counts(_) => (PayloadKind::Counts, 4),
        Payload::Objectives(p) => (PayloadKind::Objectives, p.dims()),
    });
    match kind_dims {
        None | Some((PayloadKind::Counts, _)) => out.push_str(&COUNTS_HEADER.join(",")),
        Some((PayloadKind::Objectives, dims)) => {
            out.push_str("dataset,method,fold,solution_id");
            for j in 1..=dims {
                let _ = write!(out, ",obj_{j}");
            }
        }
    }
    out.push('\n');
    for r in records {
        let k = &r.key;
        if !is_identifier(&k.dataset) || !is_identifier(&k.method) {
            return Err(Error::Invalid(format!(
                "cannot emit identifiers `{}`/`{}`: only [A-Za-z0-9_-] allowed",
                k.dataset, k.method
            )));
        }
        let _ = write!(out, "{},{},{},{}", k.dataset, k.method, k.fold, k.solution_id);
        match (&r.payload, kind_dims) {
            (Payload::Counts(m), Some((PayloadKind::Counts, _))) => {
                let _ = write!(
                    out,
                    ",{},{},{},{}",
                    m.true_positives(),
                    m.false_negatives(),
                    m.false_positives(),
                    m.true_negatives()
                );
            }
            (Payload::Objectives(p), Some((PayloadKind::Objectives, dims))) if p.dims() == dims => {
                for c in p.coords() {
                    let _ = write!(out, ",{c}");
                }
            }
            _ => return Err(Error::Invalid("records mix payload kinds or dimensionality".into())),
        }
        out.push('\n');
    }
    Ok(out)
}
