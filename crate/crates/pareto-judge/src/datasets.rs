//! Dataset characterization (`name,n_features,n_samples,n_minority`).

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::records::is_identifier;

pub const DATASET_HEADER: [&str; 4] = ["name", "n_features", "n_samples", "n_minority"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetInfo {
    name: String,
    n_features: u64,
    n_samples: u64,
    n_minority: u64,
}

impl DatasetInfo {
    /// The minority class must be non-empty and no larger than the majority.
    pub fn new(name: impl Into<String>, n_features: u64, n_samples: u64, n_minority: u64) -> Result<Self> {
        let name = name.into();
        if n_minority == 0 {
            return Err(Error::Invalid(format!("dataset `{name}`: minority class is empty")));
        }
        if n_minority.saturating_mul(2) > n_samples {
            return Err(Error::Invalid(format!(
                "dataset `{name}`: minority size {n_minority} exceeds half of {n_samples} samples"
            )));
        }
        Ok(Self { name, n_features, n_samples, n_minority })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_features(&self) -> u64 {
        self.n_features
    }

    pub fn n_samples(&self) -> u64 {
        self.n_samples
    }

    pub fn n_minority(&self) -> u64 {
        self.n_minority
    }

    /// Majority size over minority size.
    pub fn imbalance_ratio(&self) -> f64 {
        (self.n_samples - self.n_minority) as f64 / self.n_minority as f64
    }

    /// Imbalance ratio rounded to two decimals, as reported in tables.
    pub fn imbalance_ratio_rounded(&self) -> f64 {
        round2(self.imbalance_ratio())
    }
}

pub(crate) fn round2(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

pub fn parse_datasets(path: &Path) -> Result<Vec<DatasetInfo>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_datasets(file, &path.display().to_string())
}

pub fn read_datasets<R: Read>(reader: R, origin: &str) -> Result<Vec<DatasetInfo>> {
    let mut rdr = csv::ReaderBuilder::new().quoting(false).flexible(true).from_reader(reader);
    let header = rdr.headers().map_err(|e| Error::parse(origin, 1, e.to_string()))?.clone();
    let names: Vec<&str> = header.iter().map(str::trim).collect();
    if names != DATASET_HEADER {
        return Err(Error::parse(
            origin,
            1,
            format!("header `{}` does not match `{}`", names.join(","), DATASET_HEADER.join(",")),
        ));
    }
    let mut out = Vec::new();
    for row in rdr.records() {
        let row =
            row.map_err(|e| Error::parse(origin, e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != 4 {
            return Err(Error::parse(origin, line, format!("expected 4 fields, found {}", row.len())));
        }
        let name = row[0].trim();
        if !is_identifier(name) {
            return Err(Error::parse(origin, line, format!("invalid dataset name `{name}`")));
        }
        let num = |i: usize| -> Result<u64> {
            row[i].trim().parse().map_err(|_| {
                Error::parse(
                    origin,
                    line,
                    format!(
                        "column `{}`: expected a non-negative integer, got `{}`",
                        DATASET_HEADER[i],
                        row[i].trim()
                    ),
                )
            })
        };
        let info = DatasetInfo::new(name, num(1)?, num(2)?, num(3)?)
            .map_err(|e| Error::parse(origin, line, e.to_string()))?;
        out.push(info);
    }
    Ok(out)
}

/// CSV table with an appended `ir` column (two decimals).
pub fn render_datasets(datasets: &[DatasetInfo]) -> String {
    let mut out = format!("{},ir\n", DATASET_HEADER.join(","));
    for d in datasets {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.2}",
            d.name,
            d.n_features,
            d.n_samples,
            d.n_minority,
            d.imbalance_ratio_rounded()
        );
    }
    out
}
