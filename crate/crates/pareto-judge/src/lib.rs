//! File formats, fold aggregation, report tables, SVG figures and the
//! command-line driver built on [`pareto_judge_core`].
//!
//! Inputs are per-fold experiment results exported as CSV (either confusion
//! counts or raw objective values). The typical flow is
//! [`records::parse_records`] then [`aggregate::aggregate`] then
//! [`report::render_report`].

pub mod aggregate;
pub mod cli;
pub mod datasets;
mod error;
pub mod output;
pub mod records;
pub mod report;
pub mod svg;

pub use error::{Error, Result};
pub use pareto_judge_core as core;
