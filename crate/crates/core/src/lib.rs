//! Evaluation core for comparing multi-solution classifiers (for example an
//! evolutionary undersampler returning a whole Pareto front) against
//! single-solution reference methods on imbalanced binary problems.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`confusion`]: the binary confusion matrix with base rates (TPR, TNR,
//!   PPV) and their aggregates (BAC, G-mean, F-beta).
//! * [`objective`]: maximization objective points, strict dominance and
//!   Pareto front extraction.
//! * [`indicators`]: generational / Euclidean distance, hypervolume (exact 2-D
//!   sweep plus a seeded Monte Carlo estimator) and the strict-dominance and
//!   non-dominated ratios of a front against a reference solution.
//! * [`fbeta`]: F-beta curves over a preference grid and the upper envelope of
//!   a front.
//! * [`geometry`]: plot-ready geometry (isocurves, hypervolume region outline)
//!   shared by the SVG renderers.
//!
//! All objectives are maximized. Every function here is pure.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod confusion;
mod error;
pub mod fbeta;
pub mod geometry;
pub mod indicators;
pub mod objective;

pub use confusion::{ConfusionMatrix, MetricValue};
pub use error::{Error, Result};
pub use fbeta::{BetaGrid, FbetaCurve};
pub use indicators::{Indicator, IndicatorResult, MonteCarloEstimate};
pub use objective::{ObjectivePoint, SolutionSet};
