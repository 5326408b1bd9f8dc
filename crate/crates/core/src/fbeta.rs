//! F-beta curves across a preference grid.
//!
//! `beta` expresses how much more recall matters than precision. Sweeping it
//! shows over which preference range one method beats another; the envelope of
//! a whole front gives the best member for every preference.

use alloc::string::String;
use alloc::vec::Vec;

use crate::confusion::{ConfusionMatrix, MetricValue};
use crate::error::{Error, Result};

/// Strictly increasing, finite, positive beta values.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaGrid(Vec<f64>);

impl BetaGrid {
    pub const DEFAULT_MIN: f64 = 0.1;
    pub const DEFAULT_MAX: f64 = 10.0;
    pub const DEFAULT_COUNT: usize = 201;

    pub fn new(betas: Vec<f64>) -> Result<Self> {
        if betas.is_empty() {
            return Err(Error::InvalidBetaGrid("no beta values"));
        }
        if betas.iter().any(|b| !b.is_finite() || *b <= 0.0) {
            return Err(Error::InvalidBetaGrid("beta values must be finite and positive"));
        }
        if betas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidBetaGrid("beta values must be strictly increasing"));
        }
        Ok(Self(betas))
    }

    /// `count` points spaced uniformly in log10 between `min` and `max`,
    /// endpoints included exactly.
    pub fn log_uniform(min: f64, max: f64, count: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min > 0.0 && max > min) {
            return Err(Error::InvalidBetaGrid("need 0 < min < max"));
        }
        match count {
            0 => return Err(Error::InvalidBetaGrid("no beta values")),
            1 => return Self::new(alloc::vec![min]),
            _ => {}
        }
        let (lo, hi) = (libm::log10(min), libm::log10(max));
        let last = (count - 1) as f64;
        let betas = (0..count)
            .map(|i| match i {
                0 => min,
                i if i == count - 1 => max,
                i => libm::pow(10.0, lo + (hi - lo) * i as f64 / last),
            })
            .collect();
        Self::new(betas)
    }

    pub fn betas(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Default for BetaGrid {
    /// 201 log-uniform points on [0.1, 10], centred on beta = 1.
    fn default() -> Self {
        Self::log_uniform(Self::DEFAULT_MIN, Self::DEFAULT_MAX, Self::DEFAULT_COUNT)
            .expect("default grid is valid")
    }
}

/// F-beta values of one method (or a front envelope) along a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FbetaCurve {
    pub label: String,
    pub betas: Vec<f64>,
    pub values: Vec<MetricValue>,
    pub is_envelope: bool,
    /// For envelopes: index of the front member attaining the maximum at each
    /// beta (lowest index on ties). Empty for single-method curves.
    pub argmax: Vec<usize>,
}

impl FbetaCurve {
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.betas.iter().zip(&self.values).map(|(b, v)| (*b, v.value))
    }
}

pub fn fbeta_curve(label: impl Into<String>, m: &ConfusionMatrix, grid: &BetaGrid) -> FbetaCurve {
    let values = grid.betas().iter().map(|&b| m.fbeta(b).expect("grid betas are positive")).collect();
    FbetaCurve {
        label: label.into(),
        betas: grid.betas().to_vec(),
        values,
        is_envelope: false,
        argmax: Vec::new(),
    }
}

/// Pointwise maximum of the members' F-beta curves.
pub fn fbeta_envelope(
    label: impl Into<String>,
    members: &[ConfusionMatrix],
    grid: &BetaGrid,
) -> Result<FbetaCurve> {
    if members.is_empty() {
        return Err(Error::EmptyFront);
    }
    let mut values = Vec::with_capacity(grid.len());
    let mut argmax = Vec::with_capacity(grid.len());
    for &beta in grid.betas() {
        let mut best_idx = 0;
        let mut best = members[0].fbeta(beta)?;
        for (i, m) in members.iter().enumerate().skip(1) {
            let v = m.fbeta(beta)?;
            if v.value > best.value {
                best = v;
                best_idx = i;
            }
        }
        values.push(best);
        argmax.push(best_idx);
    }
    Ok(FbetaCurve { label: label.into(), betas: grid.betas().to_vec(), values, is_envelope: true, argmax })
}
