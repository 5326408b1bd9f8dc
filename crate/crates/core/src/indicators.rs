//! Quality indicators comparing a front approximation with reference solutions.
//!
//! Distances and volumes are computed on the objectives as given (fractions
//! in the classification case); any percent or per-mille scaling is left to
//! the report layer.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::objective::{check_dims, ObjectivePoint, SolutionSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indicator {
    Ed,
    Gd,
    Hv,
    Sdr,
    Ndr,
}

impl Indicator {
    pub const ALL: [Indicator; 5] =
        [Indicator::Ed, Indicator::Gd, Indicator::Hv, Indicator::Sdr, Indicator::Ndr];

    pub fn name(self) -> &'static str {
        match self {
            Indicator::Ed => "ED",
            Indicator::Gd => "GD",
            Indicator::Hv => "HV",
            Indicator::Sdr => "SDR",
            Indicator::Ndr => "NDR",
        }
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownIndicator;

impl fmt::Display for UnknownIndicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown indicator (expected one of ed, gd, hv, sdr, ndr)")
    }
}

impl FromStr for Indicator {
    type Err = UnknownIndicator;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        Indicator::ALL.into_iter().find(|i| i.name().eq_ignore_ascii_case(s.trim())).ok_or(UnknownIndicator)
    }
}

/// One indicator evaluated on one (front, reference) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicatorResult {
    pub indicator: Indicator,
    pub value: f64,
    pub front_size: usize,
    pub reference_size: usize,
}

/// Mean over front points of the distance to the nearest reference point.
pub fn generational_distance(front: &SolutionSet, refs: &SolutionSet) -> Result<f64> {
    check_dims(front.dims(), refs.dims())?;
    let total: f64 = front
        .points()
        .iter()
        .map(|p| refs.points().iter().map(|r| p.distance_unchecked(r)).fold(f64::INFINITY, f64::min))
        .sum();
    Ok(total / front.len() as f64)
}

/// Generational distance against a single reference point.
pub fn euclidean_distance(front: &SolutionSet, reference: &ObjectivePoint) -> Result<f64> {
    generational_distance(front, &SolutionSet::singleton("", reference.clone()))
}

/// Exact hypervolume of the union of boxes spanned between each front point
/// and `reference`.
///
/// A box side with `p_i <= ref_i` has zero extent, so such points contribute
/// nothing. One and two objectives are supported; for more use
/// [`hypervolume_mc`].
pub fn hypervolume(front: &SolutionSet, reference: &ObjectivePoint) -> Result<f64> {
    check_dims(reference.dims(), front.dims())?;
    let r = reference.coords();
    match r.len() {
        1 => Ok(front.points().iter().map(|p| (p.coords()[0] - r[0]).max(0.0)).fold(0.0, f64::max)),
        2 => Ok(sweep_2d(front.points(), r[0], r[1])),
        dims => Err(Error::ExactHypervolumeUnsupported { dims }),
    }
}

fn sweep_2d(points: &[ObjectivePoint], rx: f64, ry: f64) -> f64 {
    let mut boxes: Vec<(f64, f64)> =
        points.iter().map(|p| (p.coords()[0], p.coords()[1])).filter(|&(x, y)| x > rx && y > ry).collect();
    // Widest first; each narrower box only adds the strip above the current ceiling.
    boxes.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)));
    let mut ceiling = ry;
    let mut area = 0.0;
    for (x, y) in boxes {
        if y > ceiling {
            area += (x - rx) * (y - ceiling);
            ceiling = y;
        }
    }
    area
}

/// Monte Carlo hypervolume estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub value: f64,
    pub standard_error: f64,
    pub samples: u64,
}

/// Seeded Monte Carlo estimate of the same box-union measure as
/// [`hypervolume`], valid for any number of objectives.
///
/// Samples are drawn uniformly from the box between `reference` and the
/// coordinatewise maximum of the front. A bounding box with zero extent in
/// some objective yields an exact zero.
pub fn hypervolume_mc(
    front: &SolutionSet,
    reference: &ObjectivePoint,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    check_dims(reference.dims(), front.dims())?;
    if samples == 0 {
        return Err(Error::ZeroSamples);
    }
    let zero = MonteCarloEstimate { value: 0.0, standard_error: 0.0, samples };
    let lower = reference.coords();
    let upper = front.ideal().into_inner();
    let extent: Vec<f64> = upper.iter().zip(lower).map(|(u, l)| u - l).collect();
    if extent.iter().any(|&e| e <= 0.0) {
        return Ok(zero);
    }
    let volume: f64 = extent.iter().product();

    // Only points dominating the reference span a box of positive volume.
    let boxes: Vec<&[f64]> =
        front.points().iter().filter(|p| p.dominates_unchecked(reference)).map(|p| p.coords()).collect();
    if boxes.is_empty() {
        return Ok(zero);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = alloc::vec![0.0; lower.len()];
    let mut hits = 0u64;
    for _ in 0..samples {
        for ((s, l), e) in sample.iter_mut().zip(lower).zip(&extent) {
            *s = l + e * rng.random::<f64>();
        }
        if boxes.iter().any(|b| b.iter().zip(&sample).all(|(bi, si)| si <= bi)) {
            hits += 1;
        }
    }
    let n = samples as f64;
    let fraction = hits as f64 / n;
    Ok(MonteCarloEstimate {
        value: volume * fraction,
        standard_error: volume * libm::sqrt(fraction * (1.0 - fraction) / n),
        samples,
    })
}

/// Fraction of front points strictly dominating `reference`.
pub fn sdr(front: &SolutionSet, reference: &ObjectivePoint) -> Result<f64> {
    check_dims(reference.dims(), front.dims())?;
    let count = front.points().iter().filter(|p| p.dominates_unchecked(reference)).count();
    Ok(count as f64 / front.len() as f64)
}

/// One minus the fraction of front points strictly dominated by `reference`.
///
/// Points tied with the reference in any objective count as non-dominated.
pub fn ndr(front: &SolutionSet, reference: &ObjectivePoint) -> Result<f64> {
    check_dims(reference.dims(), front.dims())?;
    let dominated = front.points().iter().filter(|p| reference.dominates_unchecked(p)).count();
    // (n - k) / n: single rounding step.
    Ok((front.len() - dominated) as f64 / front.len() as f64)
}

/// Evaluates one indicator of `front` against a single reference point.
///
/// Hypervolume beyond two objectives falls back to the Monte Carlo estimator
/// with `mc_samples` draws seeded by `seed`.
pub fn evaluate(
    indicator: Indicator,
    front: &SolutionSet,
    reference: &ObjectivePoint,
    mc_samples: u64,
    seed: u64,
) -> Result<IndicatorResult> {
    let value = match indicator {
        Indicator::Ed | Indicator::Gd => euclidean_distance(front, reference)?,
        Indicator::Hv => match hypervolume(front, reference) {
            Err(Error::ExactHypervolumeUnsupported { .. }) => {
                hypervolume_mc(front, reference, mc_samples, seed)?.value
            }
            other => other?,
        },
        Indicator::Sdr => sdr(front, reference)?,
        Indicator::Ndr => ndr(front, reference)?,
    };
    Ok(IndicatorResult { indicator, value, front_size: front.len(), reference_size: 1 })
}
