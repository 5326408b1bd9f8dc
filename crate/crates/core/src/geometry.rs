//! Plot geometry in objective coordinates, independent of any output format.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::objective::{check_dims, ObjectivePoint, SolutionSet};

/// Aggregate whose level sets can be drawn over the unit square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoMetric {
    /// `sqrt(x * y)`, the axes being the two rates.
    Gmean,
    /// `2xy / (x + y)`, the axes being recall and precision.
    F1,
}

impl IsoMetric {
    pub fn eval(self, x: f64, y: f64) -> f64 {
        match self {
            IsoMetric::Gmean => libm::sqrt(x * y),
            IsoMetric::F1 => {
                if x + y == 0.0 {
                    0.0
                } else {
                    2.0 * x * y / (x + y)
                }
            }
        }
    }
}

/// `samples` points (at least two) on the level set `metric(x, y) = level`
/// restricted to the unit square, ordered by increasing `x`.
///
/// G-mean: `y = g^2 / x` for `x` in `[g^2, 1]`.
/// F1: `y = f x / (2x - f)` for `x` in `[f / (2 - f), 1]`.
pub fn isocurve(metric: IsoMetric, level: f64, samples: usize) -> Result<Vec<(f64, f64)>> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidLevel(level));
    }
    let samples = samples.max(2);
    let x_min = match metric {
        IsoMetric::Gmean => level * level,
        IsoMetric::F1 => level / (2.0 - level),
    };
    let step = (1.0 - x_min) / (samples - 1) as f64;
    Ok((0..samples)
        .map(|i| {
            let x = if i == samples - 1 { 1.0 } else { x_min + step * i as f64 };
            let y = match metric {
                IsoMetric::Gmean => level * level / x,
                IsoMetric::F1 => level * x / (2.0 * x - level),
            };
            (x, y.min(1.0))
        })
        .collect())
}

/// Corners of the non-dominated boxes (those that contribute hypervolume),
/// ordered by increasing first objective.
pub fn staircase(front: &SolutionSet, reference: &ObjectivePoint) -> Result<Vec<(f64, f64)>> {
    check_dims(2, reference.dims())?;
    check_dims(2, front.dims())?;
    let (rx, ry) = (reference.coords()[0], reference.coords()[1]);
    let mut corners: Vec<(f64, f64)> = front
        .points()
        .iter()
        .map(|p| (p.coords()[0], p.coords()[1]))
        .filter(|&(x, y)| x > rx && y > ry)
        .collect();
    corners.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)));
    let mut ceiling = ry;
    corners.retain(|&(_, y)| {
        let keep = y > ceiling;
        if keep {
            ceiling = y;
        }
        keep
    });
    corners.reverse();
    Ok(corners)
}

/// Closed outline of the hypervolume region of a two-objective front, as a
/// simple rectilinear polygon starting and ending at the reference point.
///
/// Empty when no front point strictly dominates the reference.
pub fn hypervolume_region(front: &SolutionSet, reference: &ObjectivePoint) -> Result<Vec<(f64, f64)>> {
    let corners = staircase(front, reference)?;
    if corners.is_empty() {
        return Ok(Vec::new());
    }
    let (rx, ry) = (reference.coords()[0], reference.coords()[1]);
    let mut outline = Vec::with_capacity(2 * corners.len() + 2);
    outline.push((rx, ry));
    let mut prev_x = rx;
    for &(x, y) in &corners {
        outline.push((prev_x, y));
        outline.push((x, y));
        prev_x = x;
    }
    outline.push((prev_x, ry));
    Ok(outline)
}

/// Shoelace area of a simple polygon.
pub fn polygon_area(vertices: &[(f64, f64)]) -> f64 {
    if vertices.len() < 3 {
        return 0.0;
    }
    let twice: f64 =
        vertices.iter().zip(vertices.iter().cycle().skip(1)).map(|(a, b)| a.0 * b.1 - b.0 * a.1).sum();
    twice.abs() / 2.0
}

/// How a front point relates to a reference under strict dominance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceClass {
    Dominating,
    Dominated,
    NonDominated,
}

pub fn classify(point: &ObjectivePoint, reference: &ObjectivePoint) -> Result<DominanceClass> {
    Ok(if point.strictly_dominates(reference)? {
        DominanceClass::Dominating
    } else if reference.strictly_dominates(point)? {
        DominanceClass::Dominated
    } else {
        DominanceClass::NonDominated
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicators::hypervolume;

    fn set(points: &[(f64, f64)]) -> SolutionSet {
        SolutionSet::new("f", points.iter().map(|&(x, y)| ObjectivePoint::pair(x, y)).collect()).unwrap()
    }

    #[test]
    fn gmean_level_passes_through_swapped_rates() {
        let pts = isocurve(IsoMetric::Gmean, 0.6, 1001).unwrap();
        assert_eq!(pts[0], (0.36, 1.0));
        for (x, y) in [(0.9, 0.4), (0.4, 0.9)] {
            assert!((IsoMetric::Gmean.eval(x, y) - 0.6).abs() < 1e-12);
            assert!((0.36 / x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn f1_level_passes_through_diagonal() {
        for f in [0.2f64, 0.5, 0.8] {
            let y_at_f = f * f / (2.0 * f - f);
            assert!((y_at_f - f).abs() < 1e-12);
            let pts = isocurve(IsoMetric::F1, f, 50).unwrap();
            assert!((pts[0].1 - 1.0).abs() < 1e-12);
            assert_eq!(pts[49].0, 1.0);
        }
    }

    #[test]
    fn levels_outside_unit_interval_rejected() {
        for bad in [0.0, 1.0, -0.1, f64::NAN] {
            assert!(isocurve(IsoMetric::F1, bad, 10).is_err());
        }
    }

    #[test]
    fn region_matches_hypervolume() {
        let f = set(&[(0.2, 0.9), (0.6, 0.6), (0.9, 0.3), (0.5, 0.5), (0.1, 0.1)]);
        let r = ObjectivePoint::pair(0.15, 0.2);
        let outline = hypervolume_region(&f, &r).unwrap();
        assert_eq!(outline.first(), Some(&(0.15, 0.2)));
        let hv = hypervolume(&f, &r).unwrap();
        assert!((polygon_area(&outline) - hv).abs() < 1e-12);
    }

    #[test]
    fn region_is_empty_when_nothing_dominates() {
        let r = ObjectivePoint::pair(0.5, 0.5);
        assert!(hypervolume_region(&set(&[(0.5, 0.5)]), &r).unwrap().is_empty());
    }

    #[test]
    fn classification() {
        let r = ObjectivePoint::pair(0.5, 0.5);
        let f = set(&[(0.2, 0.2), (0.6, 0.6), (0.9, 0.9), (0.5, 0.9)]);
        let classes: Vec<_> = f.points().iter().map(|p| classify(p, &r).unwrap()).collect();
        assert_eq!(
            classes,
            [
                DominanceClass::Dominated,
                DominanceClass::Dominating,
                DominanceClass::Dominating,
                DominanceClass::NonDominated
            ]
        );
    }
}
