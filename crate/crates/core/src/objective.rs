//! Objective vectors, strict dominance and Pareto front extraction.
//!
//! Every objective is maximized. Comparisons are exact: no epsilon is applied.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};

/// A finite, non-empty vector of criterion values (larger is better).
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectivePoint(Vec<f64>);

impl ObjectivePoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        if let Some(index) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoordinate { index });
        }
        // Adding +0.0 folds -0.0 into +0.0 so equal points sort and dedup together.
        Ok(Self(coords.into_iter().map(|c| c + 0.0).collect()))
    }

    /// Two-objective point. Panics on non-finite input.
    pub fn pair(x: f64, y: f64) -> Self {
        Self::new(alloc::vec![x, y]).expect("finite coordinates")
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dims(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Strict dominance: better in every single objective.
    pub fn strictly_dominates(&self, other: &ObjectivePoint) -> Result<bool> {
        check_dims(self.dims(), other.dims())?;
        Ok(self.dominates_unchecked(other))
    }

    pub(crate) fn dominates_unchecked(&self, other: &ObjectivePoint) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a > b)
    }

    /// Euclidean distance to `other`.
    pub fn distance(&self, other: &ObjectivePoint) -> Result<f64> {
        check_dims(self.dims(), other.dims())?;
        Ok(self.distance_unchecked(other))
    }

    pub(crate) fn distance_unchecked(&self, other: &ObjectivePoint) -> f64 {
        let sq: f64 = self.0.iter().zip(&other.0).map(|(a, b)| (a - b) * (a - b)).sum();
        libm::sqrt(sq)
    }

    /// Lexicographic order on coordinates, total over finite values.
    pub fn lex_cmp(&self, other: &ObjectivePoint) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.total_cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Free-function form of [`ObjectivePoint::strictly_dominates`].
pub fn strictly_dominates(p: &ObjectivePoint, r: &ObjectivePoint) -> Result<bool> {
    p.strictly_dominates(r)
}

/// A labelled, non-empty collection of points sharing one dimensionality.
///
/// A front approximation holds many points; a reference method contributes a
/// single point per fold.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    label: String,
    points: Vec<ObjectivePoint>,
}

impl SolutionSet {
    pub fn new(label: impl Into<String>, points: Vec<ObjectivePoint>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptySolutionSet)?;
        let dims = first.dims();
        for p in &points[1..] {
            check_dims(dims, p.dims())?;
        }
        Ok(Self { label: label.into(), points })
    }

    pub fn singleton(label: impl Into<String>, point: ObjectivePoint) -> Self {
        Self { label: label.into(), points: alloc::vec![point] }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn points(&self) -> &[ObjectivePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dims(&self) -> usize {
        self.points[0].dims()
    }

    /// Coordinatewise maximum over all points.
    pub fn ideal(&self) -> ObjectivePoint {
        self.fold_coords(f64::max)
    }

    /// Coordinatewise minimum over all points.
    pub fn nadir(&self) -> ObjectivePoint {
        self.fold_coords(f64::min)
    }

    fn fold_coords(&self, f: impl Fn(f64, f64) -> f64) -> ObjectivePoint {
        let mut acc = self.points[0].0.clone();
        for p in &self.points[1..] {
            for (a, &c) in acc.iter_mut().zip(&p.0) {
                *a = f(*a, c);
            }
        }
        ObjectivePoint(acc)
    }
}

/// Points of `set` not strictly dominated by any other point of `set`.
///
/// Exact duplicates collapse to one representative and the result is sorted
/// lexicographically, so the output is deterministic.
pub fn pareto_front(set: &SolutionSet) -> SolutionSet {
    let mut sorted: Vec<&ObjectivePoint> = set.points.iter().collect();
    // Descending: any strict dominator has a larger first coordinate and so is
    // visited earlier.
    sorted.sort_by(|a, b| b.lex_cmp(a));
    sorted.dedup_by(|a, b| a.0 == b.0);

    // Strict dominance is transitive, so every dominated point is dominated by
    // some front member and checking the kept points suffices.
    let mut front: Vec<ObjectivePoint> = Vec::new();
    for p in sorted {
        if !front.iter().any(|q| q.dominates_unchecked(p)) {
            front.push(p.clone());
        }
    }
    front.reverse();
    SolutionSet { label: set.label.clone(), points: front }
}
