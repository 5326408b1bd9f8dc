//! Binary confusion matrix and the rates derived from it.
//!
//! Rates are always computed from raw counts. When a denominator is zero the
//! metric evaluates to `0.0` and is flagged as undefined instead of failing,
//! so a single degenerate fold cannot abort a batch evaluation.

use crate::error::{Error, Result};
use crate::objective::ObjectivePoint;

/// Outcome counts of a binary classifier, minority class as positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConfusionMatrix {
    tp: u64,
    fn_: u64,
    fp: u64,
    tn: u64,
}

/// A rate in `[0, 1]` plus whether its denominator was non-zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricValue {
    pub value: f64,
    pub defined: bool,
}

impl MetricValue {
    fn ratio(num: u64, den: u64) -> Self {
        if den == 0 {
            Self::undefined()
        } else {
            Self { value: num as f64 / den as f64, defined: true }
        }
    }

    const fn undefined() -> Self {
        Self { value: 0.0, defined: false }
    }
}

impl ConfusionMatrix {
    pub fn new(tp: u64, fn_: u64, fp: u64, tn: u64) -> Result<Self> {
        if tp == 0 && fn_ == 0 && fp == 0 && tn == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(Self { tp, fn_, fp, tn })
    }

    pub fn true_positives(&self) -> u64 {
        self.tp
    }

    pub fn false_negatives(&self) -> u64 {
        self.fn_
    }

    pub fn false_positives(&self) -> u64 {
        self.fp
    }

    pub fn true_negatives(&self) -> u64 {
        self.tn
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fn_ + self.fp + self.tn
    }

    /// Multiplies every count by `factor`. Rates are unchanged.
    ///
    /// Returns `None` when `factor` is zero or a count would overflow.
    pub fn scaled(&self, factor: u64) -> Option<Self> {
        if factor == 0 {
            return None;
        }
        Some(Self {
            tp: self.tp.checked_mul(factor)?,
            fn_: self.fn_.checked_mul(factor)?,
            fp: self.fp.checked_mul(factor)?,
            tn: self.tn.checked_mul(factor)?,
        })
    }

    /// Sensitivity / recall: TP / (TP + FN).
    pub fn tpr(&self) -> MetricValue {
        MetricValue::ratio(self.tp, self.tp + self.fn_)
    }

    /// Specificity: TN / (TN + FP).
    pub fn tnr(&self) -> MetricValue {
        MetricValue::ratio(self.tn, self.tn + self.fp)
    }

    /// Precision: TP / (TP + FP).
    pub fn ppv(&self) -> MetricValue {
        MetricValue::ratio(self.tp, self.tp + self.fp)
    }

    /// Balanced accuracy, the arithmetic mean of TPR and TNR.
    pub fn bac(&self) -> MetricValue {
        let (tpr, tnr) = (self.tpr(), self.tnr());
        MetricValue { value: (tpr.value + tnr.value) / 2.0, defined: tpr.defined && tnr.defined }
    }

    /// Geometric mean of TPR and TNR.
    pub fn gmean(&self) -> MetricValue {
        let (tpr, tnr) = (self.tpr(), self.tnr());
        MetricValue { value: libm::sqrt(tpr.value * tnr.value), defined: tpr.defined && tnr.defined }
    }

    /// Weighted harmonic mean of precision and recall; `beta` > 1 favours recall.
    pub fn fbeta(&self, beta: f64) -> Result<MetricValue> {
        if !beta.is_finite() || beta <= 0.0 {
            return Err(Error::InvalidBeta(beta));
        }
        let ppv = self.ppv().value;
        let tpr = self.tpr().value;
        let b2 = beta * beta;
        let den = b2 * ppv + tpr;
        if den == 0.0 {
            return Ok(MetricValue::undefined());
        }
        // Clamp guards the last ulp when ppv == tpr.
        let value = ((b2 + 1.0) * ppv * tpr / den).clamp(0.0, 1.0);
        Ok(MetricValue { value, defined: true })
    }

    pub fn f1(&self) -> MetricValue {
        self.fbeta(1.0).expect("beta = 1 is valid")
    }

    /// The (TPR, TNR) objective pair used for dominance comparisons.
    pub fn objective_point(&self) -> ObjectivePoint {
        ObjectivePoint::pair(self.tpr().value, self.tnr().value)
    }
}
