//! Fold-wise indicator evaluation and mean / standard deviation aggregation.
//!
//! The multi-solution method (one file) is compared with every single-solution
//! reference method (another file), per dataset, per fold. Standard deviations
//! are population deviations (divide by the number of folds).

use std::collections::{BTreeMap, BTreeSet};
use std::num::NonZeroUsize;

use pareto_judge_core::indicators::{evaluate, generational_distance};
use pareto_judge_core::objective::pareto_front;
use pareto_judge_core::{ConfusionMatrix, Indicator, ObjectivePoint, SolutionSet};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::records::{ExperimentRecord, Payload};

/// Reference label of rows computed against all reference methods at once.
pub const POOLED_REFERENCE: &str = "pooled";

pub const DEFAULT_INDICATORS: [Indicator; 4] = [Indicator::Ed, Indicator::Hv, Indicator::Sdr, Indicator::Ndr];

#[derive(Debug, Clone)]
pub struct AggregateOptions {
    pub indicators: Vec<Indicator>,
    /// Reduce each fold's front to its non-dominated points first.
    pub filter_front: bool,
    /// Restrict the evaluation to one fold.
    pub fold: Option<u32>,
    /// Seed for the Monte Carlo hypervolume (only used beyond two objectives).
    pub seed: u64,
    pub mc_samples: u64,
    pub threads: Option<NonZeroUsize>,
}

impl Default for AggregateOptions {
    fn default() -> Self {
        Self {
            indicators: DEFAULT_INDICATORS.to_vec(),
            filter_front: false,
            fold: None,
            seed: 0,
            mc_samples: 100_000,
            threads: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub indicator: Indicator,
    pub reference_method: String,
    pub dataset: String,
    pub mean: f64,
    pub std: f64,
    pub fold_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub moo_method: String,
    pub rows: Vec<ReportRow>,
}

impl ComparisonReport {
    /// Largest number of folds behind any cell.
    pub fn fold_count(&self) -> usize {
        self.rows.iter().map(|r| r.fold_count).max().unwrap_or(0)
    }

    pub fn get(&self, indicator: Indicator, reference_method: &str, dataset: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| {
            r.indicator == indicator && r.reference_method == reference_method && r.dataset == dataset
        })
    }
}

/// Population mean and standard deviation.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    if values.iter().all(|v| *v == values[0]) {
        return (values[0], 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Results of one experiment, validated and indexed by dataset and fold.
#[derive(Debug, Clone)]
pub struct Experiment {
    moo_method: String,
    datasets: Vec<String>,
    methods: Vec<String>,
    folds: BTreeMap<String, BTreeSet<u32>>,
    front: BTreeMap<(String, u32), BTreeMap<u32, Payload>>,
    refs: BTreeMap<(String, u32), BTreeMap<String, Payload>>,
}

impl Experiment {
    pub fn build(
        front_records: &[ExperimentRecord],
        reference_records: &[ExperimentRecord],
        fold: Option<u32>,
    ) -> Result<Self> {
        let keep = |r: &&ExperimentRecord| fold.is_none_or(|f| r.key.fold == f);

        let mut moo_methods = BTreeSet::new();
        let mut datasets = Vec::new();
        let mut front: BTreeMap<(String, u32), BTreeMap<u32, Payload>> = BTreeMap::new();
        for r in front_records.iter().filter(keep) {
            moo_methods.insert(r.key.method.clone());
            if !datasets.contains(&r.key.dataset) {
                datasets.push(r.key.dataset.clone());
            }
            front
                .entry((r.key.dataset.clone(), r.key.fold))
                .or_default()
                .insert(r.key.solution_id, r.payload.clone());
        }
        let moo_method = match moo_methods.len() {
            0 => {
                return Err(Error::Invalid(match fold {
                    Some(f) => format!("front has no records for fold {f}"),
                    None => "front has no records".into(),
                }))
            }
            1 => moo_methods.into_iter().next().unwrap(),
            _ => {
                return Err(Error::Invalid(format!(
                    "front mixes methods {}; expected exactly one multi-solution method",
                    moo_methods.into_iter().collect::<Vec<_>>().join(", ")
                )))
            }
        };

        let mut methods = Vec::new();
        let mut refs: BTreeMap<(String, u32), BTreeMap<String, Payload>> = BTreeMap::new();
        for r in reference_records.iter().filter(keep) {
            if !methods.contains(&r.key.method) {
                methods.push(r.key.method.clone());
            }
            let slot = refs.entry((r.key.dataset.clone(), r.key.fold)).or_default();
            if slot.insert(r.key.method.clone(), r.payload.clone()).is_some() {
                return Err(Error::Invalid(format!(
                    "reference method {} has more than one solution for dataset {} fold {}",
                    r.key.method, r.key.dataset, r.key.fold
                )));
            }
        }

        let front_cells: BTreeSet<&(String, u32)> = front.keys().collect();
        let ref_cells: BTreeSet<&(String, u32)> = refs.keys().collect();
        if let Some((d, f)) = front_cells.difference(&ref_cells).next() {
            return Err(Error::Invalid(format!("no reference results for dataset {d} fold {f}")));
        }
        if let Some((d, f)) = ref_cells.difference(&front_cells).next() {
            return Err(Error::Invalid(format!("no front results for dataset {d} fold {f}")));
        }

        let mut folds: BTreeMap<String, BTreeSet<u32>> = BTreeMap::new();
        for (d, f) in front.keys() {
            folds.entry(d.clone()).or_default().insert(*f);
        }
        for (d, dataset_folds) in &folds {
            let present: BTreeSet<&String> =
                dataset_folds.iter().flat_map(|f| refs[&(d.clone(), *f)].keys()).collect();
            for m in present {
                if let Some(f) = dataset_folds.iter().find(|f| !refs[&(d.clone(), **f)].contains_key(m)) {
                    return Err(Error::Invalid(format!(
                        "reference method {m} is missing dataset {d} fold {f}"
                    )));
                }
            }
        }

        Ok(Self { moo_method, datasets, methods, folds, front, refs })
    }

    pub fn moo_method(&self) -> &str {
        &self.moo_method
    }

    /// Datasets in order of first appearance in the front file.
    pub fn datasets(&self) -> &[String] {
        &self.datasets
    }

    /// Reference methods evaluated on `dataset`, in order of first appearance.
    pub fn methods(&self, dataset: &str) -> Vec<&str> {
        let Some(folds) = self.folds.get(dataset) else { return Vec::new() };
        let Some(first) = folds.first() else { return Vec::new() };
        let present = &self.refs[&(dataset.to_string(), *first)];
        self.methods.iter().filter(|m| present.contains_key(*m)).map(String::as_str).collect()
    }

    pub fn folds(&self, dataset: &str) -> Vec<u32> {
        self.folds.get(dataset).map(|f| f.iter().copied().collect()).unwrap_or_default()
    }

    /// Front members of one fold ordered by solution id.
    pub fn front_payloads(&self, dataset: &str, fold: u32) -> Option<Vec<(u32, &Payload)>> {
        self.front.get(&(dataset.to_string(), fold)).map(|m| m.iter().map(|(id, p)| (*id, p)).collect())
    }

    pub fn front_set(&self, dataset: &str, fold: u32, filter_front: bool) -> Result<SolutionSet> {
        let payloads = self
            .front_payloads(dataset, fold)
            .ok_or_else(|| Error::Invalid(format!("no front results for dataset {dataset} fold {fold}")))?;
        let points = payloads.iter().map(|(_, p)| p.objective_point()).collect();
        let set = SolutionSet::new(self.moo_method.clone(), points)
            .map_err(|e| Error::Invalid(format!("dataset {dataset} fold {fold}: {e}")))?;
        Ok(if filter_front { pareto_front(&set) } else { set })
    }

    /// Front confusion matrices, if the front was ingested as counts.
    pub fn front_matrices(&self, dataset: &str, fold: u32) -> Option<Vec<(u32, ConfusionMatrix)>> {
        self.front_payloads(dataset, fold)?
            .into_iter()
            .map(|(id, p)| p.confusion().map(|m| (id, *m)))
            .collect()
    }

    pub fn reference(&self, dataset: &str, fold: u32, method: &str) -> Option<&Payload> {
        self.refs.get(&(dataset.to_string(), fold))?.get(method)
    }

    /// All reference solutions of one fold as a single set.
    pub fn pooled_references(&self, dataset: &str, fold: u32) -> Result<SolutionSet> {
        let points = self
            .methods(dataset)
            .into_iter()
            .filter_map(|m| self.reference(dataset, fold, m))
            .map(Payload::objective_point)
            .collect();
        SolutionSet::new(POOLED_REFERENCE, points)
            .map_err(|e| Error::Invalid(format!("dataset {dataset} fold {fold}: {e}")))
    }
}

struct Cell<'a> {
    indicator: Indicator,
    dataset: &'a str,
    reference: Option<&'a str>,
}

/// Evaluates one indicator on one fold. `reference = None` selects the
/// pooled reference set (generational distance).
pub fn evaluate_fold(
    experiment: &Experiment,
    indicator: Indicator,
    dataset: &str,
    fold: u32,
    reference: Option<&str>,
    options: &AggregateOptions,
) -> Result<f64> {
    let front = experiment.front_set(dataset, fold, options.filter_front)?;
    let context = |e: pareto_judge_core::Error| {
        Error::Invalid(format!(
            "{indicator} for dataset {dataset} fold {fold} reference {}: {e}",
            reference.unwrap_or(POOLED_REFERENCE)
        ))
    };
    match reference {
        None => {
            let pooled = experiment.pooled_references(dataset, fold)?;
            generational_distance(&front, &pooled).map_err(context)
        }
        Some(method) => {
            let point: ObjectivePoint = experiment
                .reference(dataset, fold, method)
                .ok_or_else(|| {
                    Error::Invalid(format!("no result of {method} for dataset {dataset} fold {fold}"))
                })?
                .objective_point();
            evaluate(indicator, &front, &point, options.mc_samples, options.seed)
                .map(|r| r.value)
                .map_err(context)
        }
    }
}

/// Evaluates every requested indicator per fold and summarizes over folds.
///
/// Rows come grouped by indicator (in requested order), then reference method,
/// then dataset. Generational distance is computed once per dataset against
/// the pooled reference solutions and reported under [`POOLED_REFERENCE`].
pub fn aggregate(
    front_records: &[ExperimentRecord],
    reference_records: &[ExperimentRecord],
    options: &AggregateOptions,
) -> Result<ComparisonReport> {
    let experiment = Experiment::build(front_records, reference_records, options.fold)?;
    aggregate_experiment(&experiment, options)
}

pub fn aggregate_experiment(experiment: &Experiment, options: &AggregateOptions) -> Result<ComparisonReport> {
    let mut indicators: Vec<Indicator> = Vec::new();
    for i in &options.indicators {
        if !indicators.contains(i) {
            indicators.push(*i);
        }
    }
    if indicators.is_empty() {
        return Err(Error::Invalid("no indicators requested".into()));
    }

    let mut cells = Vec::new();
    for &indicator in &indicators {
        if indicator == Indicator::Gd {
            for d in experiment.datasets() {
                cells.push(Cell { indicator, dataset: d, reference: None });
            }
            continue;
        }
        let mut methods: Vec<&str> = Vec::new();
        for d in experiment.datasets() {
            for m in experiment.methods(d) {
                if !methods.contains(&m) {
                    methods.push(m);
                }
            }
        }
        for m in methods {
            for d in experiment.datasets() {
                if experiment.methods(d).contains(&m) {
                    cells.push(Cell { indicator, dataset: d, reference: Some(m) });
                }
            }
        }
    }

    let compute = |cell: &Cell| -> Result<ReportRow> {
        let values = experiment
            .folds(cell.dataset)
            .into_iter()
            .map(|fold| {
                evaluate_fold(experiment, cell.indicator, cell.dataset, fold, cell.reference, options)
            })
            .collect::<Result<Vec<f64>>>()?;
        let (mean, std) = mean_std(&values);
        Ok(ReportRow {
            indicator: cell.indicator,
            reference_method: cell.reference.unwrap_or(POOLED_REFERENCE).to_string(),
            dataset: cell.dataset.to_string(),
            mean,
            std,
            fold_count: values.len(),
        })
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.threads.map_or(0, NonZeroUsize::get))
        .build()
        .map_err(|e| Error::Invalid(format!("cannot start worker threads: {e}")))?;
    let rows = pool.install(|| cells.par_iter().map(compute).collect::<Result<Vec<_>>>())?;
    Ok(ComparisonReport { moo_method: experiment.moo_method().to_string(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::records::{read_records, ParseOptions, PayloadKind};

    fn objectives(text: &str) -> Vec<ExperimentRecord> {
        let full = format!("dataset,method,fold,solution_id,obj_1,obj_2\n{text}");
        read_records(full.as_bytes(), "mem", PayloadKind::Objectives, &ParseOptions::default()).unwrap()
    }

    #[test]
    fn population_std() {
        assert_eq!(mean_std(&[0.0, 1.0]), (0.5, 0.5));
        assert_eq!(mean_std(&[0.3; 10]).1, 0.0);
    }

    #[test]
    fn constant_value_across_folds() {
        let mut front = String::new();
        let mut refs = String::new();
        for f in 0..10 {
            front.push_str(&format!("d,MOO,{f},0,0.9,0.9\nd,MOO,{f},1,0.2,0.2\n"));
            refs.push_str(&format!("d,R,{f},0,0.5,0.5\n"));
        }
        let report =
            aggregate(&objectives(&front), &objectives(&refs), &AggregateOptions::default()).unwrap();
        assert_eq!(report.moo_method, "MOO");
        assert_eq!(report.fold_count(), 10);
        let sdr = report.get(Indicator::Sdr, "R", "d").unwrap();
        assert_eq!((sdr.mean, sdr.std), (0.5, 0.0));
        let ndr = report.get(Indicator::Ndr, "R", "d").unwrap();
        assert_eq!((ndr.mean, ndr.std), (0.5, 0.0));
    }

    #[test]
    fn two_folds_sdr_zero_and_one() {
        let front = objectives("d,MOO,0,0,0.1,0.1\nd,MOO,1,0,0.9,0.9\n");
        let refs = objectives("d,R,0,0,0.5,0.5\nd,R,1,0,0.5,0.5\n");
        let opts = AggregateOptions { indicators: vec![Indicator::Sdr], ..Default::default() };
        let row = &aggregate(&front, &refs, &opts).unwrap().rows[0];
        assert_eq!((row.mean, row.std, row.fold_count), (0.5, 0.5, 2));
    }

    #[test]
    fn front_equal_to_reference() {
        let front = objectives("d,MOO,0,0,0.5,0.5\nd,MOO,1,0,0.7,0.6\n");
        let refs = objectives("d,R,0,0,0.5,0.5\nd,R,1,0,0.7,0.6\n");
        let opts = AggregateOptions {
            indicators: vec![Indicator::Ed, Indicator::Hv, Indicator::Ndr],
            ..Default::default()
        };
        let report = aggregate(&front, &refs, &opts).unwrap();
        assert_eq!(report.get(Indicator::Ed, "R", "d").unwrap().mean, 0.0);
        assert_eq!(report.get(Indicator::Hv, "R", "d").unwrap().mean, 0.0);
        assert_eq!(report.get(Indicator::Ndr, "R", "d").unwrap().mean, 1.0);
    }

    #[test]
    fn pooled_generational_distance() {
        let front = objectives("d,MOO,0,0,0.0,0.0\n");
        let refs = objectives("d,A,0,0,0.3,0.4\nd,B,0,0,0.6,0.8\n");
        let opts = AggregateOptions { indicators: vec![Indicator::Gd], ..Default::default() };
        let report = aggregate(&front, &refs, &opts).unwrap();
        assert_eq!(report.rows.len(), 1);
        let row = report.get(Indicator::Gd, POOLED_REFERENCE, "d").unwrap();
        assert!((row.mean - 0.5).abs() < 1e-12);
    }

    #[test]
    fn coverage_errors() {
        let front = objectives("d,MOO,0,0,0.5,0.5\nd,MOO,1,0,0.5,0.5\n");
        let err = aggregate(&front, &objectives("d,R,0,0,0.5,0.5\n"), &Default::default()).unwrap_err();
        assert!(err.to_string().contains("no reference results for dataset d fold 1"), "{err}");

        let refs = objectives("d,R,0,0,0.5,0.5\nd,R,1,0,0.5,0.5\nd,S,0,0,0.1,0.1\n");
        let err = aggregate(&front, &refs, &Default::default()).unwrap_err();
        assert!(err.to_string().contains("S is missing dataset d fold 1"), "{err}");

        let refs = objectives("d,R,0,0,0.5,0.5\nd,R,0,1,0.4,0.4\nd,R,1,0,0.5,0.5\n");
        let err = aggregate(&front, &refs, &Default::default()).unwrap_err();
        assert!(err.to_string().contains("more than one solution"), "{err}");

        let mixed = objectives("d,MOO,0,0,0.5,0.5\nd,OTHER,0,0,0.5,0.5\n");
        assert!(aggregate(&mixed, &objectives("d,R,0,0,0.5,0.5\n"), &Default::default()).is_err());
    }

    #[test]
    fn fold_selection() {
        let front = objectives("d,MOO,0,0,0.1,0.1\nd,MOO,1,0,0.9,0.9\n");
        let refs = objectives("d,R,0,0,0.5,0.5\nd,R,1,0,0.5,0.5\n");
        let opts = AggregateOptions { indicators: vec![Indicator::Sdr], fold: Some(1), ..Default::default() };
        let row = &aggregate(&front, &refs, &opts).unwrap().rows[0];
        assert_eq!((row.mean, row.fold_count), (1.0, 1));
        let opts = AggregateOptions { fold: Some(7), ..opts };
        assert!(aggregate(&front, &refs, &opts).is_err());
    }

    #[test]
    fn filter_front_changes_denominators() {
        let front = objectives("d,MOO,0,0,0.9,0.9\nd,MOO,0,1,0.2,0.2\n");
        let refs = objectives("d,R,0,0,0.5,0.5\n");
        let mut opts = AggregateOptions { indicators: vec![Indicator::Sdr], ..Default::default() };
        assert_eq!(aggregate(&front, &refs, &opts).unwrap().rows[0].mean, 0.5);
        opts.filter_front = true;
        assert_eq!(aggregate(&front, &refs, &opts).unwrap().rows[0].mean, 1.0);
    }

    #[test]
    fn row_order_and_thread_count_are_deterministic() {
        let front = objectives("b,MOO,0,0,0.9,0.1\na,MOO,0,0,0.1,0.9\n");
        let refs = objectives("a,Y,0,0,0.5,0.5\na,X,0,0,0.4,0.4\nb,X,0,0,0.3,0.3\nb,Y,0,0,0.2,0.2\n");
        let one = AggregateOptions { threads: NonZeroUsize::new(1), ..Default::default() };
        let many = AggregateOptions { threads: NonZeroUsize::new(4), ..Default::default() };
        let r1 = aggregate(&front, &refs, &one).unwrap();
        assert_eq!(r1, aggregate(&front, &refs, &many).unwrap());
        let order: Vec<(&str, &str)> =
            r1.rows[..4].iter().map(|r| (r.reference_method.as_str(), r.dataset.as_str())).collect();
        assert_eq!(order, [("Y", "b"), ("Y", "a"), ("X", "b"), ("X", "a")]);
    }
}
