//! Batch experiment runner: seeded multi-run studies over benchmark ×
//! dimension × algorithm grids, with summary statistics, rank-sum
//! comparisons and file export.

mod export;
mod stats;

pub use export::{export_results, summary_csv, ExportFormat, SUMMARY_CSV_HEADER};
pub use stats::{
    compare_cells, mean_std, wilcoxon_rank_sum, PairwiseCell, PairwiseComparison, RankSumTest,
    RankSumVerdict,
};

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithms::{self, AlgorithmConfig, RunRecord, TerminationSpec, Variant};
use crate::benchmarks::{benchmark_ids, make_benchmark, Benchmark};
use crate::error::Error;
use crate::operators::TransformParams;
use crate::{PredictiveModel, RandomSource, Result};

/// Termination policy for a whole plan. `MaxFes(None)` resolves to the
/// conventional `1e4·n` per dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "value")]
pub enum PlanTermination {
    Designed,
    MaxFes(Option<u64>),
    MaxStalls(u32),
}

impl PlanTermination {
    pub fn resolve(self, dim: usize) -> TerminationSpec {
        match self {
            PlanTermination::Designed => TerminationSpec::Designed,
            PlanTermination::MaxFes(Some(limit)) => TerminationSpec::MaxFes(limit),
            PlanTermination::MaxFes(None) => TerminationSpec::MaxFes(10_000 * dim as u64),
            PlanTermination::MaxStalls(k) => TerminationSpec::MaxStalls(k),
        }
    }
}

/// A declarative description of one experiment batch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentPlan {
    /// Benchmark ids; the single entry `"all"` expands to the whole suite.
    pub benchmarks: Vec<String>,
    pub dims: Vec<usize>,
    pub algorithms: Vec<Variant>,
    /// Independent runs per cell; run `i` is seeded with `base_seed + i`.
    pub runs: u32,
    pub base_seed: u64,
    pub termination: PlanTermination,
    pub se: usize,
    pub epsilon: f64,
    pub predictive_model: PredictiveModel,
    /// `None` scales the archive with the dimension (`max(10, 3n)`).
    pub archive_capacity: Option<usize>,
    pub curve_stride: u64,
    /// Worker threads; `None` uses every available core.
    pub workers: Option<usize>,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        Self {
            benchmarks: vec!["all".to_string()],
            dims: vec![20, 30, 50],
            algorithms: vec![Variant::Esta],
            runs: 30,
            base_seed: 42,
            termination: PlanTermination::Designed,
            se: 30,
            epsilon: 1e-8,
            predictive_model: PredictiveModel::Hybrid,
            archive_capacity: None,
            curve_stride: 100,
            workers: None,
        }
    }
}

impl ExperimentPlan {
    /// Parses a TOML plan file. Unknown keys are rejected so typos fail
    /// loudly; every key is optional and falls back to the default plan.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::invalid(format!("invalid plan: {e}")))
    }

    /// Expanded benchmark id list (resolves the `"all"` shorthand).
    pub fn benchmark_list(&self) -> Vec<String> {
        if self.benchmarks.len() == 1 && self.benchmarks[0].eq_ignore_ascii_case("all") {
            benchmark_ids().iter().map(|s| s.to_string()).collect()
        } else {
            self.benchmarks.clone()
        }
    }

    pub fn config_for(&self, algorithm: Variant, dim: usize) -> AlgorithmConfig {
        AlgorithmConfig {
            variant: algorithm,
            se: self.se,
            params: TransformParams::default(),
            predictive_model: self.predictive_model,
            epsilon: self.epsilon,
            stall_eps: f64::EPSILON,
            omega_grid: AlgorithmConfig::default_omega_grid(),
            termination: self.termination.resolve(dim),
            archive_capacity: self.archive_capacity,
            curve_stride: self.curve_stride,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs < 1 {
            return Err(Error::invalid("plan needs at least one run"));
        }
        if self.dims.is_empty() {
            return Err(Error::invalid("plan needs at least one dimension"));
        }
        if self.algorithms.is_empty() {
            return Err(Error::invalid("plan needs at least one algorithm"));
        }
        let benchmarks = self.benchmark_list();
        if benchmarks.is_empty() {
            return Err(Error::invalid("plan needs at least one benchmark"));
        }
        for id in &benchmarks {
            for &dim in &self.dims {
                make_benchmark(id, dim)?;
            }
        }
        for &algorithm in &self.algorithms {
            for &dim in &self.dims {
                self.config_for(algorithm, dim).validate()?;
            }
        }
        Ok(())
    }
}

/// Aggregated statistics for one (benchmark, dimension, algorithm) cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub benchmark: String,
    pub dim: usize,
    pub algorithm: Variant,
    pub objval_mean: f64,
    pub objval_std: f64,
    pub gradnorm_mean: Option<f64>,
    pub evals_mean: f64,
    pub time_mean: f64,
    pub runs_completed: u32,
    pub runs_failed: u32,
}

/// All records and timings of one cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub benchmark: String,
    pub dim: usize,
    pub algorithm: Variant,
    pub records: Vec<RunRecord>,
    /// Wall-clock seconds per run, parallel to `records`. Excluded from
    /// reproducibility guarantees.
    pub wall_secs: Vec<f64>,
    /// Seeds and messages of failed runs, if any.
    pub failures: Vec<(u64, String)>,
}

impl CellResult {
    pub fn summary(&self) -> SummaryRow {
        let values: Vec<f64> = self.records.iter().map(|r| r.best_value).collect();
        let (objval_mean, objval_std) = mean_std(&values);
        let grads: Vec<f64> = self
            .records
            .iter()
            .filter_map(|r| r.grad_norm_at_final)
            .collect();
        let gradnorm_mean = if grads.is_empty() {
            None
        } else {
            Some(mean_std(&grads).0)
        };
        let evals: Vec<f64> = self.records.iter().map(|r| r.evaluations as f64).collect();
        SummaryRow {
            benchmark: self.benchmark.clone(),
            dim: self.dim,
            algorithm: self.algorithm,
            objval_mean,
            objval_std,
            gradnorm_mean,
            evals_mean: mean_std(&evals).0,
            time_mean: mean_std(&self.wall_secs).0,
            runs_completed: self.records.len() as u32,
            runs_failed: self.failures.len() as u32,
        }
    }
}

/// Results of a full experiment: one cell per (benchmark, dim, algorithm).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResults {
    pub plan: ExperimentPlan,
    pub cells: Vec<CellResult>,
}

impl ExperimentResults {
    pub fn summaries(&self) -> Vec<SummaryRow> {
        self.cells.iter().map(CellResult::summary).collect()
    }

    pub fn cell(&self, benchmark: &str, dim: usize, algorithm: Variant) -> Option<&CellResult> {
        self.cells
            .iter()
            .find(|c| c.benchmark == benchmark && c.dim == dim && c.algorithm == algorithm)
    }
}

/// Executes every run of the plan. Runs are scheduled over the worker pool
/// and keyed by seed, so the aggregation is order-independent and the
/// results are deterministic for a fixed `base_seed` (wall times aside).
pub fn run_experiment(plan: &ExperimentPlan) -> Result<ExperimentResults> {
    plan.validate()?;
    let benchmarks = plan.benchmark_list();

    struct Job {
        cell: usize,
        run_index: u32,
        seed: u64,
        bench: Benchmark,
        config: AlgorithmConfig,
    }

    let mut cells = Vec::new();
    let mut jobs = Vec::new();
    for id in &benchmarks {
        for &dim in &plan.dims {
            let bench = make_benchmark(id, dim)?;
            for &algorithm in &plan.algorithms {
                let cell = cells.len();
                cells.push(CellResult {
                    benchmark: id.clone(),
                    dim,
                    algorithm,
                    records: Vec::new(),
                    wall_secs: Vec::new(),
                    failures: Vec::new(),
                });
                let config = plan.config_for(algorithm, dim);
                for run_index in 0..plan.runs {
                    jobs.push(Job {
                        cell,
                        run_index,
                        seed: plan.base_seed.wrapping_add(u64::from(run_index)),
                        bench: bench.clone(),
                        config: config.clone(),
                    });
                }
            }
        }
    }

    let execute = |job: &Job| -> (usize, u32, std::result::Result<(RunRecord, f64), String>) {
        let started = Instant::now();
        let mut rng = RandomSource::new(job.seed);
        let outcome = algorithms::run(job.bench.problem(), &job.config, &mut rng)
            .map(|mut record| {
                if job.bench.problem().has_gradient() {
                    if let Ok(report) = job.bench.grad_norm_report(&record.best_point) {
                        record.grad_norm_at_final = Some(report.value);
                        record.grad_norm_flagged = report.flagged;
                    }
                }
                (record, started.elapsed().as_secs_f64())
            })
            .map_err(|e| e.to_string());
        (job.cell, job.run_index, outcome)
    };

    let mut outcomes: Vec<_> = match plan.workers {
        Some(workers) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers.max(1))
                .build()
                .map_err(|e| Error::invalid(format!("worker pool: {e}")))?;
            pool.install(|| jobs.par_iter().map(execute).collect())
        }
        None => jobs.par_iter().map(execute).collect(),
    };
    // deterministic aggregation order: by cell, then by run index
    outcomes.sort_by_key(|(cell, run_index, _)| (*cell, *run_index));

    for (cell, run_index, outcome) in outcomes {
        let seed = plan.base_seed.wrapping_add(u64::from(run_index));
        match outcome {
            Ok((record, secs)) => {
                cells[cell].records.push(record);
                cells[cell].wall_secs.push(secs);
            }
            Err(message) => cells[cell].failures.push((seed, message)),
        }
    }

    Ok(ExperimentResults {
        plan: plan.clone(),
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_plan() -> ExperimentPlan {
        ExperimentPlan {
            benchmarks: vec!["sphere".into(), "rastrigin".into()],
            dims: vec![5],
            algorithms: vec![Variant::Esta, Variant::StandardSta],
            runs: 3,
            base_seed: 7,
            termination: PlanTermination::MaxFes(Some(3000)),
            ..ExperimentPlan::default()
        }
    }

    #[test]
    fn experiment_runs_every_cell() {
        let results = run_experiment(&tiny_plan()).unwrap();
        assert_eq!(results.cells.len(), 4);
        for cell in &results.cells {
            assert_eq!(cell.records.len(), 3);
            assert!(cell.failures.is_empty());
            let seeds: Vec<u64> = cell.records.iter().map(|r| r.seed).collect();
            assert_eq!(seeds, vec![7, 8, 9]);
            for record in &cell.records {
                assert!(record.grad_norm_at_final.is_some());
            }
        }
    }

    #[test]
    fn identical_plans_reproduce_identical_records() {
        let a = run_experiment(&tiny_plan()).unwrap();
        let b = run_experiment(&tiny_plan()).unwrap();
        for (ca, cb) in a.cells.iter().zip(&b.cells) {
            assert_eq!(ca.records, cb.records);
        }
        // summaries agree on everything except the timing column
        for (sa, sb) in a.summaries().iter().zip(b.summaries().iter()) {
            assert_eq!(sa.objval_mean, sb.objval_mean);
            assert_eq!(sa.objval_std, sb.objval_std);
            assert_eq!(sa.gradnorm_mean, sb.gradnorm_mean);
            assert_eq!(sa.evals_mean, sb.evals_mean);
        }
    }

    #[test]
    fn single_run_summary_has_zero_std() {
        let plan = ExperimentPlan {
            runs: 1,
            benchmarks: vec!["sphere".into()],
            dims: vec![3],
            algorithms: vec![Variant::Esta],
            termination: PlanTermination::MaxFes(Some(500)),
            ..ExperimentPlan::default()
        };
        let results = run_experiment(&plan).unwrap();
        assert_eq!(results.summaries()[0].objval_std, 0.0);
    }

    #[test]
    fn plan_validation() {
        let mut plan = tiny_plan();
        plan.runs = 0;
        assert!(plan.validate().is_err());
        let mut plan = tiny_plan();
        plan.benchmarks = vec!["nosuch".into()];
        assert!(plan.validate().is_err());
        let mut plan = tiny_plan();
        // designed termination cannot drive the standard loop
        plan.termination = PlanTermination::Designed;
        assert!(plan.validate().is_err());
        plan.algorithms = vec![Variant::Esta];
        assert!(plan.validate().is_ok());
    }

    #[test]
    fn max_fes_auto_scales_with_dimension() {
        assert_eq!(
            PlanTermination::MaxFes(None).resolve(20),
            TerminationSpec::MaxFes(200_000)
        );
        assert_eq!(
            PlanTermination::MaxFes(Some(123)).resolve(20),
            TerminationSpec::MaxFes(123)
        );
    }

    #[test]
    fn plan_parses_from_toml() {
        let text = r#"
            benchmarks = ["sphere", "trid"]
            dims = [20, 30]
            algorithms = ["esta", "exsta"]
            runs = 5
            base_seed = 99

            [termination]
            mode = "max_fes"
        "#;
        let plan = ExperimentPlan::from_toml_str(text).unwrap();
        assert_eq!(plan.benchmarks, vec!["sphere", "trid"]);
        assert_eq!(plan.runs, 5);
        assert_eq!(plan.termination, PlanTermination::MaxFes(None));
        // defaults fill the rest
        assert_eq!(plan.se, 30);
        // unknown keys are rejected
        assert!(ExperimentPlan::from_toml_str("runz = 3").is_err());
        // "all" expands to the full suite
        let plan = ExperimentPlan::from_toml_str("benchmarks = [\"all\"]").unwrap();
        assert_eq!(plan.benchmark_list().len(), 10);
    }
}
