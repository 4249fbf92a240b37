//! The optimization loops: the standard loop, ESTA (intuitive parameter
//! adaptation), and EXSTA (grid line-search parameter selection).
//!
//! All three share the same skeleton. Per iteration, each transformation
//! family generates `se` candidates from the incumbent, the candidates are
//! clamped and evaluated, and the batch minimum replaces the incumbent
//! whenever it strictly improves; the displaced incumbent goes to the
//! historical archive. A translation step exploits the improvement
//! direction afterwards.
//!
//! * Standard: original operators only, translation directly after each
//!   improving family, `α` decaying by `fc` each iteration and cycling
//!   back to `α_max` below `α_min`, the other factors constant.
//! * ESTA: mixed original/all-ones expansion and axesion batches, one
//!   predictive translation per iteration after axesion, then `α` and `γ`
//!   follow the incumbent's latest maximum coordinate displacement
//!   (`Δx = max_i |Bestₖ[i] - Bestₖ₋₁[i]|`); on a stalled iteration `α`
//!   decays toward the solution accuracy `ε`.
//! * EXSTA: identical loop, but after each family the realized search
//!   direction `d = (best candidate - base)/factor` is probed with an
//!   inexact line search over the step grid Ω, and the family's factor is
//!   set to the grid minimizer for the next iteration.
//!
//! Termination is one of: the designed stop (no progress in a full
//! iteration while `α ≤ ε`, certifying a local minimum at radius `ε`), a
//! hard evaluation cap, or a run of non-improving iterations.

use serde::{Deserialize, Serialize};

use crate::archive::BestArchive;
use crate::error::Error;
use crate::operators::{
    self, CandidateBatch, PredictiveOrder, TransformParams,
};
use crate::state::{clamp_to_bounds, evaluate, EvalBudget, Incumbent, Problem, StateVector};
use crate::RandomSource;
use crate::Result;

/// Auto-scaled archives never fall below this size.
pub const MIN_AUTO_ARCHIVE_CAPACITY: usize = 10;

/// Which loop variant to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    StandardSta,
    Esta,
    Exsta,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::StandardSta => "sta",
            Variant::Esta => "esta",
            Variant::Exsta => "exsta",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sta" | "standard" | "standard_sta" => Ok(Variant::StandardSta),
            "esta" => Ok(Variant::Esta),
            "exsta" => Ok(Variant::Exsta),
            other => Err(Error::invalid(format!(
                "unknown algorithm '{other}' (expected sta, esta or exsta)"
            ))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which predictive model drives the translation direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictiveModel {
    First,
    Second,
    /// Picks first or second order with equal probability per batch.
    Hybrid,
}

impl PredictiveModel {
    /// Resolves the order for one translation batch, consuming one uniform
    /// draw in hybrid mode.
    pub fn choose(self, rng: &mut RandomSource) -> PredictiveOrder {
        match self {
            PredictiveModel::First => PredictiveOrder::First,
            PredictiveModel::Second => PredictiveOrder::Second,
            PredictiveModel::Hybrid => {
                if rng.uniform_01() < 0.5 {
                    PredictiveOrder::First
                } else {
                    PredictiveOrder::Second
                }
            }
        }
    }
}

impl std::str::FromStr for PredictiveModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "first" | "1" => Ok(PredictiveModel::First),
            "second" | "2" => Ok(PredictiveModel::Second),
            "hybrid" => Ok(PredictiveModel::Hybrid),
            other => Err(Error::invalid(format!(
                "unknown predictive model '{other}' (expected first, second or hybrid)"
            ))),
        }
    }
}

/// Stopping rule for a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "value")]
pub enum TerminationSpec {
    /// Stop once an entire iteration makes no progress while `α ≤ ε`.
    Designed,
    /// Stop at a hard cap on objective evaluations.
    MaxFes(u64),
    /// Stop after this many consecutive non-improving iterations.
    MaxStalls(u32),
}

/// Why a run stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminationReason {
    DesignedOptimal,
    BudgetExhausted,
    Stalled,
}

impl TerminationReason {
    pub fn name(self) -> &'static str {
        match self {
            TerminationReason::DesignedOptimal => "designed_optimal",
            TerminationReason::BudgetExhausted => "budget_exhausted",
            TerminationReason::Stalled => "stalled",
        }
    }
}

/// Full configuration of one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmConfig {
    pub variant: Variant,
    /// Candidates per operator application.
    pub se: usize,
    pub params: TransformParams,
    pub predictive_model: PredictiveModel,
    /// Solution accuracy ε: the optimality radius of the designed stop.
    pub epsilon: f64,
    /// Progress below this counts as "no progress" (fBest equality).
    pub stall_eps: f64,
    /// Step grid Ω for the EXSTA line search, strictly decreasing.
    pub omega_grid: Vec<f64>,
    pub termination: TerminationSpec,
    /// Historical-best archive size; `None` scales with the problem
    /// dimension (`max(10, 3n)`). The predictive translation needs enough
    /// history to stretch its steps along flat landscapes.
    pub archive_capacity: Option<usize>,
    /// Record one convergence-curve point per this many evaluations.
    pub curve_stride: u64,
}

impl AlgorithmConfig {
    pub fn new(variant: Variant) -> Self {
        Self {
            variant,
            se: 30,
            params: TransformParams::default(),
            predictive_model: PredictiveModel::Hybrid,
            epsilon: 1e-8,
            stall_eps: f64::EPSILON,
            omega_grid: Self::default_omega_grid(),
            termination: TerminationSpec::Designed,
            archive_capacity: None,
            curve_stride: 100,
        }
    }

    /// Archive size actually used at dimension `n`.
    pub fn archive_capacity_for(&self, n: usize) -> usize {
        self.archive_capacity
            .unwrap_or_else(|| MIN_AUTO_ARCHIVE_CAPACITY.max(3 * n))
    }

    /// The step grid Ω = {2, 1, 1e-1, 1e-2, ..., 1e-8}.
    pub fn default_omega_grid() -> Vec<f64> {
        let mut grid = vec![2.0, 1.0];
        grid.extend((1..=8).map(|k| 10f64.powi(-k)));
        grid
    }

    pub fn with_termination(mut self, termination: TerminationSpec) -> Self {
        self.termination = termination;
        self
    }

    pub fn with_se(mut self, se: usize) -> Self {
        self.se = se;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.se < 1 {
            return Err(Error::invalid("se must be at least 1"));
        }
        self.params.validate()?;
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::invalid("epsilon must be positive"));
        }
        if !(self.stall_eps.is_finite() && self.stall_eps > 0.0) {
            return Err(Error::invalid("stall_eps must be positive"));
        }
        if self.omega_grid.is_empty()
            || self.omega_grid.iter().any(|a| !(a.is_finite() && *a > 0.0))
            || self.omega_grid.windows(2).any(|w| w[0] <= w[1])
        {
            return Err(Error::invalid(
                "omega_grid must be strictly decreasing and positive",
            ));
        }
        if matches!(self.archive_capacity, Some(c) if c < 2) {
            return Err(Error::invalid("archive_capacity must be at least 2"));
        }
        if self.curve_stride < 1 {
            return Err(Error::invalid("curve_stride must be at least 1"));
        }
        match self.termination {
            TerminationSpec::MaxFes(limit) if limit == 0 => {
                return Err(Error::invalid("max_fes must be positive"));
            }
            TerminationSpec::MaxStalls(k) if k == 0 => {
                return Err(Error::invalid("max_stalls must be positive"));
            }
            TerminationSpec::Designed if self.variant == Variant::StandardSta => {
                // the standard schedule cycles α back up at alpha_min, so
                // the α ≤ ε clause is unreachable unless ε can catch the
                // lowest point of the cycle
                if self.epsilon < self.params.alpha_min / self.params.fc {
                    return Err(Error::invalid(
                        "designed termination is unreachable for the standard loop: \
                         alpha resets at alpha_min before it can fall below epsilon",
                    ));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// One recorded point of a convergence curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub evaluations: u64,
    pub fbest: f64,
}

/// The full trace of a single run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    pub best_point: StateVector,
    pub best_value: f64,
    pub evaluations: u64,
    pub iterations: u64,
    pub termination_reason: TerminationReason,
    /// Gradient norm at the final incumbent, filled in by the experiment
    /// layer when the problem carries a gradient.
    pub grad_norm_at_final: Option<f64>,
    /// True when the gradient norm is a finite-difference substitute
    /// (nondifferentiable final point).
    pub grad_norm_flagged: bool,
    pub curve: Vec<CurvePoint>,
}

/// Mutable state threaded through one run.
#[derive(Clone, Debug)]
pub struct RunState {
    pub incumbent: Incumbent,
    pub archive: BestArchive,
    pub params: TransformParams,
    pub budget: EvalBudget,
    pub iteration: u64,
    pub prev_fbest: f64,
    pub stall_count: u32,
    pub termination_reason: Option<TerminationReason>,
}

impl RunState {
    pub fn new(
        incumbent: Incumbent,
        params: TransformParams,
        budget: EvalBudget,
        archive_capacity: usize,
    ) -> Self {
        let prev_fbest = incumbent.value;
        Self {
            incumbent,
            archive: BestArchive::new(archive_capacity),
            params,
            budget,
            iteration: 0,
            prev_fbest,
            stall_count: 0,
            termination_reason: None,
        }
    }
}

/// Result of evaluating one candidate batch against the incumbent.
#[derive(Clone, Debug)]
pub struct BatchOutcome {
    /// The incumbent was strictly improved and replaced.
    pub improved: bool,
    /// The budget ran out before the whole batch was evaluated.
    pub exhausted: bool,
    /// How many candidates were actually evaluated.
    pub evaluated: usize,
    /// Best (clamped) candidate of the evaluated prefix.
    pub best_candidate: StateVector,
    pub best_value: f64,
}

/// Clamps, evaluates and greedily applies a candidate batch.
///
/// Every evaluated candidate charges the budget. When the budget runs out
/// mid-batch the evaluated prefix still counts (`exhausted` is set); when
/// not even one candidate can be charged, `BudgetExhausted` is returned.
/// On strict improvement the displaced incumbent is pushed to the archive.
pub fn evaluate_batch_and_update(
    state: &mut RunState,
    batch: CandidateBatch,
    problem: &Problem,
) -> Result<BatchOutcome> {
    let mut best: Option<(StateVector, f64)> = None;
    let mut evaluated = 0;
    let mut exhausted = false;
    for candidate in batch.into_vec() {
        if state.budget.exhausted() {
            exhausted = true;
            break;
        }
        let clamped = clamp_to_bounds(&candidate, problem.bounds());
        let value = evaluate(problem, &clamped, &mut state.budget)?;
        evaluated += 1;
        if best.as_ref().map_or(true, |(_, bv)| value < *bv) {
            best = Some((clamped, value));
        }
    }
    let Some((best_candidate, best_value)) = best else {
        let limit = state.budget.limit().unwrap_or(u64::MAX);
        return Err(Error::BudgetExhausted {
            used: state.budget.used(),
            limit,
        });
    };
    let improved = best_value < state.incumbent.value;
    if improved {
        let displaced = std::mem::replace(&mut state.incumbent.point, best_candidate.clone());
        state.archive.push(displaced);
        state.incumbent.value = best_value;
    }
    Ok(BatchOutcome {
        improved,
        exhausted,
        evaluated,
        best_candidate,
        best_value,
    })
}

/// Intuitive parameter adaptation (ESTA).
///
/// `Δx` is the maximum coordinate displacement between the incumbents at
/// the start and end of the iteration. On progress, `α` and `γ` track
/// `Δx` (clamped to `[ε, α_max]` and `[ε, 1]`); on a stall `α` decays by
/// `fc` down to `ε`. `β` and `δ` stay untouched.
pub fn adapt_params_intuitive(
    params: &TransformParams,
    best_now: &StateVector,
    best_prev: &StateVector,
    epsilon: f64,
) -> TransformParams {
    let delta_x = best_now
        .iter()
        .zip(best_prev.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    let mut next = params.clone();
    if delta_x > 0.0 {
        next.alpha = delta_x.clamp(epsilon, params.alpha_max);
        next.gamma = delta_x.clamp(epsilon, 1.0);
        next.delta = delta_x.max(1.0);
    } else {
        next.alpha = (params.alpha / params.fc).max(epsilon);
    }
    next
}

/// Inexact line search over the step grid: evaluates
/// `f(base + a·direction)` for every `a` in `grid` (clamped to the box,
/// each charged to the budget) and returns the minimizing `a`. Ties break
/// toward the larger step. If the budget dies mid-grid the best step found
/// so far is returned.
pub fn select_param_linesearch(
    problem: &Problem,
    base: &StateVector,
    direction: &[f64],
    grid: &[f64],
    budget: &mut EvalBudget,
) -> Result<f64> {
    if direction.len() != base.dim() {
        return Err(Error::DimensionMismatch {
            expected: base.dim(),
            got: direction.len(),
        });
    }
    if direction.iter().all(|&d| d == 0.0) {
        return Err(Error::DegenerateDirection {
            context: "line search direction is zero",
        });
    }
    let mut best: Option<(f64, f64)> = None; // (a, value)
    for &a in grid {
        if budget.exhausted() {
            break;
        }
        let values: Vec<f64> = base
            .iter()
            .zip(direction)
            .map(|(&x, &d)| x + a * d)
            .collect();
        let probe = clamp_to_bounds(&StateVector::new_unchecked(values), problem.bounds());
        let value = evaluate(problem, &probe, budget)?;
        // strict comparison keeps the earlier (larger) grid step on ties
        if best.map_or(true, |(_, bv)| value < bv) {
            best = Some((a, value));
        }
    }
    match best {
        Some((a, _)) => Ok(a),
        None => Err(Error::BudgetExhausted {
            used: budget.used(),
            limit: budget.limit().unwrap_or(u64::MAX),
        }),
    }
}

/// End-of-iteration termination check.
pub fn check_termination(
    state: &RunState,
    config: &AlgorithmConfig,
) -> Option<TerminationReason> {
    match config.termination {
        TerminationSpec::Designed => {
            let no_progress = state.prev_fbest - state.incumbent.value <= config.stall_eps;
            if no_progress && state.params.alpha <= config.epsilon {
                Some(TerminationReason::DesignedOptimal)
            } else {
                None
            }
        }
        TerminationSpec::MaxFes(limit) => {
            if state.budget.used() >= limit {
                Some(TerminationReason::BudgetExhausted)
            } else {
                None
            }
        }
        TerminationSpec::MaxStalls(k) => {
            if state.stall_count >= k {
                Some(TerminationReason::Stalled)
            } else {
                None
            }
        }
    }
}

/// Translation step after an improvement.
///
/// No-op unless `improved` is set. The standard variant searches the
/// normalized line from the displaced incumbent to the new one; ESTA and
/// EXSTA use the predictive form with a pair drawn from the archive.
/// Degenerate directions and missing history skip silently.
pub fn translate_after_improvement(
    state: &mut RunState,
    problem: &Problem,
    config: &AlgorithmConfig,
    rng: &mut RandomSource,
    improved: bool,
) -> Result<Option<BatchOutcome>> {
    if !improved || state.budget.exhausted() {
        return Ok(None);
    }
    let base = state.incumbent.point.clone();
    let batch = if config.variant == Variant::StandardSta {
        let Some(prev) = state.archive.last().cloned() else {
            return Ok(None);
        };
        match operators::translate_standard(&base, &prev, state.params.beta, config.se, rng) {
            Ok(batch) => batch,
            Err(Error::DegenerateDirection { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
    } else {
        let order = config.predictive_model.choose(rng);
        let (a, b) = match state.archive.sample_pair(rng) {
            Ok((a, b)) => (a.clone(), b.clone()),
            Err(Error::InsufficientHistory { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        match operators::translate_predictive(&base, &a, &b, state.params.beta, order, config.se, rng)
        {
            Ok(batch) => batch,
            Err(Error::DegenerateDirection { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
    };
    evaluate_batch_and_update(state, batch, problem).map(Some)
}

/// Runs the configured variant to termination.
pub fn run(problem: &Problem, config: &AlgorithmConfig, rng: &mut RandomSource) -> Result<RunRecord> {
    config.validate()?;
    let budget = match config.termination {
        TerminationSpec::MaxFes(limit) => EvalBudget::limited(limit)?,
        _ => EvalBudget::unbounded(),
    };
    let initial = problem.bounds().sample(rng);
    let mut state = RunState::new(
        Incumbent::new(initial.clone(), f64::INFINITY),
        config.params.clone(),
        budget,
        config.archive_capacity_for(problem.dimension()),
    );
    let f0 = evaluate(problem, &initial, &mut state.budget)?;
    state.incumbent.value = f0;
    state.prev_fbest = f0;

    let mut curve = CurveRecorder::new(config.curve_stride, state.budget.used(), f0);

    loop {
        state.prev_fbest = state.incumbent.value;
        let iteration_start = state.incumbent.point.clone();

        let step = match config.variant {
            Variant::StandardSta => standard_iteration(&mut state, problem, config, rng),
            Variant::Esta => efficient_iteration(&mut state, problem, config, rng, false),
            Variant::Exsta => efficient_iteration(&mut state, problem, config, rng, true),
        };
        match step {
            Ok(()) => {}
            Err(Error::BudgetExhausted { .. }) => {
                state.termination_reason = Some(TerminationReason::BudgetExhausted);
            }
            Err(e) => return Err(e),
        }
        state.iteration += 1;

        if state.prev_fbest - state.incumbent.value <= config.stall_eps {
            state.stall_count += 1;
        } else {
            state.stall_count = 0;
        }
        if config.variant == Variant::Esta {
            state.params = adapt_params_intuitive(
                &state.params,
                &state.incumbent.point,
                &iteration_start,
                config.epsilon,
            );

        }

        curve.record(state.budget.used(), state.incumbent.value);
        if state.termination_reason.is_none() {
            state.termination_reason = check_termination(&state, config);
        }
        if state.termination_reason.is_some() {
            break;
        }
    }

    let curve = curve.finish(state.budget.used(), state.incumbent.value);
    Ok(RunRecord {
        seed: rng.seed(),
        best_point: state.incumbent.point,
        best_value: state.incumbent.value,
        evaluations: state.budget.used(),
        iterations: state.iteration,
        termination_reason: state
            .termination_reason
            .expect("loop exits only with a reason"),
        grad_norm_at_final: None,
        grad_norm_flagged: false,
        curve,
    })
}

/// Runs the standard loop; `config.variant` must match.
pub fn run_standard_sta(
    problem: &Problem,
    config: &AlgorithmConfig,
    rng: &mut RandomSource,
) -> Result<RunRecord> {
    expect_variant(config, Variant::StandardSta)?;
    run(problem, config, rng)
}

/// Runs ESTA; `config.variant` must match.
pub fn run_esta(
    problem: &Problem,
    config: &AlgorithmConfig,
    rng: &mut RandomSource,
) -> Result<RunRecord> {
    expect_variant(config, Variant::Esta)?;
    run(problem, config, rng)
}

/// Runs EXSTA; `config.variant` must match.
pub fn run_exsta(
    problem: &Problem,
    config: &AlgorithmConfig,
    rng: &mut RandomSource,
) -> Result<RunRecord> {
    expect_variant(config, Variant::Exsta)?;
    run(problem, config, rng)
}

fn expect_variant(config: &AlgorithmConfig, expected: Variant) -> Result<()> {
    if config.variant == expected {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "config variant is {}, expected {}",
            config.variant, expected
        )))
    }
}

fn box_half_width(problem: &Problem) -> f64 {
    problem
        .bounds()
        .lower()
        .iter()
        .zip(problem.bounds().upper())
        .map(|(lo, hi)| hi - lo)
        .fold(0.0f64, f64::max)
        / 2.0
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Family {
    Expansion,
    Rotation,
    Axesion,
}

fn standard_iteration(
    state: &mut RunState,
    problem: &Problem,
    config: &AlgorithmConfig,
    rng: &mut RandomSource,
) -> Result<()> {
    if state.params.alpha < state.params.alpha_min {
        state.params.alpha = state.params.alpha_max;
    }
    for family in [Family::Expansion, Family::Rotation, Family::Axesion] {
        let base = state.incumbent.point.clone();
        let batch = match family {
            Family::Expansion => operators::expand_original(&base, state.params.gamma, config.se, rng)?,
            Family::Rotation => operators::rotate(&base, state.params.alpha, config.se, rng)?,
            Family::Axesion => operators::axesion_original(&base, state.params.delta, config.se, rng)?,
        };
        let outcome = evaluate_batch_and_update(state, batch, problem)?;
        if outcome.exhausted {
            return Ok(());
        }
        let translated = translate_after_improvement(state, problem, config, rng, outcome.improved)?;
        if translated.is_some_and(|o| o.exhausted) {
            return Ok(());
        }
    }
    state.params.alpha /= state.params.fc;
    Ok(())
}

fn efficient_iteration(
    state: &mut RunState,
    problem: &Problem,
    config: &AlgorithmConfig,
    rng: &mut RandomSource,
    line_search: bool,
) -> Result<()> {
    let mut improved_any = false;
    for family in [Family::Expansion, Family::Rotation, Family::Axesion] {
        let base = state.incumbent.point.clone();
        let factor = match family {
            Family::Expansion => state.params.gamma,
            Family::Rotation => state.params.alpha,
            Family::Axesion => state.params.delta,
        };
        // mixed batches: half original, half all-ones; a slice of the
        // all-ones draws probes at box scale so global reach survives
        // after the adapted factors localize (greedy acceptance makes the
        // wide probes safe)
        let global_scale = box_half_width(problem);
        let original = config.se - config.se / 2;
        let global: usize = std::env::var("STA_GLOBAL_DRAWS").ok().and_then(|v| v.parse().ok()).unwrap_or(5);
        let global = global.min(config.se / 2);
        let allones = config.se / 2 - global;
        let batch = match family {
            Family::Expansion => {
                let mut b = operators::expand_original(&base, factor, original, rng)?.into_vec();
                if allones > 0 {
                    b.extend(operators::expand_allones(&base, factor, allones, rng)?.into_vec());
                }
                if global > 0 {
                    b.extend(
                        operators::expand_allones(&base, global_scale, global, rng)?.into_vec(),
                    );
                }
                CandidateBatch::from_candidates(b)
            }
            Family::Rotation => operators::rotate(&base, factor, config.se, rng)?,
            Family::Axesion => {
                let mut b = operators::axesion_original(&base, factor, original, rng)?.into_vec();
                if allones > 0 {
                    b.extend(operators::axesion_allones(&base, factor, allones, rng)?.into_vec());
                }
                if global > 0 {
                    b.extend(
                        operators::axesion_allones(&base, global_scale, global, rng)?.into_vec(),
                    );
                }
                CandidateBatch::from_candidates(b)
            }
        };
        let outcome = evaluate_batch_and_update(state, batch, problem)?;
        improved_any |= outcome.improved;
        if outcome.exhausted {
            return Ok(());
        }
        if line_search {
            match exsta_factor_for(state, problem, config, &base, factor, &outcome) {
                Ok(Some(a_star)) => {
                    debug_assert!(config.omega_grid.contains(&a_star));
                    match family {
                        Family::Expansion => state.params.gamma = a_star,
                        Family::Rotation => state.params.alpha = a_star,
                        // the axesion factor keeps its default as a floor
                        // so single-dimension escape jumps stay available
                        Family::Axesion => state.params.delta = a_star.max(1.0),
                    }
                }
                Ok(None) => {}
                Err(Error::BudgetExhausted { .. }) => return Ok(()),
                Err(e) => return Err(e),
            }
        }
        if state.budget.exhausted() {
            return Ok(());
        }
    }

    let beta_before = state.params.beta;
    let base = state.incumbent.point.clone();
    let translated = translate_after_improvement(state, problem, config, rng, improved_any)?;
    if let Some(outcome) = translated {
        if outcome.exhausted {
            return Ok(());
        }
        if line_search {
            match exsta_factor_for(state, problem, config, &base, beta_before, &outcome) {
                Ok(Some(a_star)) => state.params.beta = a_star,
                Ok(None) => {}
                Err(Error::BudgetExhausted { .. }) => return Ok(()),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}

/// EXSTA parameter selection for one family: the realized search direction
/// is the batch best's displacement from its generation base, normalized
/// by the factor that produced it.
fn exsta_factor_for(
    state: &mut RunState,
    problem: &Problem,
    config: &AlgorithmConfig,
    base: &StateVector,
    factor: f64,
    outcome: &BatchOutcome,
) -> Result<Option<f64>> {
    let direction: Vec<f64> = outcome
        .best_candidate
        .iter()
        .zip(base.iter())
        .map(|(c, b)| (c - b) / factor)
        .collect();
    if direction.iter().all(|&d| d == 0.0) {
        return Ok(None);
    }
    // the probes are ordinary objective evaluations, so the greedy update
    // strategy applies to them like to any other candidate
    let probe_base = state.incumbent.point.clone();
    let mut best: Option<(f64, StateVector, f64)> = None;
    for &a in &config.omega_grid {
        if state.budget.exhausted() {
            break;
        }
        let values: Vec<f64> = probe_base
            .iter()
            .zip(&direction)
            .map(|(&x, &d)| x + a * d)
            .collect();
        let probe = clamp_to_bounds(&StateVector::new_unchecked(values), problem.bounds());
        let value = evaluate(problem, &probe, &mut state.budget)?;
        if best.as_ref().map_or(true, |(_, _, bv)| value < *bv) {
            best = Some((a, probe, value));
        }
    }
    let Some((a_star, point, value)) = best else {
        return Err(Error::BudgetExhausted {
            used: state.budget.used(),
            limit: state.budget.limit().unwrap_or(u64::MAX),
        });
    };
    if value < state.incumbent.value {
        let displaced = std::mem::replace(&mut state.incumbent.point, point);
        state.archive.push(displaced);
        state.incumbent.value = value;
    }
    Ok(Some(a_star))
}

struct CurveRecorder {
    stride: u64,
    next_mark: u64,
    points: Vec<CurvePoint>,
}

impl CurveRecorder {
    fn new(stride: u64, evaluations: u64, fbest: f64) -> Self {
        Self {
            stride,
            next_mark: (evaluations / stride + 1) * stride,
            points: vec![CurvePoint {
                evaluations,
                fbest,
            }],
        }
    }

    fn record(&mut self, evaluations: u64, fbest: f64) {
        if evaluations >= self.next_mark {
            self.points.push(CurvePoint {
                evaluations,
                fbest,
            });
            self.next_mark = (evaluations / self.stride + 1) * self.stride;
        }
    }

    fn finish(mut self, evaluations: u64, fbest: f64) -> Vec<CurvePoint> {
        let last = self.points.last_mut().expect("curve has the initial point");
        if last.evaluations < evaluations {
            self.points.push(CurvePoint {
                evaluations,
                fbest,
            });
        } else {
            last.fbest = fbest;
        }
        self.points
    }
}
