//! Derivative-free global optimization with the state transition algorithm
//! (STA) family.
//!
//! A candidate solution is a *state*; producing new candidates from the
//! incumbent is a *state transition*. Four stochastic transformation
//! operators (rotation, translation, expansion, axesion) each generate a
//! batch of `SE` candidates around the best solution found so far, and a
//! greedy update keeps the batch minimum whenever it improves.
//!
//! Three loop variants are provided:
//!
//! * [`Variant::StandardSta`] — the classic loop with a periodically
//!   decaying rotation factor and constant remaining factors.
//! * [`Variant::Esta`] — adds predictive translation driven by an archive
//!   of historical bests, supplementary all-ones expansion/axesion forms,
//!   and an intuitive parameter adaptation rule based on the incumbent's
//!   most recent displacement.
//! * [`Variant::Exsta`] — same loop, but the transformation factors are
//!   chosen by an inexact line search over a fixed step-size grid.
//!
//! Besides the usual budget-based stops, ESTA and EXSTA support a
//! *designed* termination: stop once an entire iteration makes no progress
//! while the rotation factor has shrunk to the solution accuracy `ε`. At
//! that point the incumbent is a local minimum up to radius `ε`, which is
//! the derivative-free analogue of a vanishing gradient.
//!
//! The [`benchmarks`] module ships ten standard test functions with
//! analytic gradients, and [`experiment`] runs seeded multi-run studies
//! (mean/std aggregation, gradient-norm reporting, Wilcoxon rank-sum
//! comparisons, convergence-curve export).
//!
//! ```
//! use sta_optim::{algorithms, benchmarks, AlgorithmConfig, RandomSource, Variant};
//!
//! let bench = benchmarks::make_benchmark("sphere", 10).unwrap();
//! let config = AlgorithmConfig::new(Variant::Esta);
//! let mut rng = RandomSource::new(7);
//! let record = algorithms::run(bench.problem(), &config, &mut rng).unwrap();
//! assert!(record.best_value < 1e-10);
//! ```

pub mod algorithms;
pub mod archive;
pub mod benchmarks;
mod error;
pub mod experiment;
pub mod operators;
pub mod rng;
pub mod state;
pub mod verify;

pub use algorithms::{
    AlgorithmConfig, PredictiveModel, RunRecord, TerminationReason, TerminationSpec, Variant,
};
pub use archive::BestArchive;
pub use error::Error;
pub use operators::{CandidateBatch, TransformParams};
pub use rng::RandomSource;
pub use state::{clamp_to_bounds, evaluate, BoxBounds, EvalBudget, Incumbent, Problem, StateVector};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
