//! Foundational types: states, box bounds, problems, and evaluation budgets.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// A candidate solution: a point in ℝⁿ.
///
/// Invariants: at least one coordinate, all coordinates finite.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StateVector(Vec<f64>);

impl StateVector {
    /// Validates and wraps a coordinate vector.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidState("empty coordinate vector"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidState("non-finite coordinate"));
        }
        Ok(Self(values))
    }

    /// Wraps without the finiteness scan. For internal construction where
    /// the inputs already guarantee the invariant.
    pub(crate) fn new_unchecked(values: Vec<f64>) -> Self {
        debug_assert!(!values.is_empty() && values.iter().all(|v| v.is_finite()));
        Self(values)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Euclidean distance to another state of the same dimension.
    pub fn distance(&self, other: &StateVector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

impl std::ops::Deref for StateVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for StateVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateVector({:?})", self.0)
    }
}

/// Per-coordinate lower/upper limits defining the compact search box Ω.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxBounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxBounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(Error::invalid("bounds must have at least one coordinate"));
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::invalid(format!(
                    "bounds must satisfy lower < upper, got [{lo}, {hi}] at coordinate {i}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// Same `[lo, hi]` interval replicated over `n` coordinates.
    pub fn symmetric(n: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; n], vec![hi; n])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, s: &StateVector) -> bool {
        s.dim() == self.dim()
            && s.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(x, (lo, hi))| lo <= x && x <= hi)
    }

    /// Uniform sample inside the box.
    pub fn sample(&self, rng: &mut crate::RandomSource) -> StateVector {
        let values = self
            .lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| rng.uniform_in(lo, hi))
            .collect();
        StateVector::new_unchecked(values)
    }
}

/// Projects each coordinate of `s` onto the box; interior points pass
/// through unchanged.
pub fn clamp_to_bounds(s: &StateVector, bounds: &BoxBounds) -> StateVector {
    debug_assert_eq!(s.dim(), bounds.dim());
    let values = s
        .iter()
        .zip(bounds.lower().iter().zip(bounds.upper()))
        .map(|(&x, (&lo, &hi))| x.clamp(lo, hi))
        .collect();
    StateVector::new_unchecked(values)
}

type ObjectiveFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
type GradientFn = dyn Fn(&[f64]) -> Result<Vec<f64>> + Send + Sync;

/// A minimization problem over a box: a pure objective, its bounds, and an
/// optional analytic gradient.
#[derive(Clone)]
pub struct Problem {
    dimension: usize,
    bounds: BoxBounds,
    objective: Arc<ObjectiveFn>,
    gradient: Option<Arc<GradientFn>>,
}

impl Problem {
    pub fn new<F>(bounds: BoxBounds, objective: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            dimension: bounds.dim(),
            bounds,
            objective: Arc::new(objective),
            gradient: None,
        }
    }

    pub fn with_gradient<G>(mut self, gradient: G) -> Self
    where
        G: Fn(&[f64]) -> Result<Vec<f64>> + Send + Sync + 'static,
    {
        self.gradient = Some(Arc::new(gradient));
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn bounds(&self) -> &BoxBounds {
        &self.bounds
    }

    pub fn has_gradient(&self) -> bool {
        self.gradient.is_some()
    }

    /// Raw objective value, without budget accounting. Algorithm loops must
    /// charge evaluations through [`evaluate`] instead.
    pub fn value(&self, s: &StateVector) -> f64 {
        (self.objective)(s.as_slice())
    }

    /// Analytic gradient at `x`, if the problem carries one.
    pub fn gradient_at(&self, x: &StateVector) -> Result<Vec<f64>> {
        match &self.gradient {
            Some(g) => {
                if x.dim() != self.dimension {
                    return Err(Error::DimensionMismatch {
                        expected: self.dimension,
                        got: x.dim(),
                    });
                }
                g(x.as_slice())
            }
            None => Err(Error::invalid("problem has no gradient")),
        }
    }

    /// Euclidean norm of the analytic gradient at `x`.
    pub fn grad_norm(&self, x: &StateVector) -> Result<f64> {
        let g = self.gradient_at(x)?;
        Ok(g.iter().map(|v| v * v).sum::<f64>().sqrt())
    }
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("dimension", &self.dimension)
            .field("has_gradient", &self.has_gradient())
            .finish()
    }
}

/// Best solution found so far, paired with its objective value.
#[derive(Clone, Debug, PartialEq)]
pub struct Incumbent {
    pub point: StateVector,
    pub value: f64,
}

impl Incumbent {
    pub fn new(point: StateVector, value: f64) -> Self {
        Self { point, value }
    }
}

/// Objective-evaluation counter with an optional hard limit.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalBudget {
    used: u64,
    limit: Option<u64>,
}

impl EvalBudget {
    /// Budget capped at `limit` evaluations.
    pub fn limited(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::invalid("evaluation limit must be positive"));
        }
        Ok(Self {
            used: 0,
            limit: Some(limit),
        })
    }

    /// Budget with no evaluation cap.
    pub fn unbounded() -> Self {
        Self {
            used: 0,
            limit: None,
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> Option<u64> {
        self.limit
    }

    pub fn exhausted(&self) -> bool {
        matches!(self.limit, Some(l) if self.used >= l)
    }

    /// Charges one evaluation, failing when the cap is already reached.
    pub fn charge(&mut self) -> Result<()> {
        if let Some(limit) = self.limit {
            if self.used >= limit {
                return Err(Error::BudgetExhausted {
                    used: self.used,
                    limit,
                });
            }
        }
        self.used += 1;
        Ok(())
    }
}

/// Evaluates the objective at `s`, charging exactly one budget unit.
pub fn evaluate(problem: &Problem, s: &StateVector, budget: &mut EvalBudget) -> Result<f64> {
    if s.dim() != problem.dimension() {
        return Err(Error::DimensionMismatch {
            expected: problem.dimension(),
            got: s.dim(),
        });
    }
    budget.charge()?;
    Ok(problem.value(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::make_benchmark;
    use proptest::prelude::*;

    fn sv(values: &[f64]) -> StateVector {
        StateVector::new(values.to_vec()).unwrap()
    }

    #[test]
    fn state_vector_rejects_bad_input() {
        assert!(StateVector::new(vec![]).is_err());
        assert!(StateVector::new(vec![1.0, f64::NAN]).is_err());
        assert!(StateVector::new(vec![f64::INFINITY]).is_err());
        assert!(StateVector::new(vec![0.0, -3.5]).is_ok());
    }

    #[test]
    fn bounds_require_lower_below_upper() {
        assert!(BoxBounds::new(vec![0.0], vec![0.0]).is_err());
        assert!(BoxBounds::new(vec![1.0], vec![-1.0]).is_err());
        assert!(BoxBounds::new(vec![-1.0, 0.0], vec![1.0]).is_err());
        assert!(BoxBounds::symmetric(3, -5.0, 5.0).is_ok());
    }

    #[test]
    fn evaluate_sphere_at_origin_is_zero() {
        let bench = make_benchmark("sphere", 20).unwrap();
        let mut budget = EvalBudget::unbounded();
        let x = sv(&vec![0.0; 20]);
        assert_eq!(evaluate(bench.problem(), &x, &mut budget).unwrap(), 0.0);
        assert_eq!(budget.used(), 1);
    }

    #[test]
    fn evaluate_rosenbrock_at_ones_is_zero() {
        let bench = make_benchmark("rosenbrock", 30).unwrap();
        let mut budget = EvalBudget::unbounded();
        let x = sv(&vec![1.0; 30]);
        assert_eq!(evaluate(bench.problem(), &x, &mut budget).unwrap(), 0.0);
    }

    #[test]
    fn evaluate_sphere_three_four() {
        let bench = make_benchmark("sphere", 2).unwrap();
        let mut budget = EvalBudget::unbounded();
        assert_eq!(
            evaluate(bench.problem(), &sv(&[3.0, 4.0]), &mut budget).unwrap(),
            25.0
        );
    }

    #[test]
    fn evaluate_enforces_budget_and_dimension() {
        let bench = make_benchmark("sphere", 2).unwrap();
        let mut budget = EvalBudget::limited(1).unwrap();
        let x = sv(&[1.0, 2.0]);
        assert!(evaluate(bench.problem(), &x, &mut budget).is_ok());
        assert_eq!(
            evaluate(bench.problem(), &x, &mut budget),
            Err(Error::BudgetExhausted { used: 1, limit: 1 })
        );
        let mut budget = EvalBudget::unbounded();
        assert!(matches!(
            evaluate(bench.problem(), &sv(&[1.0]), &mut budget),
            Err(Error::DimensionMismatch { .. })
        ));
        // the failed call must not have charged anything
        assert_eq!(budget.used(), 0);
    }

    #[test]
    fn clamp_examples() {
        let b2 = BoxBounds::symmetric(2, -5.12, 5.12).unwrap();
        assert_eq!(
            clamp_to_bounds(&sv(&[-7.0, 3.0]), &b2).as_slice(),
            &[-5.12, 3.0]
        );
        let b100 = BoxBounds::symmetric(2, -100.0, 100.0).unwrap();
        assert_eq!(
            clamp_to_bounds(&sv(&[0.0, 0.0]), &b100).as_slice(),
            &[0.0, 0.0]
        );
        let b600 = BoxBounds::symmetric(2, -600.0, 600.0).unwrap();
        assert_eq!(
            clamp_to_bounds(&sv(&[600.5, -600.5]), &b600).as_slice(),
            &[600.0, -600.0]
        );
    }

    proptest! {
        #[test]
        fn clamp_is_idempotent_and_in_bounds(
            xs in proptest::collection::vec(-1e4f64..1e4, 1..8),
        ) {
            let n = xs.len();
            let bounds = BoxBounds::symmetric(n, -37.5, 81.25).unwrap();
            let s = StateVector::new(xs).unwrap();
            let once = clamp_to_bounds(&s, &bounds);
            let twice = clamp_to_bounds(&once, &bounds);
            prop_assert_eq!(&once, &twice);
            prop_assert!(bounds.contains(&once));
            if bounds.contains(&s) {
                prop_assert_eq!(&once, &s);
            }
        }
    }

    #[test]
    fn budget_is_monotone() {
        let mut budget = EvalBudget::limited(5).unwrap();
        let mut last = 0;
        for _ in 0..5 {
            budget.charge().unwrap();
            assert!(budget.used() > last);
            last = budget.used();
        }
        assert!(budget.exhausted());
        assert!(budget.charge().is_err());
        assert_eq!(budget.used(), 5);
    }
}
