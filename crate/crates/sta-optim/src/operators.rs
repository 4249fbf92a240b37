//! The state transformation operators.
//!
//! Each operator maps the incumbent state to a batch of `se` candidate
//! states, drawing fresh randomness per candidate:
//!
//! * rotation — `s + α·R_r·u/‖u‖₂` with `R_r ~ U[-1,1]` and
//!   `u ~ U[-1,1]ⁿ`; searches a hypersphere of maximal radius `α`.
//! * translation — `s + β·R_t·(s - s_prev)/‖s - s_prev‖₂` with
//!   `R_t ~ U[0,1]`; searches along the line of the most recent
//!   improvement, up to length `β`.
//! * predictive translation — `s + β·R̂_t·d` with `R̂_t ~ U[-1,1]` and an
//!   *unnormalized* direction `d` taken from archived historical bests:
//!   `d = s - s₋₁` (first order) or `d = s₋₁ - s₋₂` (second order).
//! * expansion — `s + γ·R_e·s`, `R_e` a random diagonal of iid standard
//!   Gaussians; expands coordinates over the whole axis.
//! * axesion — like expansion but with a single random nonzero diagonal
//!   position, strengthening single-dimensional search.
//!
//! The supplementary all-ones forms replace the state on the right-hand
//! side with the all-ones vector (`s + γ·R_e·1`, `s + δ·R_a·1`), which
//! keeps jumps alive when the incumbent sits close to the origin where the
//! multiplicative forms stall.
//!
//! Candidates are returned unclamped so the geometric contracts (rotation
//! radius, translation collinearity) hold exactly; callers project onto
//! the search box before evaluating.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::state::StateVector;
use crate::RandomSource;
use crate::Result;

/// How many times a zero-norm random direction is redrawn before giving up.
const DEGENERATE_RETRIES: usize = 100;

/// The transformation factors and the rotation-factor schedule constants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformParams {
    /// Rotation factor α: maximal rotation radius.
    pub alpha: f64,
    /// Translation factor β.
    pub beta: f64,
    /// Expansion factor γ.
    pub gamma: f64,
    /// Axesion factor δ.
    pub delta: f64,
    /// Lower cycle bound for α in the standard loop.
    pub alpha_min: f64,
    /// Upper bound for α; also the reset value of the standard cycle.
    pub alpha_max: f64,
    /// Decay base: α ← α / fc.
    pub fc: f64,
}

impl Default for TransformParams {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            beta: 1.0,
            gamma: 1.0,
            delta: 1.0,
            alpha_min: 1e-4,
            alpha_max: 1.0,
            fc: 2.0,
        }
    }
}

impl TransformParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("delta", self.delta),
            ("alpha_min", self.alpha_min),
            ("alpha_max", self.alpha_max),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        if self.alpha_min >= self.alpha_max {
            return Err(Error::invalid("alpha_min must be below alpha_max"));
        }
        if !(self.fc.is_finite() && self.fc > 1.0) {
            return Err(Error::invalid("fc must exceed 1"));
        }
        Ok(())
    }
}

/// A batch of candidate states produced by one operator application.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateBatch {
    candidates: Vec<StateVector>,
}

impl CandidateBatch {
    fn with_capacity(se: usize) -> Self {
        Self {
            candidates: Vec::with_capacity(se),
        }
    }

    /// Wraps explicit candidates, e.g. from a custom operator.
    pub fn from_candidates(candidates: Vec<StateVector>) -> Self {
        Self { candidates }
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &StateVector> {
        self.candidates.iter()
    }

    pub fn into_vec(self) -> Vec<StateVector> {
        self.candidates
    }

    fn extend(&mut self, other: CandidateBatch) {
        self.candidates.extend(other.candidates);
    }
}

fn check_factor(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "{name} must be positive and finite, got {value}"
        )))
    }
}

fn check_se(se: usize) -> Result<()> {
    if se >= 1 {
        Ok(())
    } else {
        Err(Error::invalid("sample size se must be at least 1"))
    }
}

/// Rotation: `se` candidates inside the closed ball of radius `alpha`
/// around `s`.
pub fn rotate(
    s: &StateVector,
    alpha: f64,
    se: usize,
    rng: &mut RandomSource,
) -> Result<CandidateBatch> {
    check_factor("alpha", alpha)?;
    check_se(se)?;
    let n = s.dim();
    let mut batch = CandidateBatch::with_capacity(se);
    let mut direction = vec![0.0; n];
    for _ in 0..se {
        let r = rng.uniform_sym();
        let mut tries = 0;
        let norm = loop {
            for d in direction.iter_mut() {
                *d = rng.uniform_sym();
            }
            let norm = direction.iter().map(|d| d * d).sum::<f64>().sqrt();
            if norm > 0.0 {
                break norm;
            }
            tries += 1;
            if tries >= DEGENERATE_RETRIES {
                return Err(Error::DegenerateDirection {
                    context: "rotation sampled a zero-norm direction repeatedly",
                });
            }
        };
        let scale = alpha * r / norm;
        let values = s
            .iter()
            .zip(&direction)
            .map(|(&x, &d)| x + scale * d)
            .collect();
        batch.candidates.push(StateVector::new_unchecked(values));
    }
    Ok(batch)
}

/// Translation along the normalized line from `s_prev` to `s`, at random
/// distances in `[0, beta]`.
pub fn translate_standard(
    s: &StateVector,
    s_prev: &StateVector,
    beta: f64,
    se: usize,
    rng: &mut RandomSource,
) -> Result<CandidateBatch> {
    check_factor("beta", beta)?;
    check_se(se)?;
    if s.dim() != s_prev.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: s_prev.dim(),
        });
    }
    let diff: Vec<f64> = s.iter().zip(s_prev.iter()).map(|(a, b)| a - b).collect();
    let norm = diff.iter().map(|d| d * d).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::DegenerateDirection {
            context: "translation states coincide",
        });
    }
    let mut batch = CandidateBatch::with_capacity(se);
    for _ in 0..se {
        let step = beta * rng.uniform_01() / norm;
        let values = s
            .iter()
            .zip(&diff)
            .map(|(&x, &d)| x + step * d)
            .collect();
        batch.candidates.push(StateVector::new_unchecked(values));
    }
    Ok(batch)
}

/// Predictive-model order for [`translate_predictive`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PredictiveOrder {
    /// Direction `s - a` (a plays the newer historical state).
    First,
    /// Direction `a - b` (difference of the two historical states).
    Second,
}

/// Predictive translation: signed, unnormalized steps `s + beta·R̂·d`.
pub fn translate_predictive(
    s: &StateVector,
    a: &StateVector,
    b: &StateVector,
    beta: f64,
    order: PredictiveOrder,
    se: usize,
    rng: &mut RandomSource,
) -> Result<CandidateBatch> {
    check_factor("beta", beta)?;
    check_se(se)?;
    if s.dim() != a.dim() || s.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: a.dim().max(b.dim()),
        });
    }
    let direction: Vec<f64> = match order {
        PredictiveOrder::First => s.iter().zip(a.iter()).map(|(x, y)| x - y).collect(),
        PredictiveOrder::Second => a.iter().zip(b.iter()).map(|(x, y)| x - y).collect(),
    };
    if direction.iter().all(|&d| d == 0.0) {
        return Err(Error::DegenerateDirection {
            context: "predictive translation direction is zero",
        });
    }
    let mut batch = CandidateBatch::with_capacity(se);
    for _ in 0..se {
        let step = beta * rng.uniform_sym();
        let values = s
            .iter()
            .zip(&direction)
            .map(|(&x, &d)| x + step * d)
            .collect();
        batch.candidates.push(StateVector::new_unchecked(values));
    }
    Ok(batch)
}

/// Original expansion: `candidate[i] = s[i]·(1 + gamma·gᵢ)`.
pub fn expand_original(
    s: &StateVector,
    gamma: f64,
    se: usize,
    rng: &mut RandomSource,
) -> Result<CandidateBatch> {
    check_factor("gamma", gamma)?;
    check_se(se)?;
    let mut batch = CandidateBatch::with_capacity(se);
    for _ in 0..se {
        let values = s.iter().map(|&x| x + gamma * rng.gaussian() * x).collect();
        batch.candidates.push(StateVector::new_unchecked(values));
    }
    Ok(batch)
}

/// All-ones expansion: `candidate[i] = s[i] + gamma·gᵢ`.
pub fn expand_allones(
    s: &StateVector,
    gamma: f64,
    se: usize,
    rng: &mut RandomSource,
) -> Result<CandidateBatch> {
    check_factor("gamma", gamma)?;
    check_se(se)?;
    let mut batch = CandidateBatch::with_capacity(se);
    for _ in 0..se {
        let values = s.iter().map(|&x| x + gamma * rng.gaussian()).collect();
        batch.candidates.push(StateVector::new_unchecked(values));
    }
    Ok(batch)
}

/// Original axesion: one uniformly chosen coordinate j gets
/// `s[j]·(1 + delta·g)`; all others stay.
pub fn axesion_original(
    s: &StateVector,
    delta: f64,
    se: usize,
    rng: &mut RandomSource,
) -> Result<CandidateBatch> {
    check_factor("delta", delta)?;
    check_se(se)?;
    let mut batch = CandidateBatch::with_capacity(se);
    for _ in 0..se {
        let axis = rng.index(s.dim());
        let g = rng.gaussian();
        let mut values = s.as_slice().to_vec();
        values[axis] += delta * g * values[axis];
        batch.candidates.push(StateVector::new_unchecked(values));
    }
    Ok(batch)
}

/// All-ones axesion: one uniformly chosen coordinate j gets `s[j] + delta·g`.
pub fn axesion_allones(
    s: &StateVector,
    delta: f64,
    se: usize,
    rng: &mut RandomSource,
) -> Result<CandidateBatch> {
    check_factor("delta", delta)?;
    check_se(se)?;
    let mut batch = CandidateBatch::with_capacity(se);
    for _ in 0..se {
        let axis = rng.index(s.dim());
        let g = rng.gaussian();
        let mut values = s.as_slice().to_vec();
        values[axis] += delta * g;
        batch.candidates.push(StateVector::new_unchecked(values));
    }
    Ok(batch)
}

/// Equal mixture of the original and all-ones expansion forms; the
/// original form receives the extra candidate when `se` is odd.
pub fn expand_mixed(
    s: &StateVector,
    gamma: f64,
    se: usize,
    rng: &mut RandomSource,
) -> Result<CandidateBatch> {
    check_se(se)?;
    let original = se - se / 2;
    let mut batch = expand_original(s, gamma, original, rng)?;
    if se / 2 > 0 {
        batch.extend(expand_allones(s, gamma, se / 2, rng)?);
    }
    Ok(batch)
}

/// Equal mixture of the original and all-ones axesion forms; the original
/// form receives the extra candidate when `se` is odd.
pub fn axesion_mixed(
    s: &StateVector,
    delta: f64,
    se: usize,
    rng: &mut RandomSource,
) -> Result<CandidateBatch> {
    check_se(se)?;
    let original = se - se / 2;
    let mut batch = axesion_original(s, delta, original, rng)?;
    if se / 2 > 0 {
        batch.extend(axesion_allones(s, delta, se / 2, rng)?);
    }
    Ok(batch)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(values: &[f64]) -> StateVector {
        StateVector::new(values.to_vec()).unwrap()
    }

    #[test]
    fn rotation_stays_in_ball() {
        let mut rng = RandomSource::new(11);
        let s = sv(&[0.0, 0.0]);
        let batch = rotate(&s, 1.0, 1000, &mut rng).unwrap();
        assert_eq!(batch.len(), 1000);
        for c in batch.iter() {
            assert!(c.distance(&s) <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn rotation_radius_over_alphas() {
        // 1e5 candidates per alpha, all within alpha of the center
        let s = sv(&[1.0, -2.0, 3.0, 0.5, -0.25]);
        for &alpha in &[1.0, 1e-2, 1e-4] {
            let mut rng = RandomSource::new(23);
            let batch = rotate(&s, alpha, 100_000, &mut rng).unwrap();
            for c in batch.iter() {
                assert!(c.distance(&s) <= alpha + 1e-12);
            }
        }
    }

    #[test]
    fn rotation_vanishing_alpha_keeps_state() {
        let mut rng = RandomSource::new(2);
        let s = sv(&[4.0, -7.0]);
        let batch = rotate(&s, 1e-300, 50, &mut rng).unwrap();
        for c in batch.iter() {
            assert_eq!(c.as_slice(), s.as_slice());
        }
    }

    #[test]
    fn rotation_attains_radius_in_one_dimension() {
        // in 1-D the displacement is |R_r|·alpha, so over many draws the
        // empirical maximum must approach alpha from below
        let s = sv(&[5.0]);
        let alpha = 0.1;
        let mut max_disp: f64 = 0.0;
        for seed in 0..100 {
            let mut rng = RandomSource::new(seed);
            let batch = rotate(&s, alpha, 100, &mut rng).unwrap();
            for c in batch.iter() {
                max_disp = max_disp.max((c[0] - 5.0).abs());
            }
        }
        assert!(max_disp <= alpha);
        assert!(max_disp >= 0.099, "max displacement {max_disp}");
    }

    #[test]
    fn translation_moves_along_the_line() {
        let mut rng = RandomSource::new(9);
        let s = sv(&[1.0, 0.0]);
        let prev = sv(&[0.0, 0.0]);
        let batch = translate_standard(&s, &prev, 2.0, 500, &mut rng).unwrap();
        for c in batch.iter() {
            let t = c[0] - 1.0;
            assert!((0.0..=2.0).contains(&t), "step {t}");
            assert_eq!(c[1], 0.0);
        }
    }

    #[test]
    fn translation_direction_three_four() {
        // direction (3,4)/5; candidates live on the segment (3,4)..(6,8)
        let mut rng = RandomSource::new(4);
        let s = sv(&[3.0, 4.0]);
        let prev = sv(&[0.0, 0.0]);
        let batch = translate_standard(&s, &prev, 5.0, 500, &mut rng).unwrap();
        for c in batch.iter() {
            let t = (c[0] - 3.0) / 3.0;
            assert!((0.0..=1.0).contains(&t));
            assert!((c[1] - (4.0 + 4.0 * t)).abs() <= 1e-12);
        }
    }

    #[test]
    fn translation_rejects_coincident_states() {
        let mut rng = RandomSource::new(1);
        let s = sv(&[2.0, 2.0]);
        assert!(matches!(
            translate_standard(&s, &s, 1.0, 10, &mut rng),
            Err(Error::DegenerateDirection { .. })
        ));
    }

    #[test]
    fn translation_collinearity() {
        let mut rng = RandomSource::new(31);
        let s = sv(&[0.3, -1.2, 2.2]);
        let prev = sv(&[1.0, 0.7, -0.4]);
        let dir: Vec<f64> = s.iter().zip(prev.iter()).map(|(a, b)| a - b).collect();
        let dir_norm = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
        let batch = translate_standard(&s, &prev, 3.0, 1000, &mut rng).unwrap();
        for c in batch.iter() {
            let disp: Vec<f64> = c.iter().zip(s.iter()).map(|(a, b)| a - b).collect();
            let disp_norm = disp.iter().map(|d| d * d).sum::<f64>().sqrt();
            // cross-product components vanish for collinear vectors
            for i in 0..3 {
                for j in i + 1..3 {
                    let cross = disp[i] * dir[j] - disp[j] * dir[i];
                    assert!(cross.abs() <= 1e-10 * dir_norm * disp_norm.max(1.0));
                }
            }
        }
    }

    #[test]
    fn predictive_first_order_interval() {
        let mut rng = RandomSource::new(8);
        let s = sv(&[2.0]);
        let a = sv(&[1.0]);
        let batch =
            translate_predictive(&s, &a, &a, 1.0, PredictiveOrder::First, 500, &mut rng).unwrap();
        for c in batch.iter() {
            assert!((1.0..=3.0).contains(&c[0]), "candidate {}", c[0]);
        }
    }

    #[test]
    fn predictive_second_order_segment() {
        let mut rng = RandomSource::new(8);
        let s = sv(&[0.0, 0.0]);
        let a = sv(&[1.0, 1.0]);
        let b = sv(&[0.0, 1.0]);
        let batch =
            translate_predictive(&s, &a, &b, 1.0, PredictiveOrder::Second, 500, &mut rng).unwrap();
        for c in batch.iter() {
            assert!((-1.0..=1.0).contains(&c[0]));
            assert_eq!(c[1], 0.0);
        }
    }

    #[test]
    fn predictive_second_order_parallel_to_pair_difference() {
        let mut rng = RandomSource::new(77);
        let s = sv(&[0.4, -0.1, 0.9]);
        let a = sv(&[1.3, 0.8, -0.2]);
        let b = sv(&[0.1, 1.9, 0.6]);
        let dir: Vec<f64> = a.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
        let batch =
            translate_predictive(&s, &a, &b, 1.5, PredictiveOrder::Second, 1000, &mut rng)
                .unwrap();
        for c in batch.iter() {
            let disp: Vec<f64> = c.iter().zip(s.iter()).map(|(x, y)| x - y).collect();
            for i in 0..3 {
                for j in i + 1..3 {
                    let cross = disp[i] * dir[j] - disp[j] * dir[i];
                    assert!(cross.abs() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn predictive_zero_direction_is_degenerate() {
        let mut rng = RandomSource::new(1);
        let s = sv(&[2.0]);
        let a = sv(&[2.0]);
        assert!(matches!(
            translate_predictive(&s, &a, &a, 1.0, PredictiveOrder::First, 5, &mut rng),
            Err(Error::DegenerateDirection { .. })
        ));
    }

    #[test]
    fn expansion_fixes_zero_axesion_too() {
        let mut rng = RandomSource::new(3);
        let zero = sv(&[0.0, 0.0, 0.0]);
        for c in expand_original(&zero, 1.0, 100, &mut rng).unwrap().iter() {
            assert_eq!(c.as_slice(), zero.as_slice());
        }
        for c in axesion_original(&zero, 1.0, 100, &mut rng).unwrap().iter() {
            assert_eq!(c.as_slice(), zero.as_slice());
        }
        // the all-ones forms must NOT fix zero
        let moved = expand_allones(&zero, 1.0, 100, &mut rng)
            .unwrap()
            .iter()
            .all(|c| c.as_slice() != zero.as_slice());
        assert!(moved);
        for c in axesion_allones(&zero, 1.0, 100, &mut rng).unwrap().iter() {
            let nonzero = c.iter().filter(|v| **v != 0.0).count();
            assert_eq!(nonzero, 1);
        }
    }

    #[test]
    fn expansion_moments_at_unit_state() {
        // candidate = 1 + g with g ~ N(0,1): mean 1, std 1
        let mut rng = RandomSource::new(17);
        let s = sv(&[1.0]);
        let n = 100_000;
        let batch = expand_original(&s, 1.0, n, &mut rng).unwrap();
        let values: Vec<f64> = batch.iter().map(|c| c[0]).collect();
        let mean = values.iter().sum::<f64>() / n as f64;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
        assert!((mean - 1.0).abs() <= 0.02, "mean {mean}");
        assert!((var.sqrt() - 1.0).abs() <= 0.02, "std {}", var.sqrt());
    }

    #[test]
    fn expansion_jump_probability_from_near_origin() {
        // from s = 0.2 with gamma = 1 the original form needs g >= 3 to
        // reach 0.8, so the hit rate is about 0.13%
        let mut rng = RandomSource::new(29);
        let s = sv(&[0.2]);
        let total = 1_000_000;
        let batch = expand_original(&s, 1.0, total, &mut rng).unwrap();
        let hits = batch.iter().filter(|c| c[0] >= 0.8).count();
        let p = hits as f64 / total as f64;
        assert!((p - 0.0013).abs() <= 0.0005, "P(candidate >= 0.8) = {p}");
    }

    #[test]
    fn allones_axesion_jump_probability() {
        // from s = 0.2 with delta = 1 the additive form needs g >= 0.8 to
        // reach 1, about a 21% chance
        let mut rng = RandomSource::new(37);
        let s = sv(&[0.2]);
        let total = 1_000_000;
        let batch = axesion_allones(&s, 1.0, total, &mut rng).unwrap();
        let hits = batch.iter().filter(|c| c[0] >= 1.0).count();
        let p = hits as f64 / total as f64;
        assert!((p - 0.21).abs() <= 0.01, "P(candidate >= 1) = {p}");
    }

    #[test]
    fn allones_vanishing_factors_keep_state() {
        let mut rng = RandomSource::new(5);
        let s = sv(&[5.0, 5.0]);
        for c in expand_allones(&s, 1e-300, 20, &mut rng).unwrap().iter() {
            for (a, b) in c.iter().zip(s.iter()) {
                assert!((a - b).abs() <= 1e-290);
            }
        }
        for c in axesion_allones(&s, 1e-300, 20, &mut rng).unwrap().iter() {
            for (a, b) in c.iter().zip(s.iter()) {
                assert!((a - b).abs() <= 1e-290);
            }
        }
    }

    #[test]
    fn axesion_touches_at_most_one_coordinate() {
        let mut rng = RandomSource::new(13);
        let s = sv(&[1.0, 1.0, 1.0]);
        let batch = axesion_original(&s, 1.0, 1000, &mut rng).unwrap();
        for c in batch.iter() {
            let changed = c.iter().zip(s.iter()).filter(|(a, b)| a != b).count();
            assert!(changed <= 1);
        }
    }

    #[test]
    fn axesion_axis_choice_is_uniform() {
        let mut rng = RandomSource::new(41);
        let s = sv(&[1.0, 1.0, 1.0, 1.0]);
        let mut counts = [0u32; 4];
        let draws = 10_000;
        let batch = axesion_allones(&s, 1.0, draws, &mut rng).unwrap();
        for c in batch.iter() {
            for i in 0..4 {
                if c[i] != 1.0 {
                    counts[i] += 1;
                }
            }
        }
        for (i, &count) in counts.iter().enumerate() {
            let freq = f64::from(count) / draws as f64;
            assert!((freq - 0.25).abs() <= 0.02, "axis {i} frequency {freq}");
        }
    }

    #[test]
    fn batches_have_exactly_se_candidates() {
        let mut rng = RandomSource::new(6);
        let s = sv(&[0.5, -0.5]);
        let prev = sv(&[0.0, 0.0]);
        for se in [1, 2, 7, 30] {
            assert_eq!(rotate(&s, 1.0, se, &mut rng).unwrap().len(), se);
            assert_eq!(
                translate_standard(&s, &prev, 1.0, se, &mut rng).unwrap().len(),
                se
            );
            assert_eq!(expand_mixed(&s, 1.0, se, &mut rng).unwrap().len(), se);
            assert_eq!(axesion_mixed(&s, 1.0, se, &mut rng).unwrap().len(), se);
        }
    }

    #[test]
    fn mixed_split_gives_original_the_extra() {
        // from the zero state the original halves are fixed points, so the
        // split is visible directly
        let mut rng = RandomSource::new(19);
        let zero = sv(&[0.0, 0.0]);
        let batch = expand_mixed(&zero, 1.0, 7, &mut rng).unwrap();
        let fixed = batch.iter().filter(|c| c.as_slice() == zero.as_slice()).count();
        assert_eq!(fixed, 4);
        let batch = axesion_mixed(&zero, 1.0, 7, &mut rng).unwrap();
        let fixed = batch.iter().filter(|c| c.as_slice() == zero.as_slice()).count();
        assert_eq!(fixed, 4);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let mut rng = RandomSource::new(1);
        let s = sv(&[1.0]);
        assert!(rotate(&s, 0.0, 5, &mut rng).is_err());
        assert!(rotate(&s, -1.0, 5, &mut rng).is_err());
        assert!(rotate(&s, 1.0, 0, &mut rng).is_err());
        assert!(expand_original(&s, f64::NAN, 5, &mut rng).is_err());
    }
}
