//! Summary statistics and the two-sided Wilcoxon rank-sum test.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::algorithms::Variant;
use crate::error::Error;
use crate::Result;

use super::ExperimentResults;

/// Mean and sample standard deviation (n-1 denominator, Welford update);
/// the std of fewer than two values is 0.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, 0.0);
    }
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (i, &v) in values.iter().enumerate() {
        let delta = v - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (v - mean);
    }
    let std = if values.len() < 2 {
        0.0
    } else {
        (m2 / (values.len() - 1) as f64).sqrt()
    };
    (mean, std)
}

/// Which sample a two-sided rank-sum test favors (smaller is better).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankSumVerdict {
    ABetter,
    BBetter,
    NoDifference,
}

/// Result of [`wilcoxon_rank_sum`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankSumTest {
    pub verdict: RankSumVerdict,
    /// Two-sided p-value from the tie-corrected normal approximation with
    /// continuity correction.
    pub p_value: f64,
    /// Rank sum W of sample `a` (midranks).
    pub statistic: f64,
    pub z: f64,
}

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) test on minimization
/// outcomes: verdicts point at the sample with the smaller values when the
/// difference is significant. Fully degenerate input (every pooled value
/// identical) yields `NoDifference` with p = 1.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64], significance: f64) -> Result<RankSumTest> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid("rank-sum samples must be non-empty"));
    }
    if !(significance > 0.0 && significance < 1.0) {
        return Err(Error::invalid("significance must lie in (0, 1)"));
    }
    if a.iter().chain(b).any(|v| v.is_nan()) {
        return Err(Error::invalid("rank-sum samples must not contain NaN"));
    }

    let n1 = a.len() as f64;
    let n2 = b.len() as f64;
    let total = a.len() + b.len();

    // pool, sort, assign midranks
    let mut pooled: Vec<(f64, bool)> = a
        .iter()
        .map(|&v| (v, true))
        .chain(b.iter().map(|&v| (v, false)))
        .collect();
    pooled.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("no NaN"));
    let mut w = 0.0; // rank sum of sample a
    let mut tie_term = 0.0; // Σ (t³ - t) over tie groups
    let mut i = 0;
    while i < total {
        let mut j = i + 1;
        while j < total && pooled[j].0 == pooled[i].0 {
            j += 1;
        }
        let midrank = (i + 1 + j) as f64 / 2.0;
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        for item in &pooled[i..j] {
            if item.1 {
                w += midrank;
            }
        }
        i = j;
    }

    let n = total as f64;
    let mean_w = n1 * (n + 1.0) / 2.0;
    let variance = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if variance <= 0.0 {
        // all pooled values identical
        return Ok(RankSumTest {
            verdict: RankSumVerdict::NoDifference,
            p_value: 1.0,
            statistic: w,
            z: 0.0,
        });
    }
    let diff = w - mean_w;
    let corrected = diff.signum() * (diff.abs() - 0.5).max(0.0);
    let z = corrected / variance.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let p_value = (2.0 * (1.0 - normal.cdf(z.abs()))).min(1.0);

    let verdict = if p_value <= significance {
        // direction by medians, falling back to the rank statistic when
        // the medians coincide
        let med_a = median(a);
        let med_b = median(b);
        if med_a < med_b || (med_a == med_b && diff < 0.0) {
            RankSumVerdict::ABetter
        } else {
            RankSumVerdict::BBetter
        }
    } else {
        RankSumVerdict::NoDifference
    };

    Ok(RankSumTest {
        verdict,
        p_value,
        statistic: w,
        z,
    })
}

fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|x, y| x.partial_cmp(y).expect("no NaN"));
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    }
}

/// Verdict of one grid cell in a pairwise algorithm comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairwiseCell {
    pub benchmark: String,
    pub dim: usize,
    pub verdict: RankSumVerdict,
    pub p_value: f64,
}

/// Pairwise comparison of two algorithms over a shared benchmark grid.
///
/// Counting convention: the rollup is from the *reference* algorithm's
/// perspective — `wins` counts cells where the reference is significantly
/// better (its final objective values are smaller), `losses` where it is
/// significantly worse, `ties` the rest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairwiseComparison {
    pub reference: Variant,
    pub against: Variant,
    pub cells: Vec<PairwiseCell>,
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
}

/// Runs the rank-sum test per (benchmark, dim) cell between two algorithms
/// of one experiment.
pub fn compare_cells(
    results: &ExperimentResults,
    reference: Variant,
    against: Variant,
    significance: f64,
) -> Result<PairwiseComparison> {
    let mut cells = Vec::new();
    let (mut wins, mut ties, mut losses) = (0, 0, 0);
    for cell in &results.cells {
        if cell.algorithm != reference {
            continue;
        }
        let Some(other) = results.cell(&cell.benchmark, cell.dim, against) else {
            continue;
        };
        let a: Vec<f64> = cell.records.iter().map(|r| r.best_value).collect();
        let b: Vec<f64> = other.records.iter().map(|r| r.best_value).collect();
        if a.is_empty() || b.is_empty() {
            continue;
        }
        let test = wilcoxon_rank_sum(&a, &b, significance)?;
        match test.verdict {
            RankSumVerdict::ABetter => wins += 1,
            RankSumVerdict::NoDifference => ties += 1,
            RankSumVerdict::BBetter => losses += 1,
        }
        cells.push(PairwiseCell {
            benchmark: cell.benchmark.clone(),
            dim: cell.dim,
            verdict: test.verdict,
            p_value: test.p_value,
        });
    }
    if cells.is_empty() {
        return Err(Error::invalid(
            "no overlapping cells between the two algorithms",
        ));
    }
    Ok(PairwiseComparison {
        reference,
        against,
        cells,
        wins,
        ties,
        losses,
    })
}
