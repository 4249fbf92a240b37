//! Self-verification checks: analytic gradients against central finite
//! differences, optimum consistency, and operator geometry. Backs the
//! `verify` CLI subcommand and the negative-control tests.

use crate::benchmarks::{central_difference_gradient, Benchmark};
use crate::operators;
use crate::state::StateVector;
use crate::RandomSource;

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckReport {
    fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            detail: detail.into(),
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: false,
            detail: detail.into(),
        }
    }
}

/// Tuning knobs for the check suite.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Random interior points per gradient check.
    pub points: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            points: 100,
            seed: 1,
        }
    }
}

/// Runs every check against the given benchmark set.
pub fn run_all_checks(benchmarks: &[Benchmark], options: VerifyOptions) -> Vec<CheckReport> {
    let mut reports = Vec::new();
    for bench in benchmarks {
        reports.push(gradient_check(bench, options));
        reports.push(optimum_check(bench));
    }
    reports.extend(operator_geometry_checks(options.seed));
    reports
}

/// Compares the analytic gradient with central finite differences at
/// random interior points. Schwefel probes are moved away from its kink
/// coordinates first.
pub fn gradient_check(bench: &Benchmark, options: VerifyOptions) -> CheckReport {
    let name = format!("gradient-vs-fd [{}]", bench.id());
    if !bench.problem().has_gradient() {
        return CheckReport::fail(name, "problem exposes no gradient".to_string());
    }
    let mut rng = RandomSource::new(options.seed);
    let mut skipped_kinks = 0usize;
    let mut worst: f64 = 0.0;
    for _ in 0..options.points {
        let mut x = bench.problem().bounds().sample(&mut rng);
        if bench.id() == "schwefel" {
            let moved: Vec<f64> = x
                .iter()
                .map(|v| if v.abs() < 1.0 { v + 2.0 } else { *v })
                .collect();
            if moved != *x.as_slice() {
                skipped_kinks += 1;
            }
            x = StateVector::new(moved).expect("finite probe");
        }
        let analytic = match bench.problem().gradient_at(&x) {
            Ok(g) => g,
            Err(e) => return CheckReport::fail(name, format!("gradient failed: {e}")),
        };
        let numeric = central_difference_gradient(bench.problem(), &x);
        let noise_floor = 1e-7 * (1.0 + bench.problem().value(&x).abs());
        for (i, (a, fd)) in analytic.iter().zip(&numeric).enumerate() {
            let scale = a.abs().max(fd.abs());
            let tol = (1e-5 * scale).max(noise_floor);
            let err = (a - fd).abs();
            if err > tol {
                return CheckReport::fail(
                    name,
                    format!("coordinate {i}: analytic {a:e} vs fd {fd:e}"),
                );
            }
            if scale > 0.0 {
                worst = worst.max(err / scale.max(noise_floor));
            }
        }
    }
    let mut detail = format!("{} points, worst relative error {worst:.2e}", options.points);
    if skipped_kinks > 0 {
        detail.push_str(&format!(
            "; {skipped_kinks} probes moved off kink coordinates"
        ));
    }
    CheckReport::pass(name, detail)
}

/// Checks that the known optimum evaluates to the known value and (except
/// for the four-decimal Schwefel optimum) has a near-zero gradient.
pub fn optimum_check(bench: &Benchmark) -> CheckReport {
    let name = format!("optimum-consistency [{}]", bench.id());
    let spec = bench.spec();
    let (Some(point), Some(value)) = (&spec.known_optimum_point, spec.known_optimum_value) else {
        return CheckReport::pass(name, "optimum unknown, skipped");
    };
    let got = bench.problem().value(point);
    let tol = bench.optimum_tolerance();
    if (got - value).abs() > tol {
        return CheckReport::fail(name, format!("f(x*) = {got:e}, expected {value} ± {tol:e}"));
    }
    if bench.id() == "schwefel" {
        return CheckReport::pass(name, format!("f(x*) = {got:e}; gradient clause skipped (four-decimal optimum)"));
    }
    match bench.problem().grad_norm(point) {
        Ok(norm) if norm <= 1e-3 => {
            CheckReport::pass(name, format!("f(x*) = {got:e}, |∇f(x*)| = {norm:.2e}"))
        }
        Ok(norm) => CheckReport::fail(name, format!("|∇f(x*)| = {norm:e} exceeds 1e-3")),
        Err(e) => CheckReport::fail(name, format!("gradient at optimum failed: {e}")),
    }
}

/// Geometry contracts of the operators: rotation stays inside its ball,
/// standard translation is collinear with the improvement direction, and
/// second-order predictive displacements are parallel to the archive pair
/// difference.
pub fn operator_geometry_checks(seed: u64) -> Vec<CheckReport> {
    let mut reports = Vec::new();
    let mut rng = RandomSource::new(seed);

    let center = StateVector::new(vec![0.6, -1.3, 2.1, 0.0]).unwrap();
    let mut ok = true;
    let mut detail = String::new();
    'outer: for &alpha in &[1.0, 1e-2, 1e-4] {
        let batch = operators::rotate(&center, alpha, 100_000, &mut rng).unwrap();
        for c in batch.iter() {
            let d = c.distance(&center);
            if d > alpha + 1e-12 {
                ok = false;
                detail = format!("alpha {alpha:e}: displacement {d:e} leaves the ball");
                break 'outer;
            }
        }
    }
    reports.push(if ok {
        CheckReport::pass(
            "operator-geometry [rotation-radius]",
            "3 × 1e5 candidates inside their balls",
        )
    } else {
        CheckReport::fail("operator-geometry [rotation-radius]", detail)
    });

    let s = StateVector::new(vec![0.25, 1.5, -0.75]).unwrap();
    let prev = StateVector::new(vec![-1.0, 0.5, 0.5]).unwrap();
    let dir: Vec<f64> = s.iter().zip(prev.iter()).map(|(a, b)| a - b).collect();
    let batch = operators::translate_standard(&s, &prev, 2.5, 1000, &mut rng).unwrap();
    let collinear = batch.iter().all(|c| {
        let disp: Vec<f64> = c.iter().zip(s.iter()).map(|(a, b)| a - b).collect();
        cross_within(&disp, &dir, 1e-10)
    });
    reports.push(if collinear {
        CheckReport::pass(
            "operator-geometry [translation-collinear]",
            "1000 candidates collinear with the improvement direction",
        )
    } else {
        CheckReport::fail(
            "operator-geometry [translation-collinear]",
            "displacement leaves the translation line",
        )
    });

    let a = StateVector::new(vec![1.1, -0.2, 0.4]).unwrap();
    let b = StateVector::new(vec![0.3, 0.9, -1.6]).unwrap();
    let pair_dir: Vec<f64> = a.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
    let batch = operators::translate_predictive(
        &s,
        &a,
        &b,
        1.0,
        operators::PredictiveOrder::Second,
        1000,
        &mut rng,
    )
    .unwrap();
    let parallel = batch.iter().all(|c| {
        let disp: Vec<f64> = c.iter().zip(s.iter()).map(|(x, y)| x - y).collect();
        cross_within(&disp, &pair_dir, 1e-10)
    });
    reports.push(if parallel {
        CheckReport::pass(
            "operator-geometry [predictive-parallel]",
            "1000 second-order displacements parallel to the archive pair",
        )
    } else {
        CheckReport::fail(
            "operator-geometry [predictive-parallel]",
            "second-order displacement not parallel to the pair difference",
        )
    });

    reports
}

fn cross_within(u: &[f64], v: &[f64], tol: f64) -> bool {
    let scale = u
        .iter()
        .map(|x| x.abs())
        .fold(0.0f64, f64::max)
        .max(v.iter().map(|x| x.abs()).fold(0.0f64, f64::max))
        .max(1.0);
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if (u[i] * v[j] - u[j] * v[i]).abs() > tol * scale * scale {
                return false;
            }
        }
    }
    true
}
