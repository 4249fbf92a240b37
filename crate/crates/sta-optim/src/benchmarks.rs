//! The benchmark function suite: ten standard test functions with box
//! bounds, known optima where available, analytic gradients, and the
//! landscape classification used for reporting.
//!
//! Registry ids: `sphere`, `rosenbrock`, `rastrigin`, `griewank`, `ackley`,
//! `quadconvex`, `schwefel`, `michalewicz`, `trid`, `giunta` (codes
//! `f1`..`f10` are accepted as aliases).

use std::f64::consts::{E, PI};

use crate::error::Error;
use crate::state::{BoxBounds, Problem, StateVector};
use crate::Result;

/// Schwefel's additive constant, which zeroes the optimum.
const SCHWEFEL_OFFSET: f64 = 418.982_887_272_433_8;
/// Giunta's per-coordinate additive constant.
const GIUNTA_OFFSET: f64 = 0.267_764_789_731_547_2;
/// Giunta coefficients.
const GIUNTA_A: f64 = 16.0 / 15.0;
const GIUNTA_B: f64 = 1.0 / 50.0;
/// Four-decimal Schwefel and Giunta minimizer coordinates.
const SCHWEFEL_XSTAR: f64 = 420.9687;
const GIUNTA_XSTAR: f64 = 0.4673;

/// Ackley's optimum is a cone vertex: the analytic gradient norm tends to
/// `4/sqrt(n)` there instead of vanishing. Inside this sup-norm radius the
/// gradient-norm report substitutes a symmetric finite difference and
/// flags the record.
pub const ACKLEY_VERTEX_RADIUS: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Sphere,
    Rosenbrock,
    Rastrigin,
    Griewank,
    Ackley,
    Quadconvex,
    Schwefel,
    Michalewicz,
    Trid,
    Giunta,
}

const ALL_KINDS: [Kind; 10] = [
    Kind::Sphere,
    Kind::Rosenbrock,
    Kind::Rastrigin,
    Kind::Griewank,
    Kind::Ackley,
    Kind::Quadconvex,
    Kind::Schwefel,
    Kind::Michalewicz,
    Kind::Trid,
    Kind::Giunta,
];

/// Landscape tags for the suite (Type I–V taxonomy).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    /// Single local minimum.
    pub unimodal: bool,
    /// The global minimizer is the zero vector.
    pub zero_optimum: bool,
    /// All minimizer coordinates share one value.
    pub identical_optimum: bool,
    /// Objective decomposes per coordinate.
    pub separable: bool,
    /// Has large near-flat regions that slow late convergence.
    pub flat: bool,
}

/// Static description of one registered benchmark instance.
#[derive(Clone, Debug)]
pub struct BenchmarkSpec {
    /// Canonical registry id, e.g. `"sphere"`.
    pub id: &'static str,
    /// Positional code, `"f1"`..`"f10"`.
    pub code: &'static str,
    pub dimension: usize,
    pub bounds: BoxBounds,
    pub known_optimum_point: Option<StateVector>,
    pub known_optimum_value: Option<f64>,
    pub classification: Classification,
}

/// A benchmark instance: its spec plus the evaluable [`Problem`].
#[derive(Clone, Debug)]
pub struct Benchmark {
    spec: BenchmarkSpec,
    problem: Problem,
    kind: Option<Kind>,
}

impl Benchmark {
    /// Wraps a user-supplied problem under a spec, e.g. to add custom
    /// functions to the verification suite.
    pub fn custom(spec: BenchmarkSpec, problem: Problem) -> Self {
        Self {
            spec,
            problem,
            kind: None,
        }
    }

    pub fn spec(&self) -> &BenchmarkSpec {
        &self.spec
    }

    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    pub fn id(&self) -> &'static str {
        self.spec.id
    }

    pub fn dimension(&self) -> usize {
        self.spec.dimension
    }

    /// Absolute tolerance for `objective(x*) - f(x*)`; looser for Schwefel
    /// and Giunta whose minimizers are only given to four decimals.
    pub fn optimum_tolerance(&self) -> f64 {
        match self.spec.id {
            "schwefel" | "giunta" => 1e-6,
            _ => 1e-9,
        }
    }

    /// Gradient norm at `x` for reporting. Uses the analytic gradient;
    /// at points where that is undefined (Schwefel's kink coordinates) or
    /// misleading (Ackley's cone vertex) a finite-difference substitute is
    /// returned with `flagged` set.
    pub fn grad_norm_report(&self, x: &StateVector) -> Result<GradNormReport> {
        if self.kind == Some(Kind::Ackley) {
            let sup = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if sup <= ACKLEY_VERTEX_RADIUS {
                let g = central_difference_gradient(&self.problem, x);
                return Ok(GradNormReport {
                    value: norm(&g),
                    flagged: true,
                });
            }
        }
        match self.problem.grad_norm(x) {
            Ok(value) => Ok(GradNormReport {
                value,
                flagged: false,
            }),
            Err(Error::NondifferentiablePoint { .. }) => {
                let g = forward_difference_gradient(&self.problem, x);
                Ok(GradNormReport {
                    value: norm(&g),
                    flagged: true,
                })
            }
            Err(e) => Err(e),
        }
    }
}

/// Outcome of [`Benchmark::grad_norm_report`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GradNormReport {
    pub value: f64,
    /// True when a finite-difference substitute stands in for the analytic
    /// gradient.
    pub flagged: bool,
}

/// Canonical ids of the ten registered benchmarks, in `f1`..`f10` order.
pub fn benchmark_ids() -> [&'static str; 10] {
    [
        "sphere",
        "rosenbrock",
        "rastrigin",
        "griewank",
        "ackley",
        "quadconvex",
        "schwefel",
        "michalewicz",
        "trid",
        "giunta",
    ]
}

/// Builds a registered benchmark by id (canonical name or `fN` code).
pub fn make_benchmark(name: &str, n: usize) -> Result<Benchmark> {
    let lower = name.to_ascii_lowercase();
    let kind = match lower.as_str() {
        "sphere" | "f1" => Kind::Sphere,
        "rosenbrock" | "f2" => Kind::Rosenbrock,
        "rastrigin" | "f3" => Kind::Rastrigin,
        "griewank" | "f4" => Kind::Griewank,
        "ackley" | "f5" => Kind::Ackley,
        "quadconvex" | "f6" => Kind::Quadconvex,
        "schwefel" | "f7" => Kind::Schwefel,
        "michalewicz" | "f8" => Kind::Michalewicz,
        "trid" | "f9" => Kind::Trid,
        "giunta" | "f10" => Kind::Giunta,
        _ => return Err(Error::UnknownBenchmark(name.to_string())),
    };
    build(kind, n)
}

/// All ten registered benchmarks at dimension `n`.
pub fn all_benchmarks(n: usize) -> Result<Vec<Benchmark>> {
    ALL_KINDS.iter().map(|&k| build(k, n)).collect()
}

fn build(kind: Kind, n: usize) -> Result<Benchmark> {
    let min_dim = match kind {
        Kind::Rosenbrock | Kind::Trid => 2,
        _ => 1,
    };
    if n < min_dim {
        return Err(Error::DimensionTooSmall {
            name: id_of(kind),
            min: min_dim,
            got: n,
        });
    }
    let bounds = bounds_of(kind, n)?;
    let problem = Problem::new(bounds.clone(), move |x| objective(kind, x))
        .with_gradient(move |x| gradient(kind, x));
    let spec = BenchmarkSpec {
        id: id_of(kind),
        code: code_of(kind),
        dimension: n,
        bounds,
        known_optimum_point: optimum_point(kind, n),
        known_optimum_value: match kind {
            Kind::Michalewicz => None,
            _ => Some(0.0),
        },
        classification: classification(kind),
    };
    Ok(Benchmark {
        spec,
        problem,
        kind: Some(kind),
    })
}

fn id_of(kind: Kind) -> &'static str {
    match kind {
        Kind::Sphere => "sphere",
        Kind::Rosenbrock => "rosenbrock",
        Kind::Rastrigin => "rastrigin",
        Kind::Griewank => "griewank",
        Kind::Ackley => "ackley",
        Kind::Quadconvex => "quadconvex",
        Kind::Schwefel => "schwefel",
        Kind::Michalewicz => "michalewicz",
        Kind::Trid => "trid",
        Kind::Giunta => "giunta",
    }
}

fn code_of(kind: Kind) -> &'static str {
    match kind {
        Kind::Sphere => "f1",
        Kind::Rosenbrock => "f2",
        Kind::Rastrigin => "f3",
        Kind::Griewank => "f4",
        Kind::Ackley => "f5",
        Kind::Quadconvex => "f6",
        Kind::Schwefel => "f7",
        Kind::Michalewicz => "f8",
        Kind::Trid => "f9",
        Kind::Giunta => "f10",
    }
}

fn bounds_of(kind: Kind, n: usize) -> Result<BoxBounds> {
    let (lo, hi) = match kind {
        Kind::Sphere => (-100.0, 100.0),
        Kind::Rosenbrock => (-30.0, 30.0),
        Kind::Rastrigin => (-5.12, 5.12),
        Kind::Griewank => (-600.0, 600.0),
        Kind::Ackley => (-32.0, 32.0),
        Kind::Quadconvex => (-10.0 * n as f64, 10.0 * n as f64),
        Kind::Schwefel => (-500.0, 500.0),
        Kind::Michalewicz => (0.0, PI),
        Kind::Trid => (-((n * n) as f64), (n * n) as f64),
        Kind::Giunta => (-1.0, 1.0),
    };
    BoxBounds::symmetric(n, lo, hi)
}

fn optimum_point(kind: Kind, n: usize) -> Option<StateVector> {
    let values = match kind {
        Kind::Sphere | Kind::Rastrigin | Kind::Griewank | Kind::Ackley => vec![0.0; n],
        Kind::Rosenbrock => vec![1.0; n],
        Kind::Quadconvex => (1..=n).map(|i| i as f64).collect(),
        Kind::Schwefel => vec![SCHWEFEL_XSTAR; n],
        Kind::Michalewicz => return None,
        Kind::Trid => (1..=n).map(|i| (i * (n + 1 - i)) as f64).collect(),
        Kind::Giunta => vec![GIUNTA_XSTAR; n],
    };
    Some(StateVector::new(values).expect("optimum point is finite"))
}

fn classification(kind: Kind) -> Classification {
    // Type I unimodal {f1,f6,f9}; Type II zero optimum {f1,f3,f4,f5};
    // Type III identical optimum {f1..f5,f7,f10}; Type IV separable
    // {f1,f3,f6,f7,f10}; Type V flat {f2,f8,f9}.
    let unimodal = matches!(kind, Kind::Sphere | Kind::Quadconvex | Kind::Trid);
    let zero_optimum = matches!(
        kind,
        Kind::Sphere | Kind::Rastrigin | Kind::Griewank | Kind::Ackley
    );
    let identical_optimum = !matches!(kind, Kind::Quadconvex | Kind::Michalewicz | Kind::Trid);
    let separable = matches!(
        kind,
        Kind::Sphere | Kind::Rastrigin | Kind::Quadconvex | Kind::Schwefel | Kind::Giunta
    );
    let flat = matches!(kind, Kind::Rosenbrock | Kind::Michalewicz | Kind::Trid);
    Classification {
        unimodal,
        zero_optimum,
        identical_optimum,
        separable,
        flat,
    }
}

fn objective(kind: Kind, x: &[f64]) -> f64 {
    let n = x.len();
    match kind {
        Kind::Sphere => x.iter().map(|v| v * v).sum(),
        Kind::Rosenbrock => x
            .windows(2)
            .map(|w| {
                let t = w[1] - w[0] * w[0];
                100.0 * t * t + (w[0] - 1.0) * (w[0] - 1.0)
            })
            .sum(),
        Kind::Rastrigin => x
            .iter()
            .map(|&v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
            .sum(),
        Kind::Griewank => {
            let sum: f64 = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
            let prod: f64 = x
                .iter()
                .enumerate()
                .map(|(i, &v)| (v / ((i + 1) as f64).sqrt()).cos())
                .product();
            sum - prod + 1.0
        }
        Kind::Ackley => {
            let mean_sq = x.iter().map(|v| v * v).sum::<f64>() / n as f64;
            let mean_cos = x.iter().map(|&v| (2.0 * PI * v).cos()).sum::<f64>() / n as f64;
            20.0 + E - 20.0 * (-0.2 * mean_sq.sqrt()).exp() - mean_cos.exp()
        }
        Kind::Quadconvex => x
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let d = v - (i + 1) as f64;
                d * d
            })
            .sum(),
        Kind::Schwefel => {
            x.iter().map(|&v| -v * v.abs().sqrt().sin()).sum::<f64>() + SCHWEFEL_OFFSET * n as f64
        }
        Kind::Michalewicz => -x
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let w = ((i + 1) as f64) * v * v / PI;
                v.sin() * w.sin().powi(20)
            })
            .sum::<f64>(),
        Kind::Trid => {
            // large cancelling sums at n = 50; compensated summation keeps
            // the zero optimum representable
            let mut sum = KahanSum::new();
            for (i, &v) in x.iter().enumerate() {
                let d = v - 1.0;
                sum.add(d * d);
                if i > 0 {
                    sum.add(-v * x[i - 1]);
                }
            }
            let n = n as f64;
            sum.add(n * (n + 4.0) * (n - 1.0) / 6.0);
            sum.value()
        }
        Kind::Giunta => {
            x.iter()
                .map(|&v| {
                    let u = GIUNTA_A * v - 1.0;
                    let s = u.sin();
                    s + s * s + GIUNTA_B * (4.0 * u).sin()
                })
                .sum::<f64>()
                + GIUNTA_OFFSET * n as f64
        }
    }
}

fn gradient(kind: Kind, x: &[f64]) -> Result<Vec<f64>> {
    let n = x.len();
    let g = match kind {
        Kind::Sphere => x.iter().map(|v| 2.0 * v).collect(),
        Kind::Rosenbrock => {
            let mut g = vec![0.0; n];
            for j in 0..n - 1 {
                let t = x[j + 1] - x[j] * x[j];
                g[j] += -400.0 * x[j] * t + 2.0 * (x[j] - 1.0);
                g[j + 1] += 200.0 * t;
            }
            g
        }
        Kind::Rastrigin => x
            .iter()
            .map(|&v| 2.0 * v + 20.0 * PI * (2.0 * PI * v).sin())
            .collect(),
        Kind::Griewank => {
            let cosines: Vec<f64> = x
                .iter()
                .enumerate()
                .map(|(i, &v)| (v / ((i + 1) as f64).sqrt()).cos())
                .collect();
            // prefix/suffix products avoid dividing by a vanishing cosine
            let mut prefix = vec![1.0; n + 1];
            for i in 0..n {
                prefix[i + 1] = prefix[i] * cosines[i];
            }
            let mut suffix = vec![1.0; n + 1];
            for i in (0..n).rev() {
                suffix[i] = suffix[i + 1] * cosines[i];
            }
            x.iter()
                .enumerate()
                .map(|(i, &v)| {
                    let root = ((i + 1) as f64).sqrt();
                    let others = prefix[i] * suffix[i + 1];
                    v / 2000.0 + (v / root).sin() / root * others
                })
                .collect()
        }
        Kind::Ackley => {
            let sum_sq = x.iter().map(|v| v * v).sum::<f64>();
            if sum_sq == 0.0 {
                // cone vertex: the objective attains its minimum here, so
                // the zero vector is the canonical subgradient element
                return Ok(vec![0.0; n]);
            }
            let nf = n as f64;
            let r = (sum_sq / nf).sqrt();
            let mean_cos = x.iter().map(|&v| (2.0 * PI * v).cos()).sum::<f64>() / nf;
            let radial = 4.0 * (-0.2 * r).exp() / (nf * r);
            let wave = (2.0 * PI / nf) * mean_cos.exp();
            x.iter()
                .map(|&v| radial * v + wave * (2.0 * PI * v).sin())
                .collect()
        }
        Kind::Quadconvex => x
            .iter()
            .enumerate()
            .map(|(i, &v)| 2.0 * (v - (i + 1) as f64))
            .collect(),
        Kind::Schwefel => {
            let mut g = Vec::with_capacity(n);
            for (i, &v) in x.iter().enumerate() {
                if v == 0.0 {
                    return Err(Error::NondifferentiablePoint { coordinate: i });
                }
                let u = v.abs().sqrt();
                g.push(-(u.sin() + 0.5 * u * u.cos()));
            }
            g
        }
        Kind::Michalewicz => x
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let k = (i + 1) as f64;
                let w = k * v * v / PI;
                let sw = w.sin();
                let s19 = sw.powi(19);
                -(v.cos() * s19 * sw
                    + v.sin() * 20.0 * s19 * w.cos() * (2.0 * k * v / PI))
            })
            .collect(),
        Kind::Trid => {
            let mut g = vec![0.0; n];
            for (j, &v) in x.iter().enumerate() {
                g[j] = 2.0 * (v - 1.0);
                if j > 0 {
                    g[j] -= x[j - 1];
                }
                if j + 1 < n {
                    g[j] -= x[j + 1];
                }
            }
            g
        }
        Kind::Giunta => x
            .iter()
            .map(|&v| {
                let u = GIUNTA_A * v - 1.0;
                GIUNTA_A * (u.cos() + (2.0 * u).sin() + 4.0 * GIUNTA_B * (4.0 * u).cos())
            })
            .collect(),
    };
    Ok(g)
}

/// Central-difference gradient with step `h = max(1e-6, 1e-6·|x_i|)`.
pub fn central_difference_gradient(problem: &Problem, x: &StateVector) -> Vec<f64> {
    let mut work = x.as_slice().to_vec();
    let mut g = Vec::with_capacity(work.len());
    for i in 0..work.len() {
        let h = 1e-6f64.max(1e-6 * work[i].abs());
        let orig = work[i];
        work[i] = orig + h;
        let plus = (problem_value(problem))(&work);
        work[i] = orig - h;
        let minus = (problem_value(problem))(&work);
        work[i] = orig;
        g.push((plus - minus) / (2.0 * h));
    }
    g
}

/// Forward-difference gradient, used as the substitute at kink points.
pub fn forward_difference_gradient(problem: &Problem, x: &StateVector) -> Vec<f64> {
    let mut work = x.as_slice().to_vec();
    let base = (problem_value(problem))(&work);
    let mut g = Vec::with_capacity(work.len());
    for i in 0..work.len() {
        let h = 1e-6f64.max(1e-6 * work[i].abs());
        let orig = work[i];
        work[i] = orig + h;
        let plus = (problem_value(problem))(&work);
        work[i] = orig;
        g.push((plus - base) / h);
    }
    g
}

fn problem_value(problem: &Problem) -> impl Fn(&[f64]) -> f64 + '_ {
    move |values| {
        let s = StateVector::new(values.to_vec()).expect("finite probe point");
        problem.value(&s)
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|g| g * g).sum::<f64>().sqrt()
}

/// Compensated (Kahan) accumulator.
struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    fn new() -> Self {
        Self {
            sum: 0.0,
            carry: 0.0,
        }
    }

    fn add(&mut self, value: f64) {
        let y = value - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RandomSource;

    fn sv(values: &[f64]) -> StateVector {
        StateVector::new(values.to_vec()).unwrap()
    }

    #[test]
    fn registry_resolves_names_and_codes() {
        for (i, id) in benchmark_ids().iter().enumerate() {
            let by_name = make_benchmark(id, 5).or_else(|_| make_benchmark(id, 2)).unwrap();
            let code = format!("f{}", i + 1);
            let by_code = make_benchmark(&code, by_name.dimension()).unwrap();
            assert_eq!(by_name.id(), by_code.id());
            assert_eq!(by_name.spec().code, code);
        }
        assert!(matches!(
            make_benchmark("nosuch", 5),
            Err(Error::UnknownBenchmark(_))
        ));
    }

    #[test]
    fn dimension_minimums() {
        assert!(matches!(
            make_benchmark("rosenbrock", 1),
            Err(Error::DimensionTooSmall { .. })
        ));
        assert!(matches!(
            make_benchmark("trid", 1),
            Err(Error::DimensionTooSmall { .. })
        ));
        assert!(make_benchmark("sphere", 1).is_ok());
    }

    #[test]
    fn known_optima_evaluate_to_known_values() {
        for n in [2usize, 20] {
            for bench in all_benchmarks(n).unwrap() {
                let (Some(point), Some(value)) = (
                    bench.spec().known_optimum_point.clone(),
                    bench.spec().known_optimum_value,
                ) else {
                    continue;
                };
                let got = bench.problem().value(&point);
                let tol = bench.optimum_tolerance();
                assert!(
                    (got - value).abs() <= tol,
                    "{} n={n}: f(x*) = {got:e}, tolerance {tol:e}",
                    bench.id()
                );
            }
        }
    }

    #[test]
    fn trid_optimum_formula() {
        let bench = make_benchmark("trid", 20).unwrap();
        let x: Vec<f64> = (1..=20).map(|i| (i * (21 - i)) as f64).collect();
        let v = bench.problem().value(&sv(&x));
        assert!(v.abs() <= 1e-9, "trid optimum value {v:e}");
    }

    #[test]
    fn schwefel_four_decimal_optimum() {
        let bench = make_benchmark("schwefel", 20).unwrap();
        let x = sv(&[SCHWEFEL_XSTAR; 20]);
        let v = bench.problem().value(&x);
        assert!(v.abs() <= 1e-3, "schwefel optimum value {v:e}");
    }

    #[test]
    fn gradient_spot_values() {
        let sphere = make_benchmark("sphere", 2).unwrap();
        assert_eq!(
            sphere.problem().gradient_at(&sv(&[3.0, 4.0])).unwrap(),
            vec![6.0, 8.0]
        );
        assert_eq!(sphere.problem().grad_norm(&sv(&[3.0, 4.0])).unwrap(), 10.0);
        assert_eq!(
            sphere.problem().grad_norm(&sv(&[0.0, 0.0])).unwrap(),
            0.0
        );

        let rosen = make_benchmark("rosenbrock", 2).unwrap();
        assert_eq!(
            rosen.problem().gradient_at(&sv(&[1.0, 1.0])).unwrap(),
            vec![0.0, 0.0]
        );
    }

    #[test]
    fn gradients_match_central_differences_at_interior_points() {
        // the oracle for every analytic gradient: 100 random interior
        // points per function at n in {2, 20}
        for n in [2usize, 20] {
            for bench in all_benchmarks(n).unwrap() {
                let mut rng = RandomSource::new(1234 + n as u64);
                let mut checked = 0;
                while checked < 100 {
                    let mut x = bench.problem().bounds().sample(&mut rng);
                    // interior margin; Schwefel additionally needs points
                    // away from its kink coordinates
                    if bench.id() == "schwefel" {
                        let vals: Vec<f64> = x
                            .iter()
                            .map(|v| if v.abs() < 1.0 { v + 2.0 } else { *v })
                            .collect();
                        x = sv(&vals);
                    }
                    let analytic = bench.problem().gradient_at(&x).unwrap();
                    let numeric = central_difference_gradient(bench.problem(), &x);
                    let fx = bench.problem().value(&x).abs();
                    // the FD oracle carries rounding noise ~ |f|·eps/h;
                    // below that the comparison is meaningless
                    let noise_floor = 1e-7 * (1.0 + fx);
                    for (i, (a, fd)) in analytic.iter().zip(&numeric).enumerate() {
                        let scale = a.abs().max(fd.abs());
                        let tol = (1e-5 * scale).max(noise_floor);
                        assert!(
                            (a - fd).abs() <= tol,
                            "{} n={n} coord {i}: analytic {a:e} vs fd {fd:e} (tol {tol:e})",
                            bench.id()
                        );
                    }
                    checked += 1;
                }
            }
        }
    }

    #[test]
    fn schwefel_kink_is_declared_nondifferentiable() {
        let bench = make_benchmark("schwefel", 3).unwrap();
        let err = bench
            .problem()
            .gradient_at(&sv(&[1.0, 0.0, 2.0]))
            .unwrap_err();
        assert_eq!(err, Error::NondifferentiablePoint { coordinate: 1 });
        // the report substitutes a one-sided difference instead of failing
        let report = bench.grad_norm_report(&sv(&[1.0, 0.0, 2.0])).unwrap();
        assert!(report.flagged);
        assert!(report.value.is_finite());
    }

    #[test]
    fn ackley_vertex_report_is_flagged_and_small() {
        let bench = make_benchmark("ackley", 20).unwrap();
        // analytic gradient norm near the cone vertex stays ~ 4/sqrt(n)
        let near = sv(&vec![1e-10; 20]);
        let analytic = bench.problem().grad_norm(&near).unwrap();
        assert!(
            (analytic - 4.0 / (20.0f64).sqrt()).abs() <= 1e-3,
            "cone gradient norm {analytic}"
        );
        // the report substitutes the symmetric difference, which vanishes
        // with the distance to the vertex
        let report = bench.grad_norm_report(&near).unwrap();
        assert!(report.flagged);
        assert!(report.value <= 1e-3, "substituted norm {}", report.value);
        // exactly at the vertex the subgradient convention gives zero
        let zero = sv(&vec![0.0; 20]);
        assert_eq!(bench.problem().grad_norm(&zero).unwrap(), 0.0);
        // away from the vertex the analytic value is reported unflagged
        let far = sv(&vec![1.0; 20]);
        let report = bench.grad_norm_report(&far).unwrap();
        assert!(!report.flagged);
    }

    #[test]
    fn objectives_respect_known_lower_bounds() {
        // 1e5 random in-bounds points per function must never fall below
        // the known optimum value
        for bench in all_benchmarks(20).unwrap() {
            let Some(value) = bench.spec().known_optimum_value else {
                continue;
            };
            let mut rng = RandomSource::new(99);
            let mut worst = f64::INFINITY;
            for _ in 0..100_000 {
                let x = bench.problem().bounds().sample(&mut rng);
                worst = worst.min(bench.problem().value(&x));
            }
            assert!(
                worst >= value - 1e-9,
                "{}: sampled value {worst:e} below optimum {value:e}",
                bench.id()
            );
        }
    }

    #[test]
    fn classification_matches_taxonomy() {
        let by_id = |id: &str| {
            make_benchmark(id, 2)
                .unwrap()
                .spec()
                .classification
        };
        let unimodal: Vec<&str> = benchmark_ids()
            .into_iter()
            .filter(|id| by_id(id).unimodal)
            .collect();
        assert_eq!(unimodal, ["sphere", "quadconvex", "trid"]);
        let zero: Vec<&str> = benchmark_ids()
            .into_iter()
            .filter(|id| by_id(id).zero_optimum)
            .collect();
        assert_eq!(zero, ["sphere", "rastrigin", "griewank", "ackley"]);
        let identical: Vec<&str> = benchmark_ids()
            .into_iter()
            .filter(|id| by_id(id).identical_optimum)
            .collect();
        assert_eq!(
            identical,
            ["sphere", "rosenbrock", "rastrigin", "griewank", "ackley", "schwefel", "giunta"]
        );
        let separable: Vec<&str> = benchmark_ids()
            .into_iter()
            .filter(|id| by_id(id).separable)
            .collect();
        assert_eq!(
            separable,
            ["sphere", "rastrigin", "quadconvex", "schwefel", "giunta"]
        );
        let flat: Vec<&str> = benchmark_ids()
            .into_iter()
            .filter(|id| by_id(id).flat)
            .collect();
        assert_eq!(flat, ["rosenbrock", "michalewicz", "trid"]);
    }

    #[test]
    fn quadconvex_and_trid_bounds_scale_with_dimension() {
        let q = make_benchmark("quadconvex", 20).unwrap();
        assert_eq!(q.problem().bounds().lower()[0], -200.0);
        assert_eq!(q.problem().bounds().upper()[0], 200.0);
        let t = make_benchmark("trid", 20).unwrap();
        assert_eq!(t.problem().bounds().lower()[0], -400.0);
        assert_eq!(t.problem().bounds().upper()[0], 400.0);
    }
}
