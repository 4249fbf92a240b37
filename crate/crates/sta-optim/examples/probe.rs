use sta_optim::{algorithms, benchmarks, AlgorithmConfig, RandomSource, TerminationSpec, Variant};

fn main() {
    for n in [20usize, 30] {
        let b = benchmarks::make_benchmark("schwefel", n).unwrap();
        let mut traps = 0;
        let mut vals = vec![];
        let mut evals = 0u64;
        for seed in 42..72u64 {
            let config = AlgorithmConfig::new(Variant::Esta);
            let mut rng = RandomSource::new(seed);
            let r = algorithms::run(b.problem(), &config, &mut rng).unwrap();
            traps += r.best_point.iter().filter(|v| (**v - 420.9687).abs() > 50.0).count();
            vals.push(r.best_value);
            evals += r.evaluations;
        }
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        println!("designed schwefel n={n}: traps {traps}/30 runs, mean {mean:.2e}, evals/run {}", evals / 30);
    }
    for (bench, n) in [("sphere", 20), ("michalewicz", 20), ("griewank", 20), ("rastrigin", 20), ("trid", 20), ("ackley", 20)] {
        let b = benchmarks::make_benchmark(bench, n).unwrap();
        let mut vals = vec![];
        let mut evals = 0u64;
        for seed in 42..52u64 {
            let config = AlgorithmConfig::new(Variant::Esta);
            let mut rng = RandomSource::new(seed);
            let r = algorithms::run(b.problem(), &config, &mut rng).unwrap();
            vals.push(r.best_value);
            evals += r.evaluations;
        }
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        println!("designed {bench} n={n}: mean {mean:.3e} evals/run {}", evals / 10);
    }
    for (n, algo) in [(30usize, Variant::Esta), (50, Variant::Esta), (50, Variant::Exsta)] {
        let b = benchmarks::make_benchmark("rosenbrock", n).unwrap();
        let mut vals = vec![];
        for seed in 42..50u64 {
            let config = AlgorithmConfig::new(algo).with_termination(TerminationSpec::MaxFes(10_000 * n as u64));
            let mut rng = RandomSource::new(seed);
            vals.push(algorithms::run(b.problem(), &config, &mut rng).unwrap().best_value);
        }
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        let worst = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        println!("rosen {} n={n}: mean {mean:.2e} worst {worst:.2e}", algo.name());
    }
    // schwefel maxFEs (criterion 3)
    let b = benchmarks::make_benchmark("schwefel", 30).unwrap();
    let mut vals = vec![];
    for seed in 42..72u64 {
        let config = AlgorithmConfig::new(Variant::Esta).with_termination(TerminationSpec::MaxFes(300_000));
        let mut rng = RandomSource::new(seed);
        vals.push(algorithms::run(b.problem(), &config, &mut rng).unwrap().best_value);
    }
    let mean = vals.iter().sum::<f64>() / vals.len() as f64;
    println!("schwefel esta maxfes n=30: mean {mean:.2e} (30 seeds)");
}
