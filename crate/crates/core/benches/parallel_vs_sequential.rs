use std::collections::BTreeMap;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sanctions_migration::econometrics::{fe_within_estimate, RegressionObservation};
use sanctions_migration::growth_accounting::rank_collapses;
use sanctions_migration::panel_store::{CountryYearObservation, Panel};
use sanctions_migration::scenario_engine::{calibrate_growth, run_batch, ScenarioConfig, ScenarioSpec};
use sanctions_migration::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

/// Distinct three-letter codes for up to 26^3 countries.
fn code(i: usize) -> String {
    [i / 676, i / 26 % 26, i % 26].iter().map(|&d| char::from(b'A' + d as u8)).collect()
}

fn regression_panel(countries: usize, years: i32) -> Vec<RegressionObservation> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut obs = Vec::with_capacity(countries * years as usize);
    for c in 0..countries {
        let effect: f64 = rng.gen_range(-1.0..2.0);
        for t in 0..years {
            let g: f64 = rng.gen_range(-12.0..8.0);
            obs.push(RegressionObservation {
                country_code: code(c),
                year: 1960 + t,
                e: effect - 0.02 * g + rng.gen_range(-0.2..0.2),
                g,
            });
        }
    }
    obs
}

fn gdp_panel(countries: usize, years: i32) -> Panel {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut rows = Vec::new();
    for c in 0..countries {
        let mut y = 5000.0;
        for t in 0..years {
            y *= 1.0 + rng.gen_range(-0.12..0.08);
            rows.push(CountryYearObservation {
                country_code: code(c),
                year: 1950 + t,
                gdp_pc: Some(y),
                population: 1.0e7,
                net_migration: 0.0,
            });
        }
    }
    Panel::new(rows).unwrap()
}

fn many_scenarios(n: usize) -> ScenarioConfig {
    let mut config = ScenarioConfig::from_json(include_str!("../../../data/scenarios.json")).unwrap();
    let template = config.scenarios[1].clone();
    config.scenarios.extend((0..n).map(|i| ScenarioSpec {
        name: format!("grid {i}"),
        production: 400.0 + i as f64,
        discount: (i % 50) as f64 / 100.0,
        ..template.clone()
    }));
    config
}

fn benches(c: &mut Criterion) {
    let obs = regression_panel(2000, 60);
    let panel = gdp_panel(2000, 70);
    let flags = BTreeMap::new();
    let batch = many_scenarios(5000);
    let shipped = many_scenarios(0);

    let mut group = c.benchmark_group("fe_within_estimate");
    for (label, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| fe_within_estimate(black_box(&obs), mode).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("rank_collapses");
    for (label, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| rank_collapses(black_box(&panel), &flags, 10, mode))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("scenario_batch");
    for (label, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| run_batch(black_box(&batch), mode).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("calibration_grid");
    group.sample_size(10);
    for (label, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| calibrate_growth(black_box(&shipped), 21, mode).unwrap())
        });
    }
    group.finish();
}

criterion_group!(parallel_vs_sequential, benches);
criterion_main!(parallel_vs_sequential);
