use proptest::prelude::*;
use sanctions_migration::econometrics::{
    apply_filter, episode_ratio_coefficient, fe_within_estimate, EpisodeObservation, RegressionObservation,
    SampleFilter,
};
use sanctions_migration::growth_accounting::{
    annualize, channel_decompose, collapse_metrics, decompose_conventional, decompose_import_adjusted,
    deepest_decline, ChannelInputs, ChannelSchema, FactorShares, PeriodGrowthRates,
};
use sanctions_migration::numeric::exact_sum;
use sanctions_migration::panel_store::{
    build_emigration_series, interpolate_gap_years, load_country_panel, proportional_growth_extrapolation,
    stocks_to_flows, write_country_panel, CountryYearObservation, MigrantStockRecord, Panel, PanelSchema,
    StockSource,
};
use sanctions_migration::scenario_engine::{
    annual_oil_exports, effective_oil_price, gdp_growth_path, import_capacity, project_all_variants,
    project_migration, run_scenario, CalibrationConstants, GrowthMode, ImportComparison, MigrationCoefficients,
    ScenarioSpec,
};
use sanctions_migration::Execution;

/// Multiples of 1/256 in [-lim, lim]: sums and small products stay exact.
fn dyadic(lim: i32) -> impl Strategy<Value = f64> {
    (-lim * 256..=lim * 256).prop_map(|k| f64::from(k) / 256.0)
}

fn quadrant_share() -> impl Strategy<Value = f64> {
    (1..256).prop_map(|k| f64::from(k) / 256.0)
}

// ---- panel_store ----

proptest! {
    #[test]
    fn flows_telescope(start in 1990i32..2010, stocks in prop::collection::vec(0u32..5_000_000, 2..30)) {
        let path: Vec<(i32, f64)> = stocks.iter().enumerate().map(|(i, &s)| (start + i as i32, f64::from(s))).collect();
        let flows = stocks_to_flows(&path).unwrap();
        let total: f64 = flows.iter().map(|f| f.1).sum();
        prop_assert_eq!(total, path.last().unwrap().1 - path[0].1);
    }

    #[test]
    fn constant_stocks_have_zero_flows(stock in 0u32..10_000_000, extra in 0i32..4) {
        let s = f64::from(stock);
        let mut un = Vec::new();
        let mut r4v = Vec::new();
        for dest in ["COL", "PER"] {
            for y in [2010, 2015] {
                un.push(MigrantStockRecord { destination_code: dest.into(), year: y, stock: s, source_tag: StockSource::UnStock });
            }
            for y in 2017..=2018 + extra {
                r4v.push(MigrantStockRecord { destination_code: dest.into(), year: y, stock: s, source_tag: StockSource::R4v });
            }
        }
        let series = build_emigration_series(&un, &r4v, &[], &[], &["COL".into(), "PER".into()]).unwrap();
        prop_assert!(series.flows().values().all(|&f| f == 0.0));
    }

    #[test]
    fn extrapolation_is_homogeneous(own in -2.0f64..5.0, reference in 0.1f64..5.0, future in -1.0f64..10.0, scale in 0.1f64..10.0) {
        let base = proportional_growth_extrapolation(own, reference, future).unwrap();
        let scaled = proportional_growth_extrapolation(own, reference, scale * future).unwrap();
        prop_assert!((scaled - scale * base).abs() <= 1e-12 * (1.0 + scaled.abs()));
    }

    #[test]
    fn interpolation_hits_linear_values(y0 in 1990i32..2020, gap in 2i32..10, a in -1000i64..1000, slope in -100i64..100) {
        let value = |y: i32| (a + slope * i64::from(y - y0)) as f64;
        let (left, right) = ((y0, value(y0)), (y0 + gap, value(y0 + gap)));
        prop_assert_eq!(interpolate_gap_years(left, right, y0 + 1).unwrap(), value(y0 + 1));
        prop_assert_eq!(interpolate_gap_years(left, right, y0 + gap - 1).unwrap(), value(y0 + gap - 1));
        prop_assert!(interpolate_gap_years(left, right, y0).is_err());
    }

    #[test]
    fn panel_round_trips_at_precision(
        rows in prop::collection::vec((0.01f64..1e5, 1.0f64..1e8, -1e6f64..1e6), 1..20),
        precision in 0usize..6,
    ) {
        let panel = Panel::new(
            rows.iter().enumerate().map(|(i, &(g, p, m))| CountryYearObservation {
                country_code: "ABC".into(),
                year: 1960 + i as i32,
                gdp_pc: Some(g),
                population: p.max(1.0),
                net_migration: m,
            }).collect(),
        ).unwrap();
        let schema = PanelSchema::default();
        let mut first = Vec::new();
        write_country_panel(&panel, &schema, Some(precision), &mut first).unwrap();
        let reloaded = load_country_panel(first.as_slice(), &schema);
        // Rounding can push population to zero at precision 0 only for
        // values below 0.5, which the generator excludes.
        let reloaded = reloaded.unwrap();
        let mut second = Vec::new();
        write_country_panel(&reloaded, &schema, Some(precision), &mut second).unwrap();
        prop_assert_eq!(first, second);

        let mut full = Vec::new();
        write_country_panel(&panel, &schema, None, &mut full).unwrap();
        prop_assert_eq!(load_country_panel(full.as_slice(), &schema).unwrap(), panel);
    }
}

// ---- growth_accounting ----

proptest! {
    #[test]
    fn contributions_add_to_growth_on_exact_inputs(
        g_y in dyadic(40), g_k in dyadic(20), g_h in dyadic(20), g_m in dyadic(40),
        a in quadrant_share(), h in quadrant_share(), gamma in quadrant_share(),
    ) {
        prop_assume!(a + h <= 1.05);
        let shares = FactorShares { capital_share: a, human_share: h, import_elasticity: gamma };
        let rates = PeriodGrowthRates { label: "p".into(), g_y, g_k, g_h, g_m };
        let conv = decompose_conventional(&rates, &shares).unwrap();
        let adj = decompose_import_adjusted(&conv, &rates, &shares).unwrap();
        prop_assert_eq!(conv.contributions.iter().map(|c| c.1).sum::<f64>(), g_y);
        prop_assert_eq!(adj.contributions.iter().map(|c| c.1).sum::<f64>(), g_y);
        prop_assert_eq!(adj.tfp() + gamma * g_m, conv.tfp());
    }

    #[test]
    fn contributions_add_to_growth(
        g_y in -40.0f64..40.0, g_k in -20.0f64..20.0, g_h in -20.0f64..20.0, g_m in -40.0f64..40.0,
        a in 0.01f64..0.99, h in 0.01f64..0.5, gamma in 0.01f64..0.99,
    ) {
        prop_assume!(a + h <= 1.05);
        let shares = FactorShares { capital_share: a, human_share: h, import_elasticity: gamma };
        let rates = PeriodGrowthRates { label: "p".into(), g_y, g_k, g_h, g_m };
        let conv = decompose_conventional(&rates, &shares).unwrap();
        let adj = decompose_import_adjusted(&conv, &rates, &shares).unwrap();
        prop_assert!((exact_sum(adj.contributions.iter().map(|c| c.1)) - g_y).abs() <= 1e-12 * 100.0);
        if let Some(p) = &conv.percentage_contributions {
            prop_assert!((p.iter().map(|c| c.1).sum::<f64>() - 100.0).abs() < 1e-6 * (1.0 + 1.0 / g_y.abs()));
        }
    }

    #[test]
    fn channel_nodes_sum_children(values in prop::collection::vec(dyadic(30), 9), share in 0.05f64..0.95) {
        let schema = ChannelSchema::venezuela_2012_2020();
        let leaves = schema.leaf_keys().into_iter().zip(values).collect::<Vec<_>>();
        let inputs = ChannelInputs::from_named(leaves, &schema).unwrap();
        let d = channel_decompose(&inputs, &schema, share).unwrap();
        prop_assert!(d.root.max_additivity_gap() <= 1e-12);
        prop_assert!((d.sanctions_total + d.other_total - d.total).abs() <= 1e-12);
    }

    #[test]
    fn annualization_compounds_back(ttp in -99.0f64..-0.01, years in 1i32..40) {
        let rate = annualize(ttp, years);
        let back = ((1.0 + rate / 100.0).powi(years) - 1.0) * 100.0;
        prop_assert!((back - ttp).abs() <= 1e-9 * ttp.abs());
    }

    #[test]
    fn deepest_decline_matches_exhaustive_pairs(values in prop::collection::vec(1.0f64..1000.0, 1..80)) {
        prop_assert_eq!(deepest_decline(&values), exhaustive_deepest(&values));
    }

    #[test]
    fn collapse_metrics_consistent(values in prop::collection::vec(1.0f64..1000.0, 2..30)) {
        let series: Vec<(i32, f64)> = values.iter().enumerate().map(|(i, &v)| (2000 + i as i32, v)).collect();
        let last = series.len() as i32 - 1;
        let m = collapse_metrics(&series, 2000, 2000 + last).unwrap();
        prop_assert_eq!(m.years, last);
        prop_assert!((m.trough_to_peak - (values[last as usize] / values[0] - 1.0) * 100.0).abs() < 1e-9);
        // Arithmetic mean of yearly changes is never below the geometric rate.
        prop_assert!(m.mean_annual_change >= m.avg_annual_decline - 1e-9);
    }
}

fn exhaustive_deepest(values: &[f64]) -> Option<(usize, usize)> {
    let mut best: Option<(f64, usize, usize)> = None;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let r = values[j] / values[i];
            if r < 1.0 && best.is_none_or(|(b, _, _)| r < b) {
                best = Some((r, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

// ---- econometrics ----

fn regression_panel() -> impl Strategy<Value = Vec<RegressionObservation>> {
    prop::collection::vec(prop::collection::vec((dyadic(20), dyadic(30)), 2..12), 1..8).prop_map(|countries| {
        countries
            .into_iter()
            .enumerate()
            .flat_map(|(c, rows)| {
                rows.into_iter().enumerate().map(move |(t, (e, g))| RegressionObservation {
                    country_code: format!("C{c:02}"),
                    year: 2000 + t as i32,
                    e,
                    g,
                })
            })
            .collect()
    })
}

fn has_within_variation(obs: &[RegressionObservation]) -> bool {
    fe_within_estimate(obs, Execution::Sequential).is_ok()
}

proptest! {
    #[test]
    fn shift_invariance_is_bit_exact(obs in regression_panel(), shifts in prop::collection::vec(-64i32..64, 8)) {
        prop_assume!(has_within_variation(&obs));
        let shifted: Vec<RegressionObservation> = obs.iter().map(|o| {
            let c: usize = o.country_code[1..].parse().unwrap();
            RegressionObservation { e: o.e + f64::from(shifts[c]), ..o.clone() }
        }).collect();
        let a = fe_within_estimate(&obs, Execution::Sequential).unwrap().alpha1;
        let b = fe_within_estimate(&shifted, Execution::Sequential).unwrap().alpha1;
        prop_assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn relabeling_invariance_is_bit_exact(obs in regression_panel(), seed in any::<u64>()) {
        prop_assume!(has_within_variation(&obs));
        let n = 8u64;
        // A permutation of the country labels that also reverses their sort order.
        let relabel = |code: &str| {
            let c: u64 = code[1..].parse().unwrap();
            format!("Z{:02}", (n - 1 - c + seed % n) % n)
        };
        // Country blocks in reverse order; rows within a country keep their order.
        let mut codes: Vec<&str> = obs.iter().map(|o| o.country_code.as_str()).collect();
        codes.dedup();
        let permuted: Vec<RegressionObservation> = codes.iter().rev().flat_map(|&code| {
            obs.iter().filter(move |o| o.country_code == code).map(|o| RegressionObservation {
                country_code: relabel(code),
                ..o.clone()
            })
        }).collect();
        let a = fe_within_estimate(&obs, Execution::Sequential).unwrap();
        let b = fe_within_estimate(&permuted, Execution::Parallel).unwrap();
        prop_assert_eq!(a.alpha1.to_bits(), b.alpha1.to_bits());
        let mut ra: Vec<u64> = a.residuals.iter().map(|r| r.to_bits()).collect();
        let mut rb: Vec<u64> = b.residuals.iter().map(|r| r.to_bits()).collect();
        ra.sort_unstable();
        rb.sort_unstable();
        prop_assert_eq!(ra, rb);
    }

    #[test]
    fn residuals_are_orthogonal_to_demeaned_growth(obs in regression_panel()) {
        prop_assume!(has_within_variation(&obs));
        let est = fe_within_estimate(&obs, Execution::Parallel).unwrap();
        let mut dot = 0.0;
        for code in est.country_effects.keys() {
            let rows: Vec<usize> = (0..obs.len()).filter(|&i| &obs[i].country_code == code).collect();
            let mean_g = rows.iter().map(|&i| obs[i].g).sum::<f64>() / rows.len() as f64;
            dot += rows.iter().map(|&i| (obs[i].g - mean_g) * est.residuals[i]).sum::<f64>();
        }
        prop_assert!(dot.abs() <= 1e-9 * obs.len() as f64);
    }

    #[test]
    fn filters_are_nested(obs in regression_panel()) {
        prop_assert_eq!(apply_filter(&obs, SampleFilter::Full), obs.clone());
        let large = apply_filter(&obs, SampleFilter::LargeCrisis);
        prop_assert_eq!(apply_filter(&apply_filter(&obs, SampleFilter::Crisis), SampleFilter::LargeCrisis), large);
    }

    #[test]
    fn episode_ratio_ignores_gdp_scale(
        points in prop::collection::vec((0.0f64..3.0, 1000.0f64..20000.0), 6),
        scale in 0.01f64..100.0,
    ) {
        let build = |k: f64| -> Vec<EpisodeObservation> {
            points.iter().enumerate().map(|(i, &(e, y))| EpisodeObservation {
                year: 2011 + i as i32,
                e,
                ln_gdp_pc: (k * y).ln(),
            }).collect()
        };
        let a = episode_ratio_coefficient(&build(1.0), 2011..=2013, 2014..=2016);
        let b = episode_ratio_coefficient(&build(scale), 2011..=2013, 2014..=2016);
        match (a, b) {
            (Ok(a), Ok(b)) => prop_assert!((a - b).abs() <= 1e-6 * (1.0 + a.abs())),
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }
}

// ---- scenario_engine ----

fn spec_strategy() -> impl Strategy<Value = ScenarioSpec> {
    (200.0f64..2000.0, 0.0f64..0.9, any::<bool>(), any::<bool>()).prop_map(|(production, discount, credit, tfp)| {
        ScenarioSpec {
            name: "s".into(),
            production,
            discount,
            credit_access: credit,
            tfp_recovery_applies: tfp,
            growth_override: None,
        }
    })
}

proptest! {
    #[test]
    fn price_decreases_in_discount(benchmark in 1.0f64..200.0, d1 in 0.0f64..0.99, d2 in 0.0f64..0.99) {
        prop_assume!(d1 < d2);
        prop_assert!(effective_oil_price(benchmark, d1).unwrap() > effective_oil_price(benchmark, d2).unwrap());
        prop_assert_eq!(effective_oil_price(benchmark, 0.0).unwrap(), benchmark);
    }

    #[test]
    fn exports_are_linear(net in 0i32..2000, domestic in 0i32..500, price in 1i32..200, k in 1i32..8) {
        let (net, domestic, price, k) = (f64::from(net), f64::from(domestic), f64::from(price), f64::from(k));
        let base = annual_oil_exports(domestic + net, domestic, price).unwrap();
        prop_assert_eq!(annual_oil_exports(domestic + net, domestic, k * price).unwrap(), k * base);
        prop_assert_eq!(annual_oil_exports(domestic + k * net, domestic, price).unwrap(), k * base);
        prop_assert_eq!(annual_oil_exports(domestic, domestic, price).unwrap(), 0.0);
    }

    #[test]
    fn imports_monotone_and_credit_exact(x1 in 0.0f64..5e7, x2 in 0.0f64..5e7, non_oil in 0i64..2_000_000, credit in 0i64..5_000_000) {
        let c = CalibrationConstants { non_oil_exports: non_oil as f64, credit_access_annual: credit as f64, ..Default::default() };
        let (lo, hi) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
        prop_assert!(import_capacity(lo, &c, false) <= import_capacity(hi, &c, false));
        prop_assert!(import_capacity(lo, &c, false) <= import_capacity(lo, &c, true));
        let exports = lo.round();
        prop_assert_eq!(import_capacity(exports, &c, true) - import_capacity(exports, &c, false), credit as f64);
    }

    #[test]
    fn zero_coefficient_or_gap_gives_baseline(g in -30.0f64..30.0, b in -5.0f64..5.0, coef in -0.2f64..-0.001) {
        let c = CalibrationConstants::default();
        let baseline = c.baseline_annual_emigrants * f64::from(c.horizon_years);
        prop_assert_eq!(project_migration(g, b, 0.0, &c), baseline);
        prop_assert_eq!(project_migration(b, b, coef, &c), baseline);
    }

    #[test]
    fn migration_decreases_in_growth(g1 in -30.0f64..30.0, g2 in -30.0f64..30.0, coef in -0.2f64..-0.001) {
        prop_assume!(g1 < g2);
        let c = CalibrationConstants::default();
        prop_assert!(project_migration(g1, 2.0, coef, &c) > project_migration(g2, 2.0, coef, &c));
    }

    #[test]
    fn coefficient_ordering(g in -30.0f64..30.0) {
        let c = CalibrationConstants::default();
        let t = project_all_variants(g, c.baseline_growth, &MigrationCoefficients::default(), &c);
        if g < c.baseline_growth {
            prop_assert!(t.conservative <= t.intermediate && t.intermediate <= t.historical);
        } else if g > c.baseline_growth {
            prop_assert!(t.conservative >= t.intermediate && t.intermediate >= t.historical);
        }
        let mean = (t.conservative + t.intermediate + t.historical) / 3.0;
        prop_assert!((t.average - mean).abs() <= 1e-12 * mean.abs().max(1.0));
    }

    #[test]
    fn run_scenario_is_the_composed_pipeline(spec in spec_strategy(), base in spec_strategy(), computed in any::<bool>()) {
        let c = CalibrationConstants::default();
        let k = MigrationCoefficients::default();
        let mode = if computed { GrowthMode::Computed } else { GrowthMode::Override };
        let spec = ScenarioSpec { growth_override: Some(1.0), name: "spec".into(), ..spec };
        let base = ScenarioSpec { name: "base".into(), ..base };
        let result = run_scenario(&spec, &base, &c, &k, mode).unwrap();

        let price = effective_oil_price(c.benchmark_price, spec.discount).unwrap();
        let exports = annual_oil_exports(spec.production, c.domestic_consumption, price).unwrap();
        let imports = import_capacity(exports, &c, spec.credit_access);
        let base_price = effective_oil_price(c.benchmark_price, base.discount).unwrap();
        let base_exports = annual_oil_exports(base.production, c.domestic_consumption, base_price).unwrap();
        let base_imports = import_capacity(base_exports, &c, base.credit_access);
        let growth = gdp_growth_path(&spec, &base, ImportComparison { scenario: imports, baseline: base_imports }, &c, mode).unwrap();
        let totals = project_all_variants(growth, c.baseline_growth, &k, &c);

        prop_assert_eq!(result.oil_price, price);
        prop_assert_eq!(result.oil_exports, exports);
        prop_assert_eq!(result.imports, imports);
        prop_assert_eq!(result.gdp_growth, growth);
        prop_assert_eq!(result.emigration, totals);
    }
}
