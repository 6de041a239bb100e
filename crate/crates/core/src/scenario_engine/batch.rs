use serde::Serialize;

use super::config::ScenarioConfig;
use super::model::{run_scenario, EmigrationTotals, ScenarioResult, Variant};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};

/// Runs every configured scenario; results follow the config order.
pub fn run_batch(config: &ScenarioConfig, execution: Execution) -> Result<Vec<ScenarioResult>> {
    let baseline = config.scenario(&config.baseline)?;
    exec::map_slice(execution, &config.scenarios, |spec| {
        run_scenario(spec, baseline, &config.constants, &config.coefficients, config.growth_mode)
    })
    .into_iter()
    .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioDelta {
    pub name: String,
    pub delta: EmigrationTotals,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChartPoint {
    pub scenario: String,
    pub variant: Variant,
    pub persons: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioComparison {
    pub reference: String,
    pub deltas: Vec<ScenarioDelta>,
    /// Scenario with the largest average excess emigration over the
    /// reference, and that excess.
    pub headline: (String, f64),
    /// (scenario, variant, persons) for every scenario and variant.
    pub chart: Vec<ChartPoint>,
}

pub fn compare_scenarios(results: &[ScenarioResult], reference: &str) -> Result<ScenarioComparison> {
    let base = results
        .iter()
        .find(|r| r.name == reference)
        .ok_or_else(|| Error::UnknownScenario(reference.to_string()))?;
    let deltas: Vec<ScenarioDelta> = results
        .iter()
        .map(|r| ScenarioDelta { name: r.name.clone(), delta: r.emigration.minus(&base.emigration) })
        .collect();
    let mut headline = (reference.to_string(), 0.0);
    for d in &deltas {
        if d.delta.average > headline.1 {
            headline = (d.name.clone(), d.delta.average);
        }
    }
    let chart = results
        .iter()
        .flat_map(|r| {
            Variant::ALL.into_iter().map(move |variant| ChartPoint {
                scenario: r.name.clone(),
                variant,
                persons: r.emigration.get(variant),
            })
        })
        .collect();
    Ok(ScenarioComparison { reference: reference.to_string(), deltas, headline, chart })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario_engine::model::ScenarioSpec;

    fn config() -> ScenarioConfig {
        let spec = |name: &str, production, discount, g| ScenarioSpec {
            name: name.into(),
            production,
            discount,
            credit_access: false,
            tfp_recovery_applies: false,
            growth_override: Some(g),
        };
        ScenarioConfig {
            growth_mode: Default::default(),
            constants: Default::default(),
            coefficients: Default::default(),
            baseline: "sq".into(),
            reference: "sq".into(),
            scenarios: vec![spec("sq", 949.4, 0.206, 2.0), spec("down", 551.0, 0.368, -2.0)],
        }
    }

    #[test]
    fn self_comparison_is_zero() {
        let results = run_batch(&config(), Execution::Sequential).unwrap();
        let cmp = compare_scenarios(&results[..1], "sq").unwrap();
        assert_eq!(cmp.deltas[0].delta, EmigrationTotals::from_variants(0.0, 0.0, 0.0));
        assert_eq!(cmp.headline, ("sq".into(), 0.0));
        assert_eq!(cmp.chart.len(), 4);
    }

    #[test]
    fn headline_and_order() {
        let results = run_batch(&config(), Execution::Parallel).unwrap();
        assert_eq!(results, run_batch(&config(), Execution::Sequential).unwrap());
        let cmp = compare_scenarios(&results, "sq").unwrap();
        assert_eq!(cmp.headline.0, "down");
        assert!(cmp.headline.1 > 0.0);
        assert!(matches!(compare_scenarios(&results, "nope"), Err(Error::UnknownScenario(_))));
    }
}
