use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::model::{CalibrationConstants, GrowthMode, MigrationCoefficients, ScenarioSpec};
use crate::error::{Error, Result};

/// Scenario run configuration as read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub growth_mode: GrowthMode,
    #[serde(default)]
    pub constants: CalibrationConstants,
    #[serde(default)]
    pub coefficients: MigrationCoefficients,
    /// Scenario whose production and imports anchor the computed growth path.
    pub baseline: String,
    /// Scenario the emigration deltas are measured against.
    pub reference: String,
    pub scenarios: Vec<ScenarioSpec>,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: ScenarioConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        self.constants.validate()?;
        self.coefficients.validate()?;
        if self.scenarios.is_empty() {
            return Err(Error::Config("no scenarios defined".into()));
        }
        let mut seen = BTreeSet::new();
        for spec in &self.scenarios {
            if !seen.insert(spec.name.as_str()) {
                return Err(Error::Config(format!("scenario `{}` is defined twice", spec.name)));
            }
            spec.validate()?;
        }
        self.scenario(&self.baseline)?;
        self.scenario(&self.reference)?;
        Ok(())
    }

    pub fn scenario(&self, name: &str) -> Result<&ScenarioSpec> {
        self.scenarios
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownScenario(name.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "baseline": "A",
        "reference": "A",
        "scenarios": [{"name": "A", "production": 949.4, "discount": 0.206, "growth_override": 2.0}]
    }"#;

    #[test]
    fn defaults_fill_in() {
        let c = ScenarioConfig::from_json(MINIMAL).unwrap();
        assert_eq!(c.constants, CalibrationConstants::default());
        assert_eq!(c.growth_mode, GrowthMode::Override);
        assert_eq!(ScenarioConfig::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn unknown_field_reports_location() {
        let text = MINIMAL.replace("\"baseline\"", "\"baseline_name\"");
        let err = ScenarioConfig::from_json(&text).unwrap_err().to_string();
        assert!(err.contains("baseline_name") && err.contains("line 2"), "{err}");
    }

    #[test]
    fn bad_discount_names_scenario() {
        let text = MINIMAL.replace("0.206", "1.2");
        let err = ScenarioConfig::from_json(&text).unwrap_err();
        assert!(matches!(&err, Error::Scenario { scenario, .. } if scenario == "A"), "{err}");
    }

    #[test]
    fn unknown_reference() {
        let text = MINIMAL.replace("\"reference\": \"A\"", "\"reference\": \"B\"");
        assert_eq!(ScenarioConfig::from_json(&text).unwrap_err(), Error::UnknownScenario("B".into()));
    }
}
