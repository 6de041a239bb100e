use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CalibrationConstants {
    /// USD per barrel.
    pub benchmark_price: f64,
    /// Thousand barrels per day.
    pub domestic_consumption: f64,
    /// Thousand USD per year.
    pub non_oil_exports: f64,
    /// Thousand USD per year of external lending available when sanctions
    /// are lifted.
    pub credit_access_annual: f64,
    /// Percent per year.
    pub baseline_growth: f64,
    pub oil_gdp_share: f64,
    pub import_elasticity: f64,
    /// Percentage points of 2012 GDP.
    pub tfp_recovery: f64,
    /// Current GDP relative to 2012 GDP; converts `tfp_recovery` into points
    /// of current GDP.
    pub gdp_ratio_current_to_2012: f64,
    pub population: f64,
    pub baseline_annual_emigrants: f64,
    pub horizon_years: u32,
}

impl Default for CalibrationConstants {
    fn default() -> Self {
        CalibrationConstants {
            benchmark_price: 85.5,
            domestic_consumption: 179.6,
            non_oil_exports: 555_553.0,
            credit_access_annual: 2_979_011.0,
            baseline_growth: 2.0,
            oil_gdp_share: 0.12,
            import_elasticity: 0.30,
            tfp_recovery: 24.3,
            gdp_ratio_current_to_2012: 0.65,
            population: 28_200_000.0,
            baseline_annual_emigrants: 163_265.6,
            horizon_years: 5,
        }
    }
}

impl CalibrationConstants {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("benchmark_price", self.benchmark_price),
            ("domestic_consumption", self.domestic_consumption),
            ("non_oil_exports", self.non_oil_exports),
            ("credit_access_annual", self.credit_access_annual),
            ("baseline_growth", self.baseline_growth),
            ("oil_gdp_share", self.oil_gdp_share),
            ("import_elasticity", self.import_elasticity),
            ("gdp_ratio_current_to_2012", self.gdp_ratio_current_to_2012),
            ("population", self.population),
            ("baseline_annual_emigrants", self.baseline_annual_emigrants),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.tfp_recovery >= 0.0 && self.tfp_recovery.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tfp_recovery must be nonnegative, got {}",
                self.tfp_recovery
            )));
        }
        if self.horizon_years < 1 {
            return Err(Error::InvalidParameter("horizon_years must be at least 1".into()));
        }
        Ok(())
    }

    /// TFP recovery in points of current GDP.
    pub fn tfp_recovery_relative(&self) -> f64 {
        self.tfp_recovery / self.gdp_ratio_current_to_2012
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub name: String,
    /// Thousand barrels per day.
    pub production: f64,
    /// Fraction of the benchmark price.
    pub discount: f64,
    #[serde(default)]
    pub credit_access: bool,
    #[serde(default)]
    pub tfp_recovery_applies: bool,
    /// Percent per year; used as-is in override mode.
    #[serde(default)]
    pub growth_override: Option<f64>,
}

impl ScenarioSpec {
    pub fn validate(&self) -> Result<()> {
        let check = || -> Result<()> {
            if !(self.production >= 0.0 && self.production.is_finite()) {
                return Err(Error::Domain(format!("production {} must be nonnegative", self.production)));
            }
            if !(0.0..1.0).contains(&self.discount) {
                return Err(Error::Domain(format!("discount {} is outside [0, 1)", self.discount)));
            }
            Ok(())
        };
        check().map_err(|e| e.in_scenario(&self.name))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Conservative,
    Intermediate,
    Historical,
    Average,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Conservative, Variant::Intermediate, Variant::Historical, Variant::Average];

    pub fn label(self) -> &'static str {
        match self {
            Variant::Conservative => "Conservative",
            Variant::Intermediate => "Intermediate",
            Variant::Historical => "Historical",
            Variant::Average => "Average",
        }
    }
}

/// Percentage points of population per percentage point of growth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MigrationCoefficients {
    pub conservative: f64,
    pub intermediate: f64,
    pub historical: f64,
}

impl Default for MigrationCoefficients {
    fn default() -> Self {
        MigrationCoefficients { conservative: -0.022, intermediate: -0.029, historical: -0.052 }
    }
}

impl MigrationCoefficients {
    pub fn validate(&self) -> Result<()> {
        for (name, c) in [
            ("conservative", self.conservative),
            ("intermediate", self.intermediate),
            ("historical", self.historical),
        ] {
            if !(c < 0.0) {
                return Err(Error::InvalidParameter(format!("{name} coefficient must be negative, got {c}")));
            }
        }
        Ok(())
    }
}

/// Persons over the projection horizon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmigrationTotals {
    pub conservative: f64,
    pub intermediate: f64,
    pub historical: f64,
    pub average: f64,
}

impl EmigrationTotals {
    pub fn from_variants(conservative: f64, intermediate: f64, historical: f64) -> Self {
        EmigrationTotals {
            conservative,
            intermediate,
            historical,
            average: (conservative + intermediate + historical) / 3.0,
        }
    }

    pub fn get(&self, variant: Variant) -> f64 {
        match variant {
            Variant::Conservative => self.conservative,
            Variant::Intermediate => self.intermediate,
            Variant::Historical => self.historical,
            Variant::Average => self.average,
        }
    }

    pub fn minus(&self, other: &EmigrationTotals) -> EmigrationTotals {
        EmigrationTotals {
            conservative: self.conservative - other.conservative,
            intermediate: self.intermediate - other.intermediate,
            historical: self.historical - other.historical,
            average: self.average - other.average,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioResult {
    pub name: String,
    pub production: f64,
    pub discount: f64,
    pub oil_price: f64,
    pub oil_exports: f64,
    pub imports: f64,
    pub gdp_growth: f64,
    pub emigration: EmigrationTotals,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthMode {
    /// Use each scenario's `growth_override`.
    #[default]
    Override,
    /// Always use the structural formula.
    Computed,
}

pub fn effective_oil_price(benchmark: f64, discount: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&discount) {
        return Err(Error::Domain(format!("discount {discount} is outside [0, 1)")));
    }
    Ok(benchmark * (1.0 - discount))
}

/// Thousand USD per year.
pub fn annual_oil_exports(production: f64, domestic_consumption: f64, price: f64) -> Result<f64> {
    if production < domestic_consumption {
        return Err(Error::InfeasibleExports { production, domestic: domestic_consumption });
    }
    Ok((production - domestic_consumption) * price * 365.0)
}

pub fn import_capacity(oil_exports: f64, constants: &CalibrationConstants, credit_access: bool) -> f64 {
    let credit = if credit_access { constants.credit_access_annual } else { 0.0 };
    oil_exports + constants.non_oil_exports + credit
}

/// Imports of the scenario and the baseline, which the computed growth path
/// compares.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImportComparison {
    pub scenario: f64,
    pub baseline: f64,
}

/// Annual growth over the horizon. In override mode a scenario's stated
/// growth wins; otherwise production and import changes relative to the
/// baseline (in percent) feed through their output elasticities, plus the
/// TFP recovery when it applies.
pub fn gdp_growth_path(
    spec: &ScenarioSpec,
    baseline: &ScenarioSpec,
    imports: ImportComparison,
    constants: &CalibrationConstants,
    mode: GrowthMode,
) -> Result<f64> {
    if mode == GrowthMode::Override {
        if let Some(g) = spec.growth_override {
            return Ok(g);
        }
    }
    if baseline.production == 0.0 || imports.baseline == 0.0 {
        return Err(Error::UndefinedRatio("baseline production or imports is zero".into()));
    }
    let d_prod = (spec.production / baseline.production - 1.0) * 100.0;
    let d_imp = (imports.scenario / imports.baseline - 1.0) * 100.0;
    let tfp = if spec.tfp_recovery_applies { constants.tfp_recovery_relative() } else { 0.0 };
    let share = constants.oil_gdp_share;
    let level_gain = share * d_prod + (1.0 - share) * constants.import_elasticity * d_imp + tfp;
    Ok(constants.baseline_growth + level_gain / f64::from(constants.horizon_years))
}

/// Total emigrants over the horizon with population held fixed. Negative
/// totals mean net return migration.
pub fn project_migration(
    scenario_growth: f64,
    baseline_growth: f64,
    coefficient: f64,
    constants: &CalibrationConstants,
) -> f64 {
    let annual = constants.baseline_annual_emigrants
        + coefficient * (scenario_growth - baseline_growth) * constants.population / 100.0;
    annual * f64::from(constants.horizon_years)
}

pub fn project_all_variants(
    scenario_growth: f64,
    baseline_growth: f64,
    coefficients: &MigrationCoefficients,
    constants: &CalibrationConstants,
) -> EmigrationTotals {
    let project = |c| project_migration(scenario_growth, baseline_growth, c, constants);
    EmigrationTotals::from_variants(
        project(coefficients.conservative),
        project(coefficients.intermediate),
        project(coefficients.historical),
    )
}

fn imports_of(spec: &ScenarioSpec, constants: &CalibrationConstants) -> Result<(f64, f64, f64)> {
    let price = effective_oil_price(constants.benchmark_price, spec.discount)?;
    let exports = annual_oil_exports(spec.production, constants.domestic_consumption, price)?;
    let imports = import_capacity(exports, constants, spec.credit_access);
    Ok((price, exports, imports))
}

pub fn run_scenario(
    spec: &ScenarioSpec,
    baseline: &ScenarioSpec,
    constants: &CalibrationConstants,
    coefficients: &MigrationCoefficients,
    mode: GrowthMode,
) -> Result<ScenarioResult> {
    let run = || -> Result<ScenarioResult> {
        let (oil_price, oil_exports, imports) = imports_of(spec, constants)?;
        let baseline_imports = if spec == baseline { imports } else { imports_of(baseline, constants)?.2 };
        let gdp_growth = gdp_growth_path(
            spec,
            baseline,
            ImportComparison { scenario: imports, baseline: baseline_imports },
            constants,
            mode,
        )?;
        let emigration = project_all_variants(gdp_growth, constants.baseline_growth, coefficients, constants);
        Ok(ScenarioResult {
            name: spec.name.clone(),
            production: spec.production,
            discount: spec.discount,
            oil_price,
            oil_exports,
            imports,
            gdp_growth,
            emigration,
        })
    };
    run().map_err(|e| e.in_scenario(&spec.name))
}
