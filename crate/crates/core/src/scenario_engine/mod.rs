//! Sanctions scenarios: oil price and export revenue, import capacity, GDP
//! growth over the horizon and the resulting emigration projections.

mod batch;
mod calibrate;
mod config;
mod model;

pub use batch::{compare_scenarios, run_batch, ChartPoint, ScenarioComparison, ScenarioDelta};
pub use calibrate::{calibrate_growth, Calibration, CALIBRATION_BAND};
pub use config::ScenarioConfig;
pub use model::{
    annual_oil_exports, effective_oil_price, gdp_growth_path, import_capacity, project_all_variants,
    project_migration, run_scenario, CalibrationConstants, EmigrationTotals, GrowthMode,
    ImportComparison, MigrationCoefficients, ScenarioResult, ScenarioSpec, Variant,
};
