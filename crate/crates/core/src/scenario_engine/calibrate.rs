use serde::Serialize;

use super::config::ScenarioConfig;
use super::model::{run_scenario, CalibrationConstants, GrowthMode};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};

/// Relative half-width of the search box around each default.
pub const CALIBRATION_BAND: f64 = 0.20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Calibration {
    pub constants: CalibrationConstants,
    /// Largest absolute gap between computed and target growth, pp/yr.
    pub max_abs_error: f64,
    /// (scenario, computed growth, target growth) in config order.
    pub fit: Vec<(String, f64, f64)>,
}

/// Grid search over oil_gdp_share, import_elasticity and tfp_recovery within
/// +/-20% of the configured values, minimizing the worst growth gap against
/// each scenario's `growth_override`. Ties go to the first grid point in
/// (share, elasticity, tfp) lexicographic order.
pub fn calibrate_growth(config: &ScenarioConfig, steps: usize, execution: Execution) -> Result<Calibration> {
    if steps < 2 {
        return Err(Error::InvalidParameter("calibration needs at least two grid steps".into()));
    }
    let targets: Vec<(usize, f64)> = config
        .scenarios
        .iter()
        .enumerate()
        .filter_map(|(i, s)| s.growth_override.map(|g| (i, g)))
        .collect();
    if targets.is_empty() {
        return Err(Error::InsufficientData("no scenario carries a target growth".into()));
    }
    let baseline = config.scenario(&config.baseline)?;
    let base = config.constants;
    let axis = |center: f64, k: usize| {
        center * (1.0 - CALIBRATION_BAND + 2.0 * CALIBRATION_BAND * k as f64 / (steps - 1) as f64)
    };
    let candidate = |idx: usize| CalibrationConstants {
        oil_gdp_share: axis(base.oil_gdp_share, idx / (steps * steps)),
        import_elasticity: axis(base.import_elasticity, (idx / steps) % steps),
        tfp_recovery: axis(base.tfp_recovery, idx % steps),
        ..base
    };
    let evaluate = |constants: &CalibrationConstants| -> Result<Vec<f64>> {
        targets
            .iter()
            .map(|&(i, _)| {
                run_scenario(&config.scenarios[i], baseline, constants, &config.coefficients, GrowthMode::Computed)
                    .map(|r| r.gdp_growth)
            })
            .collect()
    };
    let worst_gap = |growth: &[f64]| {
        growth.iter().zip(&targets).map(|(g, (_, t))| (g - t).abs()).fold(0.0, f64::max)
    };

    let scores = exec::map_range(execution, steps * steps * steps, |idx| {
        evaluate(&candidate(idx)).map(|g| worst_gap(&g))
    });
    let mut best: Option<(usize, f64)> = None;
    for (idx, score) in scores.into_iter().enumerate() {
        let score = score?;
        if best.is_none_or(|(_, b)| score < b) {
            best = Some((idx, score));
        }
    }
    let (idx, max_abs_error) = best.expect("grid is nonempty");
    let constants = candidate(idx);
    let growth = evaluate(&constants)?;
    let fit = targets
        .iter()
        .zip(growth)
        .map(|(&(i, t), g)| (config.scenarios[i].name.clone(), g, t))
        .collect();
    Ok(Calibration { constants, max_abs_error, fit })
}
