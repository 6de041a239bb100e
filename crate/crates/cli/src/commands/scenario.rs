use std::io::Write;
use std::path::Path;

use anyhow::Context;
use clap::{Args, ValueEnum};
use sanctions_migration::reports::{
    chart_table, emit_svg_bars, scenario_exports_table, scenario_migration_table, SvgStyle,
};
use sanctions_migration::scenario_engine::{
    calibrate_growth, compare_scenarios, run_batch, GrowthMode, ScenarioConfig,
};
use sanctions_migration::Execution;

use crate::OutputDir;

/// Configuration used when `--config` is absent.
pub const DEFAULT_CONFIG: &str = include_str!("../../../../data/scenarios.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Override,
    Computed,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Override the configured growth mode.
    #[arg(long, value_enum)]
    pub growth_mode: Option<ModeArg>,
    /// Fit oil_gdp_share, import_elasticity and tfp_recovery to the stated
    /// growth rates before running (implies computed growth).
    #[arg(long)]
    pub calibrate: bool,
    /// Grid points per calibrated parameter.
    #[arg(long, default_value_t = 21)]
    pub grid_steps: usize,
}

pub fn load_config(path: Option<&Path>) -> anyhow::Result<ScenarioConfig> {
    let (text, origin) = match path {
        Some(p) => (
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
            p.display().to_string(),
        ),
        None => (DEFAULT_CONFIG.to_string(), "shipped configuration".to_string()),
    };
    ScenarioConfig::from_json(&text).with_context(|| format!("invalid scenario config ({origin})"))
}

pub fn cmd_scenario(
    args: &RunArgs,
    config_path: Option<&Path>,
    out: &OutputDir,
    execution: Execution,
    summary: &mut dyn Write,
) -> anyhow::Result<()> {
    let mut config = load_config(config_path)?;
    match args.growth_mode {
        Some(ModeArg::Override) => config.growth_mode = GrowthMode::Override,
        Some(ModeArg::Computed) => config.growth_mode = GrowthMode::Computed,
        None => {}
    }
    if args.calibrate {
        let calibration = calibrate_growth(&config, args.grid_steps, execution)?;
        writeln!(
            summary,
            "calibration: oil_gdp_share {:.4}, import_elasticity {:.4}, tfp_recovery {:.3}, worst gap {:.3} pp",
            calibration.constants.oil_gdp_share,
            calibration.constants.import_elasticity,
            calibration.constants.tfp_recovery,
            calibration.max_abs_error
        )?;
        out.write_bytes("calibration.json", serde_json::to_string_pretty(&calibration)?.as_bytes())?;
        config.constants = calibration.constants;
        config.growth_mode = GrowthMode::Computed;
    }

    let results = run_batch(&config, execution)?;
    let comparison = compare_scenarios(&results, &config.reference)?;

    out.write_table("table6", &scenario_exports_table(&results))?;
    out.write_table("table7", &scenario_migration_table(&results))?;
    out.write_table("figure8", &chart_table(&comparison.chart))?;
    let triples: Vec<(String, String, f64)> = comparison
        .chart
        .iter()
        .map(|p| (p.scenario.clone(), p.variant.label().to_string(), p.persons))
        .collect();
    out.write_bytes("figure8.svg", emit_svg_bars(&triples, &SvgStyle::default()).as_bytes())?;

    for r in &results {
        writeln!(
            summary,
            "{}: price {:.1}, exports {:.0}, imports {:.0}, growth {:.1}%, emigrants {:.0}",
            r.name, r.oil_price, r.oil_exports, r.imports, r.gdp_growth, r.emigration.average
        )?;
    }
    writeln!(
        summary,
        "headline: {} adds {:.0} emigrants over {} years relative to {}",
        comparison.headline.0, comparison.headline.1, config.constants.horizon_years, comparison.reference
    )?;
    Ok(())
}
