use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, ValueEnum};
use sanctions_migration::econometrics::{
    apply_filter, derive_regression_panel, episode_ratio_coefficient, episode_series, fe_within_estimate,
    SampleFilter,
};
use sanctions_migration::panel_store::{load_country_panel, PanelSchema};
use sanctions_migration::reports::{estimate_table, EstimateRow, EstimateValues, Table};
use sanctions_migration::Execution;

use crate::inputs;
use crate::OutputDir;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    Full,
    Crisis,
    LargeCrisis,
}

impl From<FilterArg> for SampleFilter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::Full => SampleFilter::Full,
            FilterArg::Crisis => SampleFilter::Crisis,
            FilterArg::LargeCrisis => SampleFilter::LargeCrisis,
        }
    }
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Country-year panel CSV.
    #[arg(long)]
    pub panel: PathBuf,
    /// JSON column mapping for the panel.
    #[arg(long)]
    pub schema: Option<PathBuf>,
    #[arg(long = "filter", value_enum, default_values_t = [FilterArg::Full, FilterArg::Crisis, FilterArg::LargeCrisis])]
    pub filters: Vec<FilterArg>,
    /// Growth threshold for an extra custom-sample row.
    #[arg(long, allow_hyphen_values = true)]
    pub threshold: Option<f64>,
    /// Country for the single-episode ratio row.
    #[arg(long)]
    pub episode_country: Option<String>,
    #[arg(long, default_value = "2011-2013", value_parser = inputs::parse_span::<i32>)]
    pub episode_base: (i32, i32),
    #[arg(long, default_value = "2017-2019", value_parser = inputs::parse_span::<i32>)]
    pub episode_crisis: (i32, i32),
    /// Also write per-country effects for the full sample.
    #[arg(long)]
    pub effects: bool,
}

pub fn cmd_estimate(
    args: &EstimateArgs,
    out: &OutputDir,
    execution: Execution,
    summary: &mut dyn Write,
) -> anyhow::Result<()> {
    let schema: PanelSchema = match &args.schema {
        Some(path) => serde_json::from_reader(inputs::open(path)?)
            .with_context(|| format!("parsing schema {}", path.display()))?,
        None => PanelSchema::default(),
    };
    let panel = load_country_panel(inputs::open(&args.panel)?, &schema)
        .with_context(|| format!("reading {}", args.panel.display()))?;
    let regression = derive_regression_panel(&panel);

    let mut filters: Vec<SampleFilter> = args.filters.iter().map(|&f| f.into()).collect();
    if let Some(t) = args.threshold {
        filters.push(SampleFilter::Custom(t));
    }
    let mut rows = Vec::new();
    for filter in filters {
        let sample = apply_filter(&regression.observations, filter);
        let outcome = fe_within_estimate(&sample, execution);
        if let (SampleFilter::Full, true, Ok(est)) = (filter, args.effects, &outcome) {
            let mut t = Table::new(&["country", "effect"]);
            for (c, v) in &est.country_effects {
                t.push(vec![c.clone().into(), (*v).into()]);
            }
            out.write_table("country_effects", &t)?;
        }
        rows.push(EstimateRow {
            sample: filter.label(),
            outcome: outcome
                .map(|e| EstimateValues { coefficient: e.alpha1, n_obs: e.n_obs, n_countries: e.n_countries })
                .map_err(|e| e.to_string()),
        });
    }

    if let Some(country) = &args.episode_country {
        let series = episode_series(&panel, country);
        let (b0, b1) = args.episode_base;
        let (c0, c1) = args.episode_crisis;
        let outcome = episode_ratio_coefficient(&series, b0..=b1, c0..=c1)
            .map(|coefficient| EstimateValues { coefficient, n_obs: series.len(), n_countries: 1 })
            .map_err(|e| e.to_string());
        rows.push(EstimateRow { sample: format!("{country} crisis episode"), outcome });
    }

    // Coefficients are hundredths; one decimal would print them all as zero.
    out.write_table_at("table5", &estimate_table(&rows), out.precision().max(3))?;
    for row in &rows {
        match &row.outcome {
            Ok(v) => writeln!(summary, "{}: {:.4} ({} obs)", row.sample, v.coefficient, v.n_obs)?,
            Err(e) => {
                log::warn!("{}: {e}", row.sample);
                writeln!(summary, "{}: error: {e}", row.sample)?
            }
        }
    }
    Ok(())
}
