use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::panel_store::Panel;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpisodeObservation {
    pub year: i32,
    /// Net emigration, percent of population.
    pub e: f64,
    pub ln_gdp_pc: f64,
}

/// One country's (e, ln y) path from the panel, skipping years without a
/// positive GDP level.
pub fn episode_series(panel: &Panel, country: &str) -> Vec<EpisodeObservation> {
    panel
        .country(country)
        .iter()
        .filter_map(|o| {
            o.gdp_pc.filter(|&y| y > 0.0).map(|y| EpisodeObservation {
                year: o.year,
                e: -o.net_migration / o.population * 100.0,
                ln_gdp_pc: y.ln(),
            })
        })
        .collect()
}

fn window_means(series: &[EpisodeObservation], years: &RangeInclusive<i32>) -> Result<(f64, f64)> {
    let mut e = 0.0;
    let mut ly = 0.0;
    for year in years.clone() {
        let obs = series
            .iter()
            .find(|o| o.year == year)
            .ok_or(Error::YearGap { context: "episode window".into(), missing: year })?;
        e += obs.e;
        ly += 100.0 * obs.ln_gdp_pc;
    }
    let n = years.clone().count() as f64;
    if n == 0.0 {
        return Err(Error::InvalidParameter("empty episode window".into()));
    }
    Ok((e / n, ly / n))
}

/// Slope of emigration on log GDP between two windows:
/// change in mean e over change in mean 100 ln y.
///
/// Negative when emigration rises as GDP falls, matching the sign of the
/// panel estimates.
pub fn episode_ratio_coefficient(
    series: &[EpisodeObservation],
    base_years: RangeInclusive<i32>,
    crisis_years: RangeInclusive<i32>,
) -> Result<f64> {
    let (e0, y0) = window_means(series, &base_years)?;
    let (e1, y1) = window_means(series, &crisis_years)?;
    let dy = y1 - y0;
    if dy == 0.0 {
        return Err(Error::UndefinedRatio("GDP is unchanged between the windows".into()));
    }
    Ok((e1 - e0) / dy)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HumpPosition {
    Above,
    Below,
}

/// Income threshold of the migration hump, 2011 PPP dollars.
pub const HUMP_THRESHOLD_PPP2011: f64 = 10_000.0;

/// Side of the hump threshold; the threshold itself counts as above.
pub fn classify_hump_position(gdp_pc_ppp2011: f64, threshold: f64) -> Result<HumpPosition> {
    if !(gdp_pc_ppp2011 > 0.0 && threshold > 0.0) {
        return Err(Error::Domain("income and threshold must be positive".into()));
    }
    Ok(if gdp_pc_ppp2011 >= threshold { HumpPosition::Above } else { HumpPosition::Below })
}
