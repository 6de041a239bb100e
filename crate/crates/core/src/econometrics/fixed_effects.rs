//! Within (country fixed effects) estimator of net emigration on GDP per
//! capita growth.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::numeric::exact_sum;
use crate::panel_store::Panel;

/// One country-year of the regression sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionObservation {
    pub country_code: String,
    pub year: i32,
    /// Net emigration, percent of population (emigration-positive).
    pub e: f64,
    /// GDP per capita growth, log points x 100.
    pub g: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionPanel {
    pub observations: Vec<RegressionObservation>,
    /// Country-years dropped because this or the prior year's GDP per capita
    /// was zero or negative.
    pub excluded_nonpositive: usize,
}

/// Builds (e, g) pairs for every country-year whose prior year is present
/// with a GDP level.
pub fn derive_regression_panel(panel: &Panel) -> RegressionPanel {
    let mut observations = Vec::new();
    let mut excluded = 0;
    for (_, rows) in panel.by_country() {
        for pair in rows.windows(2) {
            let (prev, cur) = (&pair[0], &pair[1]);
            if cur.year != prev.year + 1 {
                continue;
            }
            let (Some(y0), Some(y1)) = (prev.gdp_pc, cur.gdp_pc) else {
                continue;
            };
            if !(y0 > 0.0 && y1 > 0.0) {
                excluded += 1;
                continue;
            }
            observations.push(RegressionObservation {
                country_code: cur.country_code.clone(),
                year: cur.year,
                e: -cur.net_migration / cur.population * 100.0,
                g: 100.0 * (y1.ln() - y0.ln()),
            });
        }
    }
    if excluded > 0 {
        log::warn!("excluded {excluded} country-years with nonpositive GDP per capita");
    }
    RegressionPanel { observations, excluded_nonpositive: excluded }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SampleFilter {
    Full,
    /// Years of negative growth.
    Crisis,
    /// Years in which GDP per capita falls by more than 5 log points.
    LargeCrisis,
    /// Years with growth below the threshold (log points x 100).
    Custom(f64),
}

impl SampleFilter {
    pub fn threshold(self) -> Option<f64> {
        match self {
            SampleFilter::Full => None,
            SampleFilter::Crisis => Some(0.0),
            SampleFilter::LargeCrisis => Some(-5.0),
            SampleFilter::Custom(t) => Some(t),
        }
    }

    pub fn label(self) -> String {
        match self {
            SampleFilter::Full => "Complete sample".into(),
            SampleFilter::Crisis => "All crisis episodes".into(),
            SampleFilter::LargeCrisis => "Large crisis episodes".into(),
            SampleFilter::Custom(t) => format!("Growth below {t}"),
        }
    }
}

/// Keeps country-years passing the filter, then drops countries left with
/// fewer than two observations. `Full` is the identity.
pub fn apply_filter(obs: &[RegressionObservation], filter: SampleFilter) -> Vec<RegressionObservation> {
    let Some(threshold) = filter.threshold() else {
        return obs.to_vec();
    };
    let kept: Vec<&RegressionObservation> = obs.iter().filter(|o| o.g < threshold).collect();
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for o in &kept {
        *counts.entry(o.country_code.as_str()).or_default() += 1;
    }
    kept.into_iter()
        .filter(|o| counts[o.country_code.as_str()] >= 2)
        .cloned()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedEffectsEstimate {
    /// Percentage points of population per log point of growth.
    pub alpha1: f64,
    /// Country intercepts (the common constant is absorbed here).
    pub country_effects: BTreeMap<String, f64>,
    pub n_obs: usize,
    pub n_countries: usize,
    /// One residual per input observation, in input order.
    pub residuals: Vec<f64>,
}

struct CountryMoments {
    cross: f64,
    square: f64,
    mean_e: f64,
    mean_g: f64,
}

/// Within estimator of `e = alpha1 * g + eta_i + eps`.
///
/// Emigration is first expressed relative to each country's first
/// observation, then both variables are demeaned by country. Cross-country
/// totals are summed exactly, so the slope is bit-identical under
/// reordering or relabeling of countries and under per-country shifts of
/// `e` that are exactly representable.
pub fn fe_within_estimate(obs: &[RegressionObservation], execution: Execution) -> Result<FixedEffectsEstimate> {
    let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, o) in obs.iter().enumerate() {
        groups.entry(o.country_code.as_str()).or_default().push(i);
    }
    if !groups.values().any(|rows| rows.len() >= 2) {
        return Err(Error::InsufficientData(
            "no country has two or more observations".into(),
        ));
    }
    let groups: Vec<(&str, Vec<usize>)> = groups.into_iter().collect();

    let moments = exec::map_slice(execution, &groups, |(_, rows)| {
        let n = rows.len() as f64;
        let anchor = obs[rows[0]].e;
        let rel: Vec<f64> = rows.iter().map(|&i| obs[i].e - anchor).collect();
        let mean_rel = rel.iter().sum::<f64>() / n;
        let mean_g = rows.iter().map(|&i| obs[i].g).sum::<f64>() / n;
        let mut cross = 0.0;
        let mut square = 0.0;
        for (k, &i) in rows.iter().enumerate() {
            let gd = obs[i].g - mean_g;
            cross += gd * (rel[k] - mean_rel);
            square += gd * gd;
        }
        CountryMoments { cross, square, mean_e: anchor + mean_rel, mean_g }
    });

    let sxx = exact_sum(moments.iter().map(|m| m.square));
    if sxx == 0.0 {
        return Err(Error::DegenerateRegressor);
    }
    let alpha1 = exact_sum(moments.iter().map(|m| m.cross)) / sxx;

    let mut country_effects = BTreeMap::new();
    let mut residuals = vec![0.0; obs.len()];
    for ((code, rows), m) in groups.iter().zip(&moments) {
        let eta = m.mean_e - alpha1 * m.mean_g;
        country_effects.insert(code.to_string(), eta);
        for &i in rows {
            residuals[i] = obs[i].e - eta - alpha1 * obs[i].g;
        }
    }
    Ok(FixedEffectsEstimate {
        alpha1,
        n_obs: obs.len(),
        n_countries: groups.len(),
        country_effects,
        residuals,
    })
}
