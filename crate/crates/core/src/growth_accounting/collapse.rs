use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::panel_store::Panel;

/// Peak-to-trough statistics of a GDP per capita path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CollapseMetrics {
    pub peak_year: i32,
    pub trough_year: i32,
    /// (y_trough / y_peak - 1) x 100.
    pub trough_to_peak: f64,
    pub years: i32,
    /// Geometric annual rate that compounds to `trough_to_peak` over `years`.
    pub avg_annual_decline: f64,
    /// Sum over the years after the peak of (y_t / y_peak - 1) x 100.
    pub cumulative_loss: f64,
    /// Arithmetic mean of the year-on-year percent changes. Path dependent;
    /// always at or above `avg_annual_decline`.
    pub mean_annual_change: f64,
}

/// Geometric annualization of a cumulative percent change.
pub fn annualize(trough_to_peak: f64, years: i32) -> f64 {
    ((1.0 + trough_to_peak / 100.0).powf(1.0 / f64::from(years)) - 1.0) * 100.0
}

pub fn collapse_metrics(series: &[(i32, f64)], peak_year: i32, trough_year: i32) -> Result<CollapseMetrics> {
    if peak_year >= trough_year {
        return Err(Error::OutOfRange(format!(
            "peak year {peak_year} must precede trough year {trough_year}"
        )));
    }
    let start = series
        .iter()
        .position(|&(y, _)| y == peak_year)
        .ok_or(Error::YearGap { context: "collapse series".into(), missing: peak_year })?;
    let window: Vec<(i32, f64)> = series[start..]
        .iter()
        .copied()
        .take_while(|&(y, _)| y <= trough_year)
        .collect();
    for (offset, &(y, _)) in window.iter().enumerate() {
        let expected = peak_year + offset as i32;
        if y != expected {
            return Err(Error::YearGap { context: "collapse series".into(), missing: expected });
        }
    }
    if window.last().map(|&(y, _)| y) != Some(trough_year) {
        return Err(Error::YearGap {
            context: "collapse series".into(),
            missing: window.last().map_or(trough_year, |&(y, _)| y + 1),
        });
    }
    window_metrics(&window)
}

/// Metrics over a peak..=trough window; years need not be contiguous.
fn window_metrics(window: &[(i32, f64)]) -> Result<CollapseMetrics> {
    if let Some(&(y, v)) = window.iter().find(|&&(_, v)| !(v > 0.0)) {
        return Err(Error::Domain(format!("GDP per capita {v} in {y} is not positive")));
    }
    let (peak_year, peak) = window[0];
    let (trough_year, trough) = window[window.len() - 1];
    let years = trough_year - peak_year;
    let trough_to_peak = (trough / peak - 1.0) * 100.0;
    let cumulative_loss = window[1..].iter().map(|&(_, v)| (v / peak - 1.0) * 100.0).sum();
    let changes: Vec<f64> = window
        .windows(2)
        .map(|p| (p[1].1 / p[0].1 - 1.0) * 100.0)
        .collect();
    Ok(CollapseMetrics {
        peak_year,
        trough_year,
        trough_to_peak,
        years,
        avg_annual_decline: annualize(trough_to_peak, years),
        cumulative_loss,
        mean_annual_change: crate::numeric::mean(&changes),
    })
}

/// Indices (peak, trough) of the deepest peak-to-later-trough decline, or
/// `None` when the path never falls. Ties go to the earliest peak, then the
/// earliest trough.
pub fn deepest_decline(values: &[f64]) -> Option<(usize, usize)> {
    let mut best: Option<(f64, usize, usize)> = None;
    let mut peak = 0;
    for j in 1..values.len() {
        if values[j - 1] > values[peak] {
            peak = j - 1;
        }
        let ratio = values[j] / values[peak];
        if ratio >= 1.0 {
            continue;
        }
        let better = match best {
            None => true,
            Some((r, bi, bj)) => ratio < r || (ratio == r && (peak, j) < (bi, bj)),
        };
        if better {
            best = Some((ratio, peak, j));
        }
    }
    best.map(|(_, i, j)| (i, j))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ConflictClass {
    Peacetime,
    Conflict(String),
}

impl ConflictClass {
    pub fn parse(raw: &str) -> Self {
        if raw.trim().eq_ignore_ascii_case("peacetime") {
            ConflictClass::Peacetime
        } else {
            ConflictClass::Conflict(raw.trim().to_string())
        }
    }

    pub fn label(&self) -> &str {
        match self {
            ConflictClass::Peacetime => "Peacetime",
            ConflictClass::Conflict(s) => s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollapseRow {
    pub rank: usize,
    /// Rank among peacetime collapses; `None` for conflict or unclassified.
    pub peacetime_rank: Option<usize>,
    pub country: String,
    pub metrics: CollapseMetrics,
    pub conflict: Option<ConflictClass>,
}

/// Deepest collapse per country, ranked from largest decline.
///
/// Countries are scanned independently (in parallel under
/// [`Execution::Parallel`]); the ranking is sorted by decline with ties
/// broken by country code, so the table never depends on the strategy.
pub fn rank_collapses(
    panel: &Panel,
    conflict_flags: &BTreeMap<String, ConflictClass>,
    top_k: usize,
    execution: Execution,
) -> Vec<CollapseRow> {
    let blocks = panel.by_country();
    let found = exec::map_slice(execution, &blocks, |&(country, rows)| {
        let series: Vec<(i32, f64)> = rows
            .iter()
            .filter_map(|o| o.gdp_pc.filter(|&y| y > 0.0).map(|y| (o.year, y)))
            .collect();
        let values: Vec<f64> = series.iter().map(|&(_, v)| v).collect();
        let (i, j) = deepest_decline(&values)?;
        let metrics = window_metrics(&series[i..=j]).ok()?;
        Some((country.to_string(), metrics))
    });

    let mut rows: Vec<(String, CollapseMetrics)> = found.into_iter().flatten().collect();
    rows.sort_by(|a, b| {
        a.1.trough_to_peak
            .total_cmp(&b.1.trough_to_peak)
            .then_with(|| a.0.cmp(&b.0))
    });

    let mut peacetime = 0;
    rows.into_iter()
        .enumerate()
        .map(|(i, (country, metrics))| {
            let conflict = conflict_flags.get(&country).cloned();
            let peacetime_rank = (conflict == Some(ConflictClass::Peacetime)).then(|| {
                peacetime += 1;
                peacetime
            });
            CollapseRow { rank: i + 1, peacetime_rank, country, metrics, conflict }
        })
        .take(top_k)
        .collect()
}
