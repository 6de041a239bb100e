use super::{Cell, Table};
use crate::econometrics::SegmentReport;
use crate::growth_accounting::{ChannelDecomposition, CollapseRow, Factor, GrowthDecomposition, PeriodGrowthRates};
use crate::scenario_engine::{ChartPoint, ScenarioResult};

/// Growth, contribution and percentage-contribution rows per period, with
/// the conventional and import-adjusted decompositions side by side.
pub fn decomposition_table(periods: &[(PeriodGrowthRates, GrowthDecomposition, GrowthDecomposition)]) -> Table {
    let mut t = Table::new(&[
        "period",
        "measure",
        "gdp",
        "capital",
        "human_capital",
        "tfp",
        "imports",
        "tfp_import_adjusted",
    ]);
    for (rates, conv, adj) in periods {
        t.push(vec![
            rates.label.clone().into(),
            "Growth".into(),
            rates.g_y.into(),
            rates.g_k.into(),
            rates.g_h.into(),
            Cell::Empty,
            rates.g_m.into(),
            Cell::Empty,
        ]);
        t.push(vec![
            rates.label.clone().into(),
            "Contribution".into(),
            rates.g_y.into(),
            conv.contribution(Factor::Capital).into(),
            conv.contribution(Factor::HumanCapital).into(),
            conv.contribution(Factor::Tfp).into(),
            adj.contribution(Factor::Imports).into(),
            adj.contribution(Factor::Tfp).into(),
        ]);
        let share = conv.percentage_contributions.as_ref().map(|_| 100.0);
        t.push(vec![
            rates.label.clone().into(),
            "Percentage Contribution".into(),
            share.into(),
            conv.percentage(Factor::Capital).into(),
            conv.percentage(Factor::HumanCapital).into(),
            conv.percentage(Factor::Tfp).into(),
            adj.percentage(Factor::Imports).into(),
            adj.percentage(Factor::Tfp).into(),
        ]);
    }
    t
}

/// Channel tree in table order, names indented two spaces per level, then
/// the aggregate rows.
pub fn channel_table(decomposition: &ChannelDecomposition) -> Table {
    let mut t = Table::new(&["channel", "key", "value", "attribution"]);
    for (depth, node) in decomposition.root.walk() {
        let attribution = match node.attribution {
            Some(a) => serde_json::to_value(a)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .map_or(Cell::Empty, Cell::Text),
            None => Cell::Empty,
        };
        t.push(vec![
            format!("{}{}", "  ".repeat(depth), node.name).into(),
            node.key.clone().into(),
            node.value.into(),
            attribution,
        ]);
    }
    for (label, key, value) in [
        ("Aggregates: sanctions", "aggregate_sanctions", decomposition.sanctions_total),
        ("Aggregates: other causes", "aggregate_other", decomposition.other_total),
        ("Aggregates: total", "aggregate_total", decomposition.total),
    ] {
        t.push(vec![label.into(), key.into(), value.into(), Cell::Empty]);
    }
    t
}

/// One estimation row: coefficient or the error that prevented it.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateRow {
    pub sample: String,
    pub outcome: Result<EstimateValues, String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateValues {
    pub coefficient: f64,
    pub n_obs: usize,
    pub n_countries: usize,
}

pub fn estimate_table(rows: &[EstimateRow]) -> Table {
    let mut t = Table::new(&["sample", "coefficient", "n_obs", "n_countries", "error"]);
    for row in rows {
        t.push(match &row.outcome {
            Ok(v) => vec![
                row.sample.clone().into(),
                v.coefficient.into(),
                Cell::Integer(v.n_obs as i64),
                Cell::Integer(v.n_countries as i64),
                Cell::Empty,
            ],
            Err(e) => vec![row.sample.clone().into(), Cell::Empty, Cell::Empty, Cell::Empty, e.clone().into()],
        });
    }
    t
}

/// Production, discount, price and exports per scenario.
pub fn scenario_exports_table(results: &[ScenarioResult]) -> Table {
    let mut t = Table::new(&["scenario", "production_tbd", "discount_pct", "oil_price_usd", "oil_exports_thousand_usd"]);
    for r in results {
        t.push(vec![
            r.name.clone().into(),
            r.production.into(),
            (r.discount * 100.0).into(),
            r.oil_price.into(),
            r.oil_exports.into(),
        ]);
    }
    t
}

/// Imports, growth and projected emigration per scenario.
pub fn scenario_migration_table(results: &[ScenarioResult]) -> Table {
    let mut t = Table::new(&[
        "scenario",
        "imports_thousand_usd",
        "gdp_growth_pct",
        "conservative",
        "intermediate",
        "historical",
        "average",
    ]);
    for r in results {
        t.push(vec![
            r.name.clone().into(),
            r.imports.into(),
            r.gdp_growth.into(),
            r.emigration.conservative.into(),
            r.emigration.intermediate.into(),
            r.emigration.historical.into(),
            r.emigration.average.into(),
        ]);
    }
    t
}

pub fn chart_table(points: &[ChartPoint]) -> Table {
    let mut t = Table::new(&["scenario", "variant", "persons"]);
    for p in points {
        t.push(vec![p.scenario.clone().into(), p.variant.label().into(), p.persons.into()]);
    }
    t
}

pub fn collapse_table(rows: &[CollapseRow]) -> Table {
    let mut t = Table::new(&[
        "rank",
        "country",
        "peak_year",
        "trough_year",
        "trough_to_peak_pct",
        "years",
        "avg_annual_decline_pct",
        "mean_annual_change_pct",
        "cumulative_loss_pct",
        "conflict",
        "peacetime_rank",
    ]);
    for r in rows {
        let m = &r.metrics;
        t.push(vec![
            Cell::Integer(r.rank as i64),
            r.country.clone().into(),
            Cell::Integer(m.peak_year.into()),
            Cell::Integer(m.trough_year.into()),
            m.trough_to_peak.into(),
            Cell::Integer(m.years.into()),
            m.avg_annual_decline.into(),
            m.mean_annual_change.into(),
            m.cumulative_loss.into(),
            r.conflict.as_ref().map_or(Cell::Empty, |c| c.label().to_string().into()),
            r.peacetime_rank.map_or(Cell::Empty, |k| Cell::Integer(k as i64)),
        ]);
    }
    t
}

pub fn oil_segment_table(report: &SegmentReport) -> Table {
    let mut t = Table::new(&["kind", "start_month", "end_month", "mean_log_change", "percent_change", "absolute_change"]);
    for s in &report.segments {
        t.push(vec![
            "segment".into(),
            Cell::Integer(s.start as i64),
            Cell::Integer(s.end as i64),
            s.mean_log_change.into(),
            Cell::Empty,
            Cell::Empty,
        ]);
    }
    for w in &report.windows {
        t.push(vec![
            "window".into(),
            Cell::Integer(w.start as i64),
            Cell::Integer(w.end as i64),
            Cell::Empty,
            w.percent_change.into(),
            w.absolute_change.into(),
        ]);
    }
    t
}
