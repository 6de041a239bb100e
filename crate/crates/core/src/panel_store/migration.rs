//! Venezuelan emigration flows assembled from destination-country migrant
//! stocks.
//!
//! Stock paths are built per destination with a fixed source precedence:
//! UN migrant-stock estimates for 2010-2015, then R4V (covered Latin
//! American destinations), ACS (United States) and INE (Spain) from 2017 on.
//! Destinations without a post-2015 source grow in proportion to how their
//! 2010-2015 growth compared with the measured destinations. 2016 is
//! interpolated. Global stocks are then differenced into flows.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const BASELINE_START: i32 = 2010;
pub const BASELINE_END: i32 = 2015;
pub const INTERPOLATED_YEAR: i32 = 2016;
pub const MEASURED_START: i32 = 2017;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StockSource {
    UnStock,
    R4v,
    Acs,
    Ine,
    Extrapolated,
}

impl StockSource {
    pub fn tag(self) -> &'static str {
        match self {
            StockSource::UnStock => "UN_STOCK",
            StockSource::R4v => "R4V",
            StockSource::Acs => "ACS",
            StockSource::Ine => "INE",
            StockSource::Extrapolated => "EXTRAPOLATED",
        }
    }
}

/// Venezuelan-born residents of one destination in one year.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MigrantStockRecord {
    pub destination_code: String,
    pub year: i32,
    pub stock: f64,
    pub source_tag: StockSource,
}

/// Net emigrants per year; negative values are net returns.
#[derive(Debug, Clone, PartialEq)]
pub struct EmigrationSeries {
    label: String,
    flows: BTreeMap<i32, f64>,
}

impl EmigrationSeries {
    pub fn new(label: impl Into<String>, flows: BTreeMap<i32, f64>) -> Result<Self> {
        let label = label.into();
        if let (Some((&first, _)), Some((&last, _))) = (flows.first_key_value(), flows.last_key_value()) {
            if (last - first + 1) as usize != flows.len() {
                let missing = (first..=last).find(|y| !flows.contains_key(y)).unwrap_or(first);
                return Err(Error::YearGap {
                    context: format!("emigration series `{label}`"),
                    missing,
                });
            }
        }
        Ok(EmigrationSeries { label, flows })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn flows(&self) -> &BTreeMap<i32, f64> {
        &self.flows
    }

    pub fn total(&self) -> f64 {
        self.flows.values().sum()
    }

    /// Year of the largest outflow.
    pub fn peak_year(&self) -> Option<i32> {
        self.flows
            .iter()
            .fold(None, |best: Option<(i32, f64)>, (&y, &v)| match best {
                Some((_, bv)) if bv >= v => best,
                _ => Some((y, v)),
            })
            .map(|(y, _)| y)
    }
}

/// First differences of a consecutive-year stock path.
pub fn stocks_to_flows(stocks: &[(i32, f64)]) -> Result<Vec<(i32, f64)>> {
    for pair in stocks.windows(2) {
        if pair[1].0 != pair[0].0 + 1 {
            return Err(Error::YearGap {
                context: "stock series".into(),
                missing: pair[0].0 + 1,
            });
        }
    }
    Ok(stocks
        .windows(2)
        .map(|pair| (pair[1].0, pair[1].1 - pair[0].1))
        .collect())
}

/// Growth for a destination with no post-2015 data, proportional to how its
/// own historical growth compares with the reference group's.
pub fn proportional_growth_extrapolation(
    own_hist_growth: f64,
    ref_hist_growth: f64,
    ref_future_growth: f64,
) -> Result<f64> {
    if ref_hist_growth == 0.0 {
        return Err(Error::UndefinedRatio(
            "reference historical growth is zero".into(),
        ));
    }
    Ok(ref_future_growth * (own_hist_growth / ref_hist_growth))
}

/// Linear interpolation strictly inside `(left.0, right.0)`.
pub fn interpolate_gap_years(left: (i32, f64), right: (i32, f64), target: i32) -> Result<f64> {
    if !(left.0 < target && target < right.0) {
        return Err(Error::OutOfRange(format!(
            "target year {target} is not strictly between {} and {}",
            left.0, right.0
        )));
    }
    let w = f64::from(target - left.0) / f64::from(right.0 - left.0);
    Ok(left.1 + w * (right.1 - left.1))
}

/// An R4V platform observation; `month` is 1-12 when the source is monthly.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct R4vObservation {
    pub destination: String,
    pub year: i32,
    #[serde(default)]
    pub month: Option<u32>,
    pub stock: f64,
}

/// Collapses R4V observations to one stock per (destination, year).
///
/// December is used when reported. Otherwise the value is interpolated
/// linearly between the closest reported months on either side of December;
/// when no later month exists the latest reported month is carried.
/// Rows without a month are taken as year-end values.
pub fn annualize_r4v(observations: &[R4vObservation]) -> Result<Vec<MigrantStockRecord>> {
    let mut by_dest: BTreeMap<&str, BTreeMap<i64, f64>> = BTreeMap::new();
    for obs in observations {
        let month = obs.month.unwrap_or(12);
        if !(1..=12).contains(&month) {
            return Err(Error::InvalidParameter(format!(
                "R4V {} {}: month {month} outside 1-12",
                obs.destination, obs.year
            )));
        }
        let idx = i64::from(obs.year) * 12 + i64::from(month) - 1;
        if by_dest
            .entry(obs.destination.as_str())
            .or_default()
            .insert(idx, obs.stock)
            .is_some()
        {
            return Err(Error::InvalidParameter(format!(
                "R4V {} {}-{month:02} reported twice",
                obs.destination, obs.year
            )));
        }
    }

    let mut out = Vec::new();
    for (dest, months) in by_dest {
        let years: BTreeSet<i32> = months.keys().map(|m| m.div_euclid(12) as i32).collect();
        for year in years {
            let december = i64::from(year) * 12 + 11;
            let stock = if let Some(&v) = months.get(&december) {
                v
            } else {
                let before = months.range(..december).next_back();
                let after = months.range(december + 1..).next();
                match (before, after) {
                    (Some((&m0, &v0)), Some((&m1, &v1))) => {
                        v0 + (v1 - v0) * (december - m0) as f64 / (m1 - m0) as f64
                    }
                    (Some((_, &v0)), None) => v0,
                    // A year with data always has a month at or before December.
                    _ => unreachable!("year {year} has no reported month"),
                }
            };
            out.push(MigrantStockRecord {
                destination_code: dest.to_string(),
                year,
                stock,
                source_tag: StockSource::R4v,
            });
        }
    }
    Ok(out)
}

/// Per-destination stock paths behind an emigration series.
#[derive(Debug, Clone, PartialEq)]
pub struct StockAssembly {
    /// destination -> year -> (stock, source)
    pub paths: BTreeMap<String, BTreeMap<i32, (f64, StockSource)>>,
    pub global: Vec<(i32, f64)>,
}

pub const STOCK_SERIES_LABEL: &str = "Migrant stocks (UN, R4V, ACS, INE)";

/// Assembles destination stock paths and differences the global total.
pub fn build_emigration_series(
    un_stocks: &[MigrantStockRecord],
    r4v_stocks: &[MigrantStockRecord],
    acs_stocks: &[MigrantStockRecord],
    ine_stocks: &[MigrantStockRecord],
    coverage: &[String],
) -> Result<EmigrationSeries> {
    let assembly = assemble_stocks(un_stocks, r4v_stocks, acs_stocks, ine_stocks, coverage)?;
    let flows = stocks_to_flows(&assembly.global)?;
    EmigrationSeries::new(STOCK_SERIES_LABEL, flows.into_iter().collect())
}

pub fn assemble_stocks(
    un_stocks: &[MigrantStockRecord],
    r4v_stocks: &[MigrantStockRecord],
    acs_stocks: &[MigrantStockRecord],
    ine_stocks: &[MigrantStockRecord],
    coverage: &[String],
) -> Result<StockAssembly> {
    if un_stocks.is_empty() {
        return Err(Error::CannotExtrapolate("UN baseline stocks are empty".into()));
    }

    let un = index_records(un_stocks, "UN stock")?;

    // Measured post-2015 paths, in precedence order R4V > ACS > INE.
    let r4v = index_records(r4v_stocks, "R4V")?;
    let mut measured: BTreeMap<String, (StockSource, BTreeMap<i32, f64>)> = BTreeMap::new();
    for dest in coverage {
        let path = r4v.get(dest.as_str()).ok_or_else(|| {
            Error::MissingSource(format!("R4V has no data for covered destination {dest}"))
        })?;
        measured.insert(dest.clone(), (StockSource::R4v, post_baseline(path)));
    }
    for (records, source) in [(acs_stocks, StockSource::Acs), (ine_stocks, StockSource::Ine)] {
        for (dest, path) in index_records(records, source.tag())? {
            measured
                .entry(dest.to_string())
                .or_insert_with(|| (source, post_baseline(&path)));
        }
    }
    measured.retain(|_, (_, path)| !path.is_empty());
    if measured.is_empty() {
        return Err(Error::CannotExtrapolate(
            "no destination has stock data from 2017 on".into(),
        ));
    }
    let last_year = measured
        .values()
        .filter_map(|(_, p)| p.keys().next_back().copied())
        .max()
        .unwrap_or(MEASURED_START);
    for (dest, (source, path)) in &measured {
        if let Some(missing) = (MEASURED_START..=last_year).find(|y| !path.contains_key(y)) {
            return Err(Error::MissingSource(format!(
                "{} stock for {dest} in {missing}",
                source.tag()
            )));
        }
    }

    let destinations: BTreeSet<&str> = un
        .keys()
        .copied()
        .chain(measured.keys().map(String::as_str))
        .collect();

    // 2010-2015 baseline per destination.
    let mut baseline: BTreeMap<&str, BTreeMap<i32, f64>> = BTreeMap::new();
    for &dest in &destinations {
        let raw = un.get(dest).ok_or_else(|| {
            Error::MissingSource(format!("UN stock baseline for {dest}"))
        })?;
        baseline.insert(dest, fill_baseline(dest, raw)?);
    }

    let measured_sum = |year: i32| -> f64 {
        measured.keys().map(|d| baseline[d.as_str()][&year]).sum()
    };
    let ref_base_start = measured_sum(BASELINE_START);
    let ref_base_end = measured_sum(BASELINE_END);

    let mut paths: BTreeMap<String, BTreeMap<i32, (f64, StockSource)>> = BTreeMap::new();
    for &dest in &destinations {
        let mut path: BTreeMap<i32, (f64, StockSource)> = baseline[dest]
            .iter()
            .map(|(&y, &s)| (y, (s, StockSource::UnStock)))
            .collect();
        let base_end = baseline[dest][&BASELINE_END];
        match measured.get(dest) {
            Some((source, m)) => {
                for year in MEASURED_START..=last_year {
                    path.insert(year, (m[&year], *source));
                }
            }
            None => {
                if ref_base_start == 0.0 {
                    return Err(Error::CannotExtrapolate(format!(
                        "measured destinations have zero {BASELINE_START} stock; cannot extrapolate {dest}"
                    )));
                }
                let own_start = baseline[dest][&BASELINE_START];
                if own_start == 0.0 {
                    return Err(Error::CannotExtrapolate(format!(
                        "{dest} has zero {BASELINE_START} stock"
                    )));
                }
                let own_hist = base_end / own_start - 1.0;
                let ref_hist = ref_base_end / ref_base_start - 1.0;
                for year in MEASURED_START..=last_year {
                    let ref_future = measured_future_sum(&measured, year) / ref_base_end - 1.0;
                    let growth = proportional_growth_extrapolation(own_hist, ref_hist, ref_future)?;
                    path.insert(year, (base_end * (1.0 + growth), StockSource::Extrapolated));
                }
            }
        }
        let bridged = interpolate_gap_years(
            (BASELINE_END, base_end),
            (MEASURED_START, path[&MEASURED_START].0),
            INTERPOLATED_YEAR,
        )?;
        path.insert(INTERPOLATED_YEAR, (bridged, StockSource::Extrapolated));
        paths.insert(dest.to_string(), path);
    }

    let global = (BASELINE_START..=last_year)
        .map(|year| (year, paths.values().map(|p| p[&year].0).sum()))
        .collect();
    Ok(StockAssembly { paths, global })
}

fn measured_future_sum(
    measured: &BTreeMap<String, (StockSource, BTreeMap<i32, f64>)>,
    year: i32,
) -> f64 {
    measured.values().map(|(_, p)| p[&year]).sum()
}

fn index_records<'a>(
    records: &'a [MigrantStockRecord],
    source: &str,
) -> Result<BTreeMap<&'a str, BTreeMap<i32, f64>>> {
    let mut out: BTreeMap<&str, BTreeMap<i32, f64>> = BTreeMap::new();
    for r in records {
        if !(r.stock >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "{source} stock for {} in {} is negative",
                r.destination_code, r.year
            )));
        }
        if out
            .entry(r.destination_code.as_str())
            .or_default()
            .insert(r.year, r.stock)
            .is_some()
        {
            return Err(Error::DuplicateKey {
                country: format!("{source}:{}", r.destination_code),
                year: r.year,
            });
        }
    }
    Ok(out)
}

fn post_baseline(path: &BTreeMap<i32, f64>) -> BTreeMap<i32, f64> {
    path.range(MEASURED_START..).map(|(&y, &v)| (y, v)).collect()
}

/// Every year 2010-2015; unreported interior years are interpolated from the
/// nearest reported years (the UN database is quinquennial).
fn fill_baseline(dest: &str, raw: &BTreeMap<i32, f64>) -> Result<BTreeMap<i32, f64>> {
    for year in [BASELINE_START, BASELINE_END] {
        if !raw.contains_key(&year) {
            return Err(Error::MissingSource(format!("UN stock for {dest} in {year}")));
        }
    }
    let known: Vec<(i32, f64)> = raw
        .range(BASELINE_START..=BASELINE_END)
        .map(|(&y, &v)| (y, v))
        .collect();
    let mut out = BTreeMap::new();
    for pair in known.windows(2) {
        out.insert(pair[0].0, pair[0].1);
        for year in pair[0].0 + 1..pair[1].0 {
            out.insert(year, interpolate_gap_years(pair[0], pair[1], year)?);
        }
    }
    out.insert(BASELINE_END, raw[&BASELINE_END]);
    Ok(out)
}

/// Emigration-positive series from an inflow-positive net migration series.
pub fn emigration_from_net_migration(
    label: impl Into<String>,
    net_migration: &BTreeMap<i32, f64>,
) -> Result<EmigrationSeries> {
    EmigrationSeries::new(label, net_migration.iter().map(|(&y, &v)| (y, -v)).collect())
}

#[derive(Deserialize)]
struct StockRow {
    destination: String,
    year: i32,
    stock: f64,
}

/// Reads `destination,year,stock` rows.
pub fn load_stock_records<R: Read>(source: R, tag: StockSource) -> Result<Vec<MigrantStockRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(source);
    let mut out = Vec::new();
    for row in reader.deserialize() {
        let row: StockRow = row?;
        out.push(MigrantStockRecord {
            destination_code: row.destination,
            year: row.year,
            stock: row.stock,
            source_tag: tag,
        });
    }
    Ok(out)
}

/// Reads `destination,year[,month],stock` rows and annualizes them.
pub fn load_r4v_records<R: Read>(source: R) -> Result<Vec<MigrantStockRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(source);
    let rows = reader
        .deserialize()
        .collect::<std::result::Result<Vec<R4vObservation>, _>>()?;
    annualize_r4v(&rows)
}

/// Reads `year,net_migration` rows.
pub fn load_net_migration<R: Read>(source: R) -> Result<BTreeMap<i32, f64>> {
    #[derive(Deserialize)]
    struct Row {
        year: i32,
        net_migration: f64,
    }
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(source);
    let mut out = BTreeMap::new();
    for row in reader.deserialize() {
        let row: Row = row?;
        out.insert(row.year, row.net_migration);
    }
    Ok(out)
}

/// Writes `year,flow_persons,source_label` rows, series in the given order.
pub fn write_emigration_series<W: Write>(
    series: &[EmigrationSeries],
    precision: Option<usize>,
    sink: W,
) -> Result<()> {
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(["year", "flow_persons", "source_label"])?;
    for s in series {
        for (year, flow) in s.flows() {
            let value = match precision {
                Some(p) => format!("{flow:.p$}"),
                None => format!("{flow}"),
            };
            writer.write_record([year.to_string(), value, s.label().to_string()])?;
        }
    }
    writer.flush()?;
    Ok(())
}
