use std::collections::{BTreeMap, HashMap};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_YEAR: i32 = 1950;
pub const MAX_YEAR: i32 = 2035;

/// One (country, year) row of the cross-country panel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountryYearObservation {
    pub country_code: String,
    pub year: i32,
    /// Real GDP per capita, constant-price PPP units. `None` when the source
    /// has no value for the year.
    pub gdp_pc: Option<f64>,
    pub population: f64,
    /// Persons, inflow-positive (World Bank convention).
    pub net_migration: f64,
}

/// Maps logical panel columns to the physical header names of a file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PanelSchema {
    pub country: String,
    pub year: String,
    pub gdp_pc: String,
    pub population: String,
    pub net_migration: String,
}

impl Default for PanelSchema {
    fn default() -> Self {
        PanelSchema {
            country: "country".into(),
            year: "year".into(),
            gdp_pc: "gdp_pc".into(),
            population: "population".into(),
            net_migration: "net_migration".into(),
        }
    }
}

/// A validated panel, sorted by (country, year) with unique keys.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Panel {
    observations: Vec<CountryYearObservation>,
}

impl Panel {
    /// Builds a panel from arbitrary-order observations, enforcing the
    /// observation invariants.
    pub fn new(mut observations: Vec<CountryYearObservation>) -> Result<Self> {
        for (i, obs) in observations.iter().enumerate() {
            validate_observation(obs).map_err(|message| Error::InvalidRow {
                row: i + 1,
                message,
            })?;
        }
        observations.sort_by(|a, b| {
            a.country_code
                .cmp(&b.country_code)
                .then(a.year.cmp(&b.year))
        });
        for pair in observations.windows(2) {
            if pair[0].country_code == pair[1].country_code && pair[0].year == pair[1].year {
                return Err(Error::DuplicateKey {
                    country: pair[0].country_code.clone(),
                    year: pair[0].year,
                });
            }
        }
        Ok(Panel { observations })
    }

    pub fn observations(&self) -> &[CountryYearObservation] {
        &self.observations
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    pub fn countries(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for obs in &self.observations {
            if out.last() != Some(&obs.country_code.as_str()) {
                out.push(&obs.country_code);
            }
        }
        out
    }

    /// Contiguous (country, rows) blocks in sorted order.
    pub fn by_country(&self) -> Vec<(&str, &[CountryYearObservation])> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.observations.len() {
            if i == self.observations.len()
                || self.observations[i].country_code != self.observations[start].country_code
            {
                out.push((
                    self.observations[start].country_code.as_str(),
                    &self.observations[start..i],
                ));
                start = i;
            }
        }
        out
    }

    pub fn country(&self, code: &str) -> &[CountryYearObservation] {
        let start = self
            .observations
            .partition_point(|o| o.country_code.as_str() < code);
        let end = self
            .observations
            .partition_point(|o| o.country_code.as_str() <= code);
        &self.observations[start..end]
    }

    /// Fills missing `gdp_pc` values of `country` forward from the last
    /// observed level using an alternate growth series (percent per year).
    ///
    /// Only years whose predecessor has a level (observed or already
    /// spliced) are filled; observed values are never overwritten.
    /// Returns the number of filled years.
    pub fn splice_growth(&mut self, country: &str, growth_pct: &BTreeMap<i32, f64>) -> usize {
        let start = self
            .observations
            .partition_point(|o| o.country_code.as_str() < country);
        let end = self
            .observations
            .partition_point(|o| o.country_code.as_str() <= country);
        let rows = &mut self.observations[start..end];
        let mut filled = 0;
        for i in 1..rows.len() {
            if rows[i].gdp_pc.is_some() || rows[i].year != rows[i - 1].year + 1 {
                continue;
            }
            if let (Some(prev), Some(g)) = (rows[i - 1].gdp_pc, growth_pct.get(&rows[i].year)) {
                rows[i].gdp_pc = Some(prev * (1.0 + g / 100.0));
                filled += 1;
            }
        }
        filled
    }
}

fn validate_observation(obs: &CountryYearObservation) -> std::result::Result<(), String> {
    if obs.country_code.len() != 3 || !obs.country_code.chars().all(|c| c.is_ascii_alphabetic())
    {
        return Err(format!(
            "country code `{}` is not a 3-letter code",
            obs.country_code
        ));
    }
    if !(MIN_YEAR..=MAX_YEAR).contains(&obs.year) {
        return Err(format!(
            "year {} outside [{MIN_YEAR}, {MAX_YEAR}]",
            obs.year
        ));
    }
    if !(obs.population > 0.0) {
        return Err(format!("population {} must be positive", obs.population));
    }
    if !obs.net_migration.is_finite() {
        return Err("net_migration must be finite".into());
    }
    if let Some(y) = obs.gdp_pc {
        if !y.is_finite() {
            return Err("gdp_pc must be finite".into());
        }
    }
    Ok(())
}

/// Reads a comma-delimited panel with a header row. Empty `gdp_pc` cells are
/// kept as absent values.
pub fn load_country_panel<R: Read>(source: R, schema: &PanelSchema) -> Result<Panel> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let headers = reader.headers()?.clone();
    let index: HashMap<&str, usize> = headers.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let column = |name: &str| -> Result<usize> {
        index
            .get(name)
            .copied()
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let c_country = column(&schema.country)?;
    let c_year = column(&schema.year)?;
    let c_gdp = column(&schema.gdp_pc)?;
    let c_pop = column(&schema.population)?;
    let c_mig = column(&schema.net_migration)?;

    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        // Header is line 1, so data row i sits on line i + 2.
        let row = i + 2;
        let cell = |idx: usize| record.get(idx).unwrap_or("");
        let number = |idx: usize, name: &str| -> Result<f64> {
            let raw = cell(idx);
            raw.parse::<f64>().map_err(|_| Error::NonNumeric {
                row,
                column: name.to_string(),
                value: raw.to_string(),
            })
        };
        let year_raw = cell(c_year);
        let year = year_raw.parse::<i32>().map_err(|_| Error::NonNumeric {
            row,
            column: schema.year.clone(),
            value: year_raw.to_string(),
        })?;
        let gdp_pc = if cell(c_gdp).is_empty() {
            None
        } else {
            Some(number(c_gdp, &schema.gdp_pc)?)
        };
        let obs = CountryYearObservation {
            country_code: cell(c_country).to_string(),
            year,
            gdp_pc,
            population: number(c_pop, &schema.population)?,
            net_migration: number(c_mig, &schema.net_migration)?,
        };
        validate_observation(&obs).map_err(|message| Error::InvalidRow { row, message })?;
        rows.push(obs);
    }
    Panel::new(rows)
}

/// Writes the panel with the schema's header names. `precision` of `None`
/// emits the shortest representation that round-trips exactly.
pub fn write_country_panel<W: Write>(
    panel: &Panel,
    schema: &PanelSchema,
    precision: Option<usize>,
    sink: W,
) -> Result<()> {
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record([
        &schema.country,
        &schema.year,
        &schema.gdp_pc,
        &schema.population,
        &schema.net_migration,
    ])?;
    let fmt = |v: f64| match precision {
        Some(p) => format!("{v:.p$}"),
        None => format!("{v}"),
    };
    for obs in panel.observations() {
        writer.write_record([
            obs.country_code.clone(),
            obs.year.to_string(),
            obs.gdp_pc.map(fmt).unwrap_or_default(),
            fmt(obs.population),
            fmt(obs.net_migration),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads a (country, year, growth_pct) CSV into per-country growth maps.
pub fn load_growth_series<R: Read>(source: R) -> Result<BTreeMap<String, BTreeMap<i32, f64>>> {
    #[derive(Deserialize)]
    struct Row {
        country: String,
        year: i32,
        growth_pct: f64,
    }
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(source);
    let mut out: BTreeMap<String, BTreeMap<i32, f64>> = BTreeMap::new();
    for row in reader.deserialize() {
        let row: Row = row?;
        out.entry(row.country).or_default().insert(row.year, row.growth_pct);
    }
    Ok(out)
}
