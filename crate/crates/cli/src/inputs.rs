//! Input file readers for the formats only the CLI consumes.

use std::collections::BTreeMap;
use std::fs::File;
use std::path::Path;

use anyhow::Context;
use sanctions_migration::growth_accounting::{ConflictClass, FactorLevels, PeriodGrowthRates};
use sanctions_migration::Error;
use serde::Deserialize;

/// Opens an input, reporting an absent file as a missing source.
pub fn open(path: &Path) -> anyhow::Result<File> {
    if !path.exists() {
        return Err(Error::MissingSource(format!("{} does not exist", path.display())).into());
    }
    File::open(path).with_context(|| format!("opening {}", path.display()))
}

fn read_rows<T: for<'de> Deserialize<'de>>(path: &Path) -> anyhow::Result<Vec<T>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(open(path)?);
    reader
        .deserialize()
        .enumerate()
        .map(|(i, row)| row.with_context(|| format!("{}: data row {}", path.display(), i + 1)))
        .collect()
}

/// `label,g_y,g_k,g_h,g_m` rows.
pub fn growth_rows(path: &Path) -> anyhow::Result<Vec<PeriodGrowthRates>> {
    read_rows(path)
}

/// `year,gdp,capital,human_capital,imports` rows.
pub fn factor_levels(path: &Path) -> anyhow::Result<Vec<FactorLevels>> {
    read_rows(path)
}

/// `name,value` rows.
pub fn named_values(path: &Path) -> anyhow::Result<Vec<(String, f64)>> {
    #[derive(Deserialize)]
    struct Row {
        name: String,
        value: f64,
    }
    Ok(read_rows::<Row>(path)?.into_iter().map(|r| (r.name, r.value)).collect())
}

/// `country,conflict` rows; a blank conflict cell leaves the country
/// unclassified.
pub fn conflict_flags(path: &Path) -> anyhow::Result<BTreeMap<String, ConflictClass>> {
    #[derive(Deserialize)]
    struct Row {
        country: String,
        conflict: String,
    }
    Ok(read_rows::<Row>(path)?
        .into_iter()
        .filter(|r| !r.conflict.trim().is_empty())
        .map(|r| (r.country, ConflictClass::parse(&r.conflict)))
        .collect())
}

/// `month,production` rows, in file order.
pub fn monthly_production(path: &Path) -> anyhow::Result<Vec<(String, f64)>> {
    #[derive(Deserialize)]
    struct Row {
        month: String,
        production: f64,
    }
    Ok(read_rows::<Row>(path)?.into_iter().map(|r| (r.month, r.production)).collect())
}

/// Parses `START-END` or `START:END` into an inclusive pair.
pub fn parse_span<T: std::str::FromStr>(raw: &str) -> Result<(T, T), String> {
    let (a, b) = raw
        .split_once(['-', ':'])
        .ok_or_else(|| format!("`{raw}` is not of the form START-END"))?;
    let parse = |s: &str| s.trim().parse::<T>().map_err(|_| format!("`{s}` is not a valid bound"));
    Ok((parse(a)?, parse(b)?))
}
