use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::Args;
use sanctions_migration::panel_store::{
    build_emigration_series, emigration_from_net_migration, load_net_migration, load_r4v_records,
    load_stock_records, write_emigration_series, EmigrationSeries, MigrantStockRecord, StockSource,
};

use crate::inputs;
use crate::OutputDir;

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// UN migrant stock file (destination,year,stock).
    #[arg(long)]
    pub un: PathBuf,
    /// R4V platform file (destination,year[,month],stock).
    #[arg(long)]
    pub r4v: PathBuf,
    /// American Community Survey stocks.
    #[arg(long)]
    pub acs: Option<PathBuf>,
    /// Spanish statistics institute stocks.
    #[arg(long)]
    pub ine: Option<PathBuf>,
    /// Destinations whose post-2016 stocks come from R4V; defaults to every
    /// destination in the R4V file.
    #[arg(long, value_delimiter = ',')]
    pub coverage: Vec<String>,
    /// Additional net-migration series as LABEL=PATH (year,net_migration).
    #[arg(long = "flow", value_parser = parse_flow)]
    pub flows: Vec<(String, PathBuf)>,
}

fn parse_flow(raw: &str) -> Result<(String, PathBuf), String> {
    let (label, path) = raw.split_once('=').ok_or_else(|| format!("`{raw}` is not LABEL=PATH"))?;
    Ok((label.to_string(), PathBuf::from(path)))
}

fn stock_file(path: &Path, tag: StockSource) -> anyhow::Result<Vec<MigrantStockRecord>> {
    load_stock_records(inputs::open(path)?, tag).with_context(|| format!("reading {}", path.display()))
}

pub fn cmd_data_build(args: &BuildArgs, out: &OutputDir, summary: &mut dyn Write) -> anyhow::Result<()> {
    let un = stock_file(&args.un, StockSource::UnStock)?;
    let r4v = load_r4v_records(inputs::open(&args.r4v)?).with_context(|| format!("reading {}", args.r4v.display()))?;
    let acs = match &args.acs {
        Some(p) => stock_file(p, StockSource::Acs)?,
        None => Vec::new(),
    };
    let ine = match &args.ine {
        Some(p) => stock_file(p, StockSource::Ine)?,
        None => Vec::new(),
    };
    let coverage: Vec<String> = if args.coverage.is_empty() {
        let mut all: Vec<String> = r4v.iter().map(|r| r.destination_code.clone()).collect();
        all.sort();
        all.dedup();
        all
    } else {
        args.coverage.clone()
    };

    let mut series = vec![build_emigration_series(&un, &r4v, &acs, &ine, &coverage)?];
    for (label, path) in &args.flows {
        let net = load_net_migration(inputs::open(path)?).with_context(|| format!("reading {}", path.display()))?;
        series.push(emigration_from_net_migration(label.clone(), &net)?);
    }

    write_series(out, "emigration_series.csv", &series, Some(out.precision()))?;
    write_series(out, "emigration_series_full.csv", &series, None)?;
    for s in &series {
        writeln!(
            summary,
            "{}: total {:.0} persons, peak {}",
            s.label(),
            s.total(),
            s.peak_year().map_or("n/a".to_string(), |y| y.to_string())
        )?;
    }
    Ok(())
}

fn write_series(out: &OutputDir, name: &str, series: &[EmigrationSeries], precision: Option<usize>) -> anyhow::Result<()> {
    let mut buf = Vec::new();
    write_emigration_series(series, precision, &mut buf)?;
    out.write_bytes(name, &buf)?;
    Ok(())
}
