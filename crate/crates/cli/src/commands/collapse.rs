use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::Args;
use sanctions_migration::growth_accounting::rank_collapses;
use sanctions_migration::panel_store::{load_country_panel, PanelSchema};
use sanctions_migration::reports::collapse_table;
use sanctions_migration::Execution;

use crate::inputs;
use crate::OutputDir;

#[derive(Debug, Args)]
pub struct RankArgs {
    #[arg(long)]
    pub panel: PathBuf,
    /// country,conflict file; "Peacetime" marks peacetime collapses.
    #[arg(long)]
    pub conflicts: Option<PathBuf>,
    #[arg(long, default_value_t = 10)]
    pub top: usize,
}

pub fn cmd_collapse_rank(
    args: &RankArgs,
    out: &OutputDir,
    execution: Execution,
    summary: &mut dyn Write,
) -> anyhow::Result<()> {
    let panel = load_country_panel(inputs::open(&args.panel)?, &PanelSchema::default())
        .with_context(|| format!("reading {}", args.panel.display()))?;
    let flags = match &args.conflicts {
        Some(path) => inputs::conflict_flags(path)?,
        None => Default::default(),
    };
    let rows = rank_collapses(&panel, &flags, args.top, execution);
    out.write_table("collapse_rank", &collapse_table(&rows))?;
    for r in &rows {
        writeln!(
            summary,
            "{:>3} {} {}-{}: {:.1}%",
            r.rank, r.country, r.metrics.peak_year, r.metrics.trough_year, r.metrics.trough_to_peak
        )?;
    }
    Ok(())
}
