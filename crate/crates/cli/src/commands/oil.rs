use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use sanctions_migration::econometrics::segment_decline_rates;
use sanctions_migration::reports::oil_segment_table;

use crate::inputs;
use crate::OutputDir;

#[derive(Debug, Args)]
pub struct SegmentArgs {
    /// month,production file in chronological order.
    #[arg(long)]
    pub series: PathBuf,
    /// Zero-based month indices where a new segment starts.
    #[arg(long, value_delimiter = ',')]
    pub breakpoints: Vec<usize>,
    /// Discrete-drop windows as START:END month indices.
    #[arg(long = "window", value_parser = inputs::parse_span::<usize>)]
    pub windows: Vec<(usize, usize)>,
}

pub fn cmd_oil_segments(args: &SegmentArgs, out: &OutputDir, summary: &mut dyn Write) -> anyhow::Result<()> {
    let rows = inputs::monthly_production(&args.series)?;
    let values: Vec<f64> = rows.iter().map(|(_, v)| *v).collect();
    let report = segment_decline_rates(&values, &args.breakpoints, &args.windows)?;
    out.write_table("oil_segments", &oil_segment_table(&report))?;
    for s in &report.segments {
        writeln!(
            summary,
            "{} to {}: {:.2}% per month",
            rows[s.start].0, rows[s.end].0, s.mean_log_change
        )?;
    }
    for w in &report.windows {
        writeln!(
            summary,
            "{} to {}: {:.1}% ({:.0})",
            rows[w.start].0, rows[w.end].0, w.percent_change, w.absolute_change
        )?;
    }
    Ok(())
}
