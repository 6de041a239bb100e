use std::io::Write;
use std::path::PathBuf;

use anyhow::bail;
use clap::Args;
use sanctions_migration::growth_accounting::{
    channel_decompose, decompose_conventional, decompose_import_adjusted, ChannelInputs, ChannelSchema,
    FactorShares, PeriodGrowthRates, SANCTIONS_PRODUCTION_SHARE,
};
use sanctions_migration::reports::{channel_table, decomposition_table};
use sanctions_migration::Error;

use crate::inputs;
use crate::OutputDir;

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// Period growth rates (label,g_y,g_k,g_h,g_m).
    #[arg(long, conflicts_with = "levels")]
    pub growth: Option<PathBuf>,
    /// Factor levels by year (year,gdp,capital,human_capital,imports).
    #[arg(long, requires = "periods")]
    pub levels: Option<PathBuf>,
    /// Periods to measure from the levels file, as START-END.
    #[arg(long = "period", value_parser = inputs::parse_span::<i32>)]
    pub periods: Vec<(i32, i32)>,
    /// Channel leaf values and stated totals (name,value).
    #[arg(long)]
    pub channels: Option<PathBuf>,
    #[arg(long, default_value_t = SANCTIONS_PRODUCTION_SHARE)]
    pub sanctions_share: f64,
    #[arg(long, default_value_t = FactorShares::default().capital_share)]
    pub capital_share: f64,
    #[arg(long, default_value_t = FactorShares::default().human_share)]
    pub human_share: f64,
    #[arg(long, default_value_t = FactorShares::default().import_elasticity)]
    pub import_elasticity: f64,
}

fn period_rates(args: &DecomposeArgs) -> anyhow::Result<Vec<PeriodGrowthRates>> {
    if let Some(path) = &args.growth {
        return inputs::growth_rows(path);
    }
    let Some(path) = &args.levels else {
        return Ok(Vec::new());
    };
    let levels = inputs::factor_levels(path)?;
    args.periods
        .iter()
        .map(|&(start, end)| {
            let find = |year: i32| {
                levels.iter().find(|l| l.year == year).ok_or_else(|| {
                    Error::OutOfRange(format!("period {start}-{end}: year {year} of {}", path.display()))
                })
            };
            Ok(PeriodGrowthRates::from_levels(format!("{start}-{end}"), find(start)?, find(end)?)?)
        })
        .collect()
}

pub fn cmd_decompose(args: &DecomposeArgs, out: &OutputDir, summary: &mut dyn Write) -> anyhow::Result<()> {
    if args.growth.is_none() && args.levels.is_none() && args.channels.is_none() {
        bail!("nothing to decompose: pass --growth, --levels or --channels");
    }
    let shares = FactorShares {
        capital_share: args.capital_share,
        human_share: args.human_share,
        import_elasticity: args.import_elasticity,
    };

    let rates = period_rates(args)?;
    if !rates.is_empty() {
        let rows = rates
            .into_iter()
            .map(|r| {
                let conv = decompose_conventional(&r, &shares)?;
                let adj = decompose_import_adjusted(&conv, &r, &shares)?;
                Ok((r, conv, adj))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        out.write_table("table3", &decomposition_table(&rows))?;
        for (r, conv, adj) in &rows {
            writeln!(
                summary,
                "{}: growth {:.1}, TFP {:.1}, import-adjusted TFP {:.1}",
                r.label,
                r.g_y,
                conv.tfp(),
                adj.tfp()
            )?;
        }
    }

    if let Some(path) = &args.channels {
        let schema = ChannelSchema::venezuela_2012_2020();
        let inputs = ChannelInputs::from_named(inputs::named_values(path)?, &schema)?;
        let decomposition = channel_decompose(&inputs, &schema, args.sanctions_share)?;
        out.write_table("table4", &channel_table(&decomposition))?;
        writeln!(
            summary,
            "channels: additivity gap {:.3} pp; sanctions {:.1}, other {:.1}, total {:.1}",
            decomposition.root.max_additivity_gap(),
            decomposition.sanctions_total,
            decomposition.other_total,
            decomposition.total
        )?;
    }
    Ok(())
}
