//! Cross-country panel ingestion and the Venezuelan emigration series.

mod migration;
mod panel;

pub use migration::{
    annualize_r4v, assemble_stocks, build_emigration_series, emigration_from_net_migration,
    interpolate_gap_years, load_net_migration, load_r4v_records, load_stock_records,
    proportional_growth_extrapolation, stocks_to_flows, write_emigration_series,
    EmigrationSeries, MigrantStockRecord, R4vObservation, StockAssembly, StockSource,
    BASELINE_END, BASELINE_START, INTERPOLATED_YEAR, MEASURED_START, STOCK_SERIES_LABEL,
};
pub use panel::{
    load_country_panel, load_growth_series, write_country_panel, CountryYearObservation, Panel,
    PanelSchema, MAX_YEAR, MIN_YEAR,
};
