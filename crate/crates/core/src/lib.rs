//! Growth collapse, emigration and sanctions-scenario analytics for
//! country-year panels.
//!
//! The modules follow the pipeline: [`panel_store`] ingests and validates
//! panels and migrant stock data, [`growth_accounting`] measures collapses
//! and decomposes them, [`econometrics`] estimates the emigration response
//! to growth, [`scenario_engine`] projects emigration under sanctions
//! regimes and [`reports`] renders tables and charts.

// `!(x > 0.0)` is the NaN-rejecting form used by the validators.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod econometrics;
mod error;
pub mod exec;
pub mod growth_accounting;
pub mod numeric;
pub mod panel_store;
pub mod reports;
pub mod scenario_engine;

pub use error::{Error, Result};
pub use exec::Execution;
