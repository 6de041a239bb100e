//! Emigration response to growth: fixed-effects panel estimates, the
//! single-country episode ratio, the migration-hump classifier and the
//! segmented oil-production decline rates.

mod episode;
mod fixed_effects;
mod oil;

pub use episode::{
    classify_hump_position, episode_ratio_coefficient, episode_series, EpisodeObservation,
    HumpPosition, HUMP_THRESHOLD_PPP2011,
};
pub use fixed_effects::{
    apply_filter, derive_regression_panel, fe_within_estimate, FixedEffectsEstimate,
    RegressionObservation, RegressionPanel, SampleFilter,
};
pub use oil::{segment_decline_rates, SegmentRate, SegmentReport, WindowDrop};
