//! Growth collapses, sources-of-growth decompositions (with and without the
//! import-externality adjustment) and the channel attribution tree.

mod channels;
mod collapse;
mod decompose;

pub use channels::{
    channel_decompose, Attribution, ChannelDecomposition, ChannelInputs, ChannelNode, ChannelSchema,
    SchemaNode, ADDITIVITY_TOLERANCE,
};
pub use collapse::{
    annualize, collapse_metrics, deepest_decline, rank_collapses, CollapseMetrics, CollapseRow,
    ConflictClass,
};
pub use decompose::{
    decompose_conventional, decompose_import_adjusted, Factor, FactorLevels, FactorShares,
    GrowthDecomposition, PeriodGrowthRates,
};

use crate::error::{Error, Result};
use crate::numeric::mean;

/// Share of the observed oil production decline attributed to sanctions,
/// used when splitting production-driven channels.
pub const SANCTIONS_PRODUCTION_SHARE: f64 = 0.503;

/// Midpoint of the mean estimate of two families of production-loss
/// estimates (each a fraction of the observed decline).
pub fn sanctions_production_share(group_a: &[f64], group_b: &[f64]) -> Result<f64> {
    if group_a.is_empty() || group_b.is_empty() {
        return Err(Error::InvalidParameter("both estimate groups must be nonempty".into()));
    }
    Ok((mean(group_a) + mean(group_b)) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_of_group_means() {
        assert!((sanctions_production_share(&[0.3, 0.4], &[0.6, 0.7]).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(sanctions_production_share(&[0.5], &[0.5]).unwrap(), 0.5);
        assert!(sanctions_production_share(&[], &[0.5]).is_err());
    }
}
