use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Annualized growth of output and factors over one period, in percent
/// (log points x 100).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodGrowthRates {
    pub label: String,
    pub g_y: f64,
    pub g_k: f64,
    pub g_h: f64,
    pub g_m: f64,
}

impl PeriodGrowthRates {
    pub fn validate(&self) -> Result<()> {
        if self.label.trim().is_empty() {
            return Err(Error::InvalidParameter("period label is empty".into()));
        }
        for (name, v) in [("g_Y", self.g_y), ("g_K", self.g_k), ("g_H", self.g_h), ("g_M", self.g_m)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{}: {name} is not finite", self.label)));
            }
        }
        Ok(())
    }

    /// Annualized log growth between two level observations.
    pub fn from_levels(label: impl Into<String>, start: &FactorLevels, end: &FactorLevels) -> Result<Self> {
        let years = f64::from(end.year - start.year);
        if years <= 0.0 {
            return Err(Error::InvalidParameter("period end must follow its start".into()));
        }
        let rate = |a: f64, b: f64, name: &str| -> Result<f64> {
            if a > 0.0 && b > 0.0 {
                Ok(100.0 * (b.ln() - a.ln()) / years)
            } else {
                Err(Error::Domain(format!("{name} level must be positive")))
            }
        };
        let rates = PeriodGrowthRates {
            label: label.into(),
            g_y: rate(start.gdp, end.gdp, "gdp")?,
            g_k: rate(start.capital, end.capital, "capital")?,
            g_h: rate(start.human_capital, end.human_capital, "human_capital")?,
            g_m: rate(start.imports, end.imports, "imports")?,
        };
        rates.validate()?;
        Ok(rates)
    }
}

/// Levels of output and factors in one year.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorLevels {
    pub year: i32,
    pub gdp: f64,
    pub capital: f64,
    pub human_capital: f64,
    pub imports: f64,
}

/// Decomposition weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorShares {
    pub capital_share: f64,
    pub human_share: f64,
    pub import_elasticity: f64,
}

impl Default for FactorShares {
    /// Back-solved from the published contribution/growth ratios.
    fn default() -> Self {
        FactorShares {
            capital_share: 0.57,
            human_share: 0.43,
            import_elasticity: 0.30,
        }
    }
}

impl FactorShares {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("capital_share", self.capital_share),
            ("human_share", self.human_share),
            ("import_elasticity", self.import_elasticity),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidParameter(format!("{name} = {v} is not in (0, 1)")));
            }
        }
        if self.capital_share + self.human_share > 1.05 {
            return Err(Error::InvalidParameter(format!(
                "capital_share + human_share = {} exceeds 1.05",
                self.capital_share + self.human_share
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Factor {
    Capital,
    HumanCapital,
    Imports,
    Tfp,
}

impl Factor {
    pub fn label(self) -> &'static str {
        match self {
            Factor::Capital => "Capital",
            Factor::HumanCapital => "Human Capital",
            Factor::Imports => "Imports",
            Factor::Tfp => "TFP",
        }
    }
}

/// Factor contributions for one period. TFP is the residual, so the
/// contributions always add back to `g_y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthDecomposition {
    pub label: String,
    pub g_y: f64,
    /// In display order: capital, human capital, imports (adjusted only), TFP.
    pub contributions: Vec<(Factor, f64)>,
    /// Contribution / g_Y x 100; `None` when g_Y is zero.
    pub percentage_contributions: Option<Vec<(Factor, f64)>>,
}

impl GrowthDecomposition {
    fn new(label: &str, g_y: f64, contributions: Vec<(Factor, f64)>) -> Self {
        let percentage_contributions = (g_y != 0.0).then(|| {
            contributions
                .iter()
                .map(|&(f, c)| (f, c / g_y * 100.0))
                .collect()
        });
        GrowthDecomposition {
            label: label.to_string(),
            g_y,
            contributions,
            percentage_contributions,
        }
    }

    pub fn contribution(&self, factor: Factor) -> Option<f64> {
        self.contributions
            .iter()
            .find(|(f, _)| *f == factor)
            .map(|&(_, c)| c)
    }

    pub fn percentage(&self, factor: Factor) -> Option<f64> {
        self.percentage_contributions
            .as_ref()?
            .iter()
            .find(|(f, _)| *f == factor)
            .map(|&(_, c)| c)
    }

    pub fn tfp(&self) -> f64 {
        self.contribution(Factor::Tfp).unwrap_or(0.0)
    }
}

/// Capital, human capital and TFP (residual) contributions.
pub fn decompose_conventional(rates: &PeriodGrowthRates, shares: &FactorShares) -> Result<GrowthDecomposition> {
    rates.validate()?;
    shares.validate()?;
    let capital = shares.capital_share * rates.g_k;
    let human = shares.human_share * rates.g_h;
    let tfp = rates.g_y - capital - human;
    Ok(GrowthDecomposition::new(
        &rates.label,
        rates.g_y,
        vec![(Factor::Capital, capital), (Factor::HumanCapital, human), (Factor::Tfp, tfp)],
    ))
}

/// Moves the import-externality term `gamma * g_M` out of conventional TFP.
pub fn decompose_import_adjusted(
    conv: &GrowthDecomposition,
    rates: &PeriodGrowthRates,
    shares: &FactorShares,
) -> Result<GrowthDecomposition> {
    if conv.g_y != rates.g_y || conv.contribution(Factor::Imports).is_some() {
        return Err(Error::InvalidParameter(format!(
            "`{}` is not a conventional decomposition of `{}`",
            conv.label, rates.label
        )));
    }
    let imports = shares.import_elasticity * rates.g_m;
    let capital = conv.contribution(Factor::Capital).unwrap_or(0.0);
    let human = conv.contribution(Factor::HumanCapital).unwrap_or(0.0);
    Ok(GrowthDecomposition::new(
        &rates.label,
        rates.g_y,
        vec![
            (Factor::Capital, capital),
            (Factor::HumanCapital, human),
            (Factor::Imports, imports),
            (Factor::Tfp, conv.tfp() - imports),
        ],
    ))
}
