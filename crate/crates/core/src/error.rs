use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("missing required column `{0}`")]
    MissingColumn(String),

    #[error("row {row}, column `{column}`: cannot parse `{value}` as a number")]
    NonNumeric {
        row: usize,
        column: String,
        value: String,
    },

    #[error("row {row}: {message}")]
    InvalidRow { row: usize, message: String },

    #[error("duplicate observation for ({country}, {year})")]
    DuplicateKey { country: String, year: i32 },

    #[error("{context}: year {missing} is missing from the sequence")]
    YearGap { context: String, missing: i32 },

    #[error("undefined ratio: {0}")]
    UndefinedRatio(String),

    #[error("{0} out of range")]
    OutOfRange(String),

    #[error("missing source data: {0}")]
    MissingSource(String),

    #[error("cannot extrapolate: {0}")]
    CannotExtrapolate(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("channel tree does not match schema; unmatched names: {}", .0.join(", "))]
    Structural(Vec<String>),

    #[error("node `{node}` states {stated} but its children sum to {sum} (tolerance {tolerance})")]
    Additivity {
        node: String,
        stated: f64,
        sum: f64,
        tolerance: f64,
    },

    #[error("degenerate regressor: within-country variance of growth is zero")]
    DegenerateRegressor,

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("infeasible exports: production {production} below domestic consumption {domestic}")]
    InfeasibleExports { production: f64, domestic: f64 },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("scenario `{scenario}`: {source}")]
    Scenario {
        scenario: String,
        #[source]
        source: Box<Error>,
    },

    #[error("config: {0}")]
    Config(String),

    #[error("csv: {0}")]
    Csv(String),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn in_scenario(self, name: &str) -> Self {
        Error::Scenario {
            scenario: name.to_string(),
            source: Box::new(self),
        }
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
