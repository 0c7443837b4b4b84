use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("frequency {omega} outside tabulated range [{lo}, {hi}]")]
    OutOfRange { omega: f64, lo: f64, hi: f64 },

    #[error("unphysical state: {0}")]
    UnphysicalState(String),

    #[error("degenerate system: {0}")]
    DegenerateSystem(String),

    #[error("numerical blow-up at t = {t}")]
    NumericalBlowup { t: f64 },

    #[error("visibility undefined for band {band}: zero denominator")]
    UndefinedVisibility { band: &'static str },

    #[error("singular correlation for band {band}: detector at a dark fringe")]
    SingularCorrelation { band: &'static str },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }
}
