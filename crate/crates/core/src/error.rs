use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("integrand returned a non-finite value ({value}) at x = {x}")]
    NonFiniteIntegrand { x: f64, value: f64 },

    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    #[error("invalid bracket [{lo}, {hi}]: F(lo) = {f_lo}, F(hi) = {f_hi}, target = {target}")]
    BracketInvalid {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
        target: f64,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("density factor g is negative: {0}")]
    NegativeDensity(String),

    #[error("measure is not normalizable: {0}")]
    NotNormalizable(String),

    #[error("tabulated density grows faster than a Gaussian at the {edge} edge (x = {x})")]
    TailViolation { edge: &'static str, x: f64 },

    #[error("parameter t = {t} outside the working range [-{t_max}, {t_max}]")]
    OutOfRange { t: f64, t_max: f64 },

    #[error("unknown diagnostic '{0}'")]
    UnknownDiagnostic(String),

    #[error("valid window too narrow: {available} points left, {required} required")]
    WindowTooNarrow { available: usize, required: usize },

    #[error("grid must be strictly increasing with at least {min_len} points")]
    InvalidGrid { min_len: usize },

    #[error("cannot parse tabulated density {path:?}, line {line}: {reason}")]
    TableParse {
        path: Option<PathBuf>,
        line: usize,
        reason: String,
    },

    #[error("cannot parse measure '{0}'")]
    MeasureParse(String),

    #[error("i/o error on {path:?}: {reason}")]
    Io { path: PathBuf, reason: String },
}
