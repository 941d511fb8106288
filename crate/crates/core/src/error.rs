use alloc::boxed::Box;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `1 - nu + nu * theta` is at or below the usable threshold.
    DegenerateFrequency { denominator: f64 },
    /// A parameter lies outside its admissible range.
    InvalidParams(&'static str),
    /// The Gaussian norm bound is undefined for `theta = 0`.
    ThetaZero,
    InvalidGrid(&'static str),
    NegativeInput { index: usize, value: f64 },
    CutoffTooSmall { tail_fraction: f64, allowed: f64 },
    VacuumCell { cell: usize, rho: f64 },
    NonSpdTensor { cell: usize },
    DegenerateTemperature { cell: usize, value: f64 },
    CorrectionDiverged { cell: usize, iterations: usize, residual: f64 },
    HypothesisViolated(&'static str),
    ShapeMismatch { expected: usize, found: usize },
    AtStep { step: usize, source: Box<Error> },
}

impl Error {
    pub(crate) fn with_cell(self, cell: usize) -> Self {
        match self {
            Error::VacuumCell { rho, .. } => Error::VacuumCell { cell, rho },
            Error::NonSpdTensor { .. } => Error::NonSpdTensor { cell },
            Error::DegenerateTemperature { value, .. } => Error::DegenerateTemperature { cell, value },
            Error::CorrectionDiverged { iterations, residual, .. } => {
                Error::CorrectionDiverged { cell, iterations, residual }
            }
            other => other,
        }
    }

    pub(crate) fn at_step(self, step: usize) -> Self {
        Error::AtStep { step, source: Box::new(self) }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateFrequency { denominator } => {
                write!(f, "collision frequency degenerate: 1 - nu + nu*theta = {denominator:e}")
            }
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::ThetaZero => write!(f, "the Gaussian norm constant is unbounded at theta = 0"),
            Error::InvalidGrid(msg) => write!(f, "invalid grid: {msg}"),
            Error::NegativeInput { index, value } => {
                write!(f, "negative distribution value {value:e} at index {index}")
            }
            Error::CutoffTooSmall { tail_fraction, allowed } => write!(
                f,
                "grid cutoffs too small: tail mass fraction {tail_fraction:e} exceeds {allowed:e}"
            ),
            Error::VacuumCell { cell, rho } => write!(f, "vacuum in cell {cell}: rho = {rho:e}"),
            Error::NonSpdTensor { cell } => {
                write!(f, "relaxation tensor is not positive definite in cell {cell}")
            }
            Error::DegenerateTemperature { cell, value } => {
                write!(f, "non-positive temperature {value:e} in cell {cell}")
            }
            Error::CorrectionDiverged { cell, iterations, residual } => write!(
                f,
                "conservative correction failed in cell {cell} after {iterations} iterations (residual {residual:e})"
            ),
            Error::HypothesisViolated(msg) => write!(f, "hypothesis violated: {msg}"),
            Error::ShapeMismatch { expected, found } => {
                write!(f, "field length {found} does not match grid size {expected}")
            }
            Error::AtStep { step, source } => write!(f, "step {step}: {source}"),
        }
    }
}

impl core::error::Error for Error {}
