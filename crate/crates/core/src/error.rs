use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("x = {x} lies outside the domain [{lo}, {hi}]")]
    Domain { x: f64, lo: f64, hi: f64 },

    #[error("singular point at x = {x}: {reason}")]
    SingularPoint { x: f64, reason: &'static str },

    #[error("quadrature on [{a}, {b}] did not reach tolerance within {panels} panels")]
    QuadratureFailure { a: f64, b: f64, panels: usize },

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("level index {index} exceeds the {count} bound states of this model")]
    Index { index: usize, count: usize },

    #[error("operation requires the a = 0 (lambda-triple) class")]
    WrongClass,

    #[error("complex family: analytic evaluation only")]
    ComplexModel,

    #[error("coordinate map is complex-valued; only real maps are supported here")]
    ComplexMap,

    #[error("grid point x = {x} hits a singularity of the model")]
    SingularOnGrid { x: f64 },

    #[error("grid has {points} points, at least {min} are required")]
    GridTooCoarse { points: usize, min: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("eigensolver did not converge within {budget} iterations")]
    ConvergenceFailure { budget: usize },

    #[error("refinement budget of {doublings} doublings exceeded (last change {last_change:e})")]
    BudgetExceeded { doublings: usize, last_change: f64 },

    #[error("analytic levels without numeric match: {unmatched:?}")]
    MatchFailure { unmatched: Vec<usize> },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
