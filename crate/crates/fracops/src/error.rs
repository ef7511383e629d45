//! Error type shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong while building or evaluating an operator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the function.
    #[error("domain: {0}")]
    Domain(String),

    /// A series failed its stopping rule within the term budget.
    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    /// The result (or an unavoidable intermediate) exceeds f64 range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// An integration interval is empty, reversed, or not inside [0, t].
    #[error("interval: {0}")]
    Interval(String),

    /// A time grid was requested with a non-positive step or no nodes.
    #[error("grid: {0}")]
    Grid(String),

    /// Sampled data does not match the grid it is paired with.
    #[error("sample count {found} does not match grid length {expected}")]
    GridMismatch { expected: usize, found: usize },

    /// A numerical transform cannot meet its truncation contract.
    #[error("truncation: {0}")]
    Truncation(String),

    /// A signal does not span enough time for the requested analysis.
    #[error("span: {0}")]
    Span(String),

    /// A time window is invalid or lies outside the signal.
    #[error("window: {0}")]
    Window(String),
}

pub type Result<T> = std::result::Result<T, Error>;
