use thiserror::Error;

/// Failures reported by the solvers in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("working precision of {0} digits is below the minimum of 30")]
    WorkingPrecision(u32),
    #[error("guard digits {0} below the minimum of 10")]
    GuardDigits(u32),
    #[error("gamma pole at nonpositive integer {0}")]
    GammaPole(i64),
    #[error("order {0} is an integer to working precision")]
    IntegerOrder(String),
    #[error("negative integer order {0} is not supported")]
    NegativeIntegerOrder(i64),
    #[error("argument out of range: {0}")]
    ArgumentOutOfRange(String),
    #[error("arg s = {arg} lies outside the validity sector ({lo}, {hi})")]
    OutOfSector { arg: f64, lo: f64, hi: f64 },
    #[error("Newton iteration did not converge from seed {seed} after {iterations} iterations")]
    NoConvergence { seed: String, iterations: usize },
    #[error("Newton iteration diverged: |E| = {magnitude:e}")]
    Divergence { magnitude: f64 },
    #[error("Hankel recursion breakdown at D = {dimension}, d = {displacement}")]
    RecursionBreakdown { dimension: usize, displacement: usize },
    #[error("symbolic Hankel determinant limited to D <= {limit}, requested D = {requested}")]
    ResourceLimit { requested: usize, limit: usize },
    #[error("continuation break at lambda = {lambda}: {detail}")]
    ContinuationBreak { lambda: f64, detail: String },
    #[error("root search failed: {0}")]
    RootSearch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
