use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("payoff index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("point is off the probability simplex (deviation {deviation:e})")]
    OffSimplex { deviation: f64 },

    #[error("payoff matrix must be square with n >= 2, got {rows}x{cols}")]
    BadMatrixShape { rows: usize, cols: usize },

    #[error("non-finite entry in payoff data")]
    NonFiniteInput,

    #[error("linear block is singular: |det A| = {det:e} <= 1e-12")]
    SingularPayoffMatrix { det: f64 },

    #[error("system is non-generic: {reason}")]
    NonGeneric { reason: String },

    #[error("relative-position vector matches no table row for family {family}")]
    UnrealizablePosition { family: u8 },

    #[error("unknown symmetry map id: {0}")]
    UnknownMap(String),

    #[error("time scale factor must be positive, got {0}")]
    BadTimeScale(f64),

    #[error("step size underflow at ({x}, {y}) in chart {chart}")]
    StepUnderflow { x: f64, y: f64, chart: String },

    #[error("separatrix endpoint ambiguous between {a} and {b}")]
    AmbiguousEndpoint { a: String, b: String },

    #[error("skeleton matches no catalogued pattern for case {case}; candidates: {candidates:?}")]
    AmbiguousSkeleton { case: String, candidates: Vec<String> },

    #[error("limit-cycle criterion hypotheses not met: {reason}")]
    HypothesesNotMet { reason: String },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
