use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operator is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("trace is {trace}, expected 1")]
    BadTrace { trace: f64 },

    #[error("{name} = {value} outside allowed range [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("bipartite dimensions must be square (d x d), got {d_a} x {d_b}")]
    NotSquareBipartite { d_a: usize, d_b: usize },

    #[error("subsystem A is not maximally mixed (deviation {deviation:e})")]
    MarginalNotMaximallyMixed { deviation: f64 },

    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("state is not invariant under the {0} twirl")]
    NotInvariant(&'static str),

    #[error("unknown solver `{0}`")]
    UnknownSolver(String),

    #[error("infeasible problem: {0}")]
    Infeasible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
