use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("size error: {rows}x{cols} exceeds the dimension cap of {cap}")]
    Size { rows: usize, cols: usize, cap: usize },

    #[error("matrix is not Hermitian (max asymmetry {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    Convergence { sweeps: usize, off_norm: f64 },

    #[error("observable {label} has spectrum [{min}, {max}] outside the value range [{lo}, {hi}]")]
    Feasibility {
        label: String,
        min: f64,
        max: f64,
        lo: f64,
        hi: f64,
    },

    #[error("range error: {0}")]
    Range(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invalid state: {0}")]
    State(String),

    #[error("optimizer did not converge in any of {restarts} restarts (best value {best_value})")]
    OptimizerConvergence { restarts: usize, best_value: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
