use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("value out of domain: {0}")]
    Domain(String),

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("measurement branch {0} has zero probability; post-measurement state is undefined")]
    UndefinedBranch(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
