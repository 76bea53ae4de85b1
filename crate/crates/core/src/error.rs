use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix unit index ({i}, {j}) out of range for dimension {d}")]
    IndexOutOfRange { d: usize, i: usize, j: usize },

    #[error("matrix is not Hermitian (max |m - m†| = {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NegativeEigenvalue(f64),

    #[error("basis matrix is not unitary (max |U†U - I| = {0:e})")]
    NotUnitary(f64),

    #[error("not a density matrix: {0}")]
    InvalidState(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("map is not completely positive: Choi matrix has eigenvalue {min_eigenvalue:e}")]
    NotCompletelyPositive { min_eigenvalue: f64 },

    #[error("Kraus family is not trace preserving (max |ΣK†K - I| = {0:e})")]
    NotTracePreserving(f64),

    #[error("outcome occurs with probability {0:e}; conditional state is undefined")]
    DegenerateOutcome(f64),

    #[error("non-maximally entangled resource requires the parameter n")]
    MissingN,

    #[error("no closed form for {0}")]
    NoClosedForm(String),
}
