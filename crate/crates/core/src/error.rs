use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("exponent matrix is not square: {monomials} monomials, {vars} variables")]
    NonSquare { monomials: usize, vars: usize },
    #[error("degenerate potential: {0}")]
    Degenerate(String),
    #[error("charge out of range: {0}")]
    ChargeOutOfRange(String),
    #[error("not a symmetry of the potential: {0}")]
    NotASymmetry(String),
    #[error("group is not admissible: it does not contain J")]
    NotAdmissible,
    #[error("group is not contained in SL")]
    NotSL,
    #[error("invalid input: {0}")]
    Input(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cocycle equation has no unique solution: {0}")]
    NonUniqueSolution(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("verification failure: {0}")]
    VerificationFailure(String),
}

impl Error {
    /// CLI exit code: 1 input error, 2 unsupported, 3 verification failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Unsupported(_) => 2,
            Error::NonUniqueSolution(_)
            | Error::InternalInconsistency(_)
            | Error::VerificationFailure(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
