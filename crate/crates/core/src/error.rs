use thiserror::Error;

use crate::gcw::GcwError;
use crate::linalg::LinalgError;
use crate::reps::RepError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Gcw(#[from] GcwError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid Mackey functor: {0}")]
    Mackey(String),
    #[error("reduced (co)homology needs a basepoint")]
    NoBasepoint,
    #[error("unsupported grading {grading}: {reason}")]
    UnsupportedGrading { grading: String, reason: String },
    #[error("complex is not free away from the basepoint: cell {0} has a nontrivial stabilizer")]
    NotFree(String),
    #[error("the κ action needs the cup structure of a built-in lens skeleton")]
    KappaUnsupported,
    #[error("Euler class of the trivial character")]
    TrivialCharacter,
    #[error("{grading} does not contain {rep}, even after the mod-p collapse")]
    ContainmentFails { grading: String, rep: String },
    #[error("a_ξ^{k}·1 vanishes on the source model")]
    WitnessVanishes { k: i64 },
    #[error("certificate re-check failed: {0}")]
    CertificateFailed(String),
    #[error("invalid obstruction problem: {0}")]
    InvalidProblem(String),
    #[error("class does not live in this group: {0}")]
    ClassMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn unsupported(grading: impl ToString, reason: impl Into<String>) -> Self {
        Error::UnsupportedGrading { grading: grading.to_string(), reason: reason.into() }
    }
}
