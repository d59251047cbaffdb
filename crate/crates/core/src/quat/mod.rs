//! Quaternion algebras `(a, b / F)`, first-kind involutions, Hilbert
//! symbols and algebra discriminants.

mod algebra;
mod hilbert;
mod involution;

use thiserror::Error;

use crate::exactnum::NumError;

pub use algebra::{Alg, AlgExt, QuatAlgebra, Quaternion};
pub use hilbert::{algebra_discriminant, hilbert_symbol, AlgebraDisc, Place};
pub use involution::{Involution, InvolutionType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuatError {
    #[error(transparent)]
    Num(#[from] NumError),
    #[error("quaternions belong to different algebras")]
    AlgebraMismatch,
    #[error("algebra parameters must be nonzero")]
    ZeroParameter,
    #[error("quaternion is not invertible")]
    NotInvertible,
    #[error("involution generator must be a pure quaternion")]
    NotPure,
    #[error("quaternion has a nonzero irrational part")]
    NotRational,
    #[error("{0} is not a prime place")]
    BadPlace(u64),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("undefined: {0}")]
    Domain(&'static str),
    #[error("internal consistency failure: {0}")]
    Internal(&'static str),
}
