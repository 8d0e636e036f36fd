//! Groebner bases over prime fields and the ideal operations built on them:
//! normal forms, elimination, saturation, equality and projective degree.

pub mod budget;
mod buchberger;
pub mod hilbert;
mod ideal;

pub use buchberger::{buchberger, is_reduced_basis, reduce, s_polynomial};
pub use ideal::{ideal_equals, Ideal};

use thiserror::Error;

use crate::polyring::RingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("cannot eliminate {k} variables from a ring with {nvars}")]
    EliminateAll { k: usize, nvars: usize },
    #[error("degree needs a homogeneous ideal")]
    NotHomogeneous,
    #[error("projective scheme has dimension {projective_dimension}, expected finitely many points")]
    PositiveDimensional { projective_dimension: usize },
    #[error("computation exceeded its deadline")]
    Timeout,
}
