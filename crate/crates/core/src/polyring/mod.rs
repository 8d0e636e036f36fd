//! Sparse multivariate polynomials over word-sized prime fields.

mod field;
mod monomial;
mod polynomial;

pub use field::{is_prime, next_prime, PrimeField};
pub use monomial::{Exponent, Monomial, MonomialOrder, MAX_VARS};
pub use polynomial::{Polynomial, Ring, Term};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u32),
    #[error("monomials have {left} and {right} variables")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("evaluation point has {got} coordinates, ring has {expected} variables")]
    PointLengthMismatch { expected: usize, got: usize },
    #[error("{0} variables exceed the supported maximum")]
    TooManyVariables(usize),
    #[error("elimination block of {block} variables in a ring with {nvars}")]
    BlockTooLarge { block: usize, nvars: usize },
}
