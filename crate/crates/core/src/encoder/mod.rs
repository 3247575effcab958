//! Compiling integer polynomials into products of upper-triangular integer
//! matrices, and the pairing construction that turns solvability of
//! `P(a, x2, ..., xm) = 0` into non-injectivity of a matrix morphism.

mod gadget;
mod lemma7;
mod polynomial;

use thiserror::Error;

use crate::algebra::MatrixError;

pub use gadget::{
    compile, compiled_dimension, constant_gadget, evaluate_gadget, gadget_product, product_gadget, scale_gadget,
    sum_gadget, variable_gadget, Gadget,
};
pub use lemma7::{build_q, cantor_polynomial, lemma7_check, mu_a_products, Lemma7Collision, MuA};
pub use polynomial::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("index {index} is out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("coefficient {0} is not an integer")]
    NonIntegerCoefficient(String),
    #[error("malformed gadget: {0}")]
    MalformedGadget(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}
