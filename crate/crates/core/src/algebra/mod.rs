//! Exact scalars and the two matrix families used everywhere else: 2×2
//! upper-triangular rational matrices and square integer matrices of runtime
//! dimension.

mod intmat;
mod rational;
mod utmat;

pub use intmat::{direct_sum, kronecker, unit_matrix, IntMat, MatrixError};
pub use rational::{common_denominator, rat, ParseRationalError, Rational};
pub use utmat::{canonical_form, CanonicalForm, SingularKind, UTMat2};
