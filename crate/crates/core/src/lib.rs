//! Injectivity of morphisms into 2×2 upper-triangular rational matrices on the
//! bounded languages `z1 x* z2 x* ... zt x* z(t+1)`.
//!
//! The decision procedure rewrites matrix products as positional values in the
//! rational base `a` (from `μ(x) = c·[[a, b], [0, 1]]`), then compares those
//! values with finite automata over pairs of digits. The [`encoder`] module goes
//! the other way: it compiles integer polynomials into products of
//! upper-triangular integer matrices.
//!
//! ```
//! use bounded_freeness::algebra::UTMat2;
//! use bounded_freeness::decider::{decide, Instance};
//!
//! let id = UTMat2::identity();
//! let x = UTMat2::new(3, 0, 1);
//! let z = vec![id.clone(), UTMat2::new(2, 1, 3), id];
//! let verdict = decide(&Instance::new(2, x, z).unwrap()).unwrap();
//! assert!(verdict.injective);
//! ```

pub mod algebra;
pub mod automata;
pub mod decider;
pub mod encoder;
pub mod io;
pub mod numeration;
pub mod oracle;
