//! Exact computations for the category algebras of the five Cameron categories
//! FA, OA, CA, BA and SA over the rationals.
//!
//! The numeric core is generic over [`scalar::Field`]; the aliases below fix the
//! rationals, which is what every verification uses.

pub mod algebra;
pub mod category;
pub mod corner;
pub mod error;
pub mod linalg;
pub mod mutation;
pub mod normalized;
pub mod poly;
pub mod report;
pub mod rep;
pub mod scalar;
pub mod suite;

pub use category::{CategoryId, HomKind, Morphism};
pub use error::{Error, Result};

/// Exact rationals with arbitrary precision.
pub type Rational = num_rational::BigRational;
/// Elements of the category algebra over the rationals.
pub type Element = algebra::AlgebraElement<Rational>;
/// Sparse rational matrix.
pub type RationalMatrix = linalg::SparseMatrix<Rational>;
/// Sparse rational vector.
pub type RationalVec = linalg::SparseVec<Rational>;
/// A prime field used for cross-checks.
pub type F2147483647 = scalar::Fp<2147483647>;
