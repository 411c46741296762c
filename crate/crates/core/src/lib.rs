//! Exact N-Schur functions, Pluecker coordinates on finite Grassmannians,
//! pseudo-differential operators and KP tau-function checks.

pub mod algebra;
pub mod error;
pub mod grassmannian;
pub mod kp;
pub mod linalg;
pub mod nschur;
pub mod oracle;
pub mod psido;
pub mod random;
pub mod scalar;
pub mod sequences;
pub mod verify;

pub use algebra::{parse_polynomial, parse_rational_function, Monomial, Polynomial, RationalFunction, Var};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use nschur::{nschur, nschur_numeric, schur_polynomial, ExpSign, HModel};
pub use sequences::{Partition, VirtualSequence};

/// Exact rational scalars.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integers.
pub type Integer = num_bigint::BigInt;
