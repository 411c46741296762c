//! Exact rational scalars, sparse multivariate polynomials and rational
//! functions.

mod json;
mod parse;
mod polynomial;
mod rational_function;
mod variable;

pub use json::{rational_from_str, var_from_json, var_to_json};
pub use parse::{parse_polynomial, parse_rational_function};
pub use polynomial::{Monomial, Polynomial};
pub use rational_function::{substitute_poly, RationalFunction};
pub use variable::Var;
