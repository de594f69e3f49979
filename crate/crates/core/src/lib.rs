//! Exact moments of the algebraic-area distribution of closed walks on the
//! square lattice.
//!
//! A closed walk in `Γ(n1, n2)` makes `n1` steps in each of the directions
//! `±1` and `n2` steps in each of the directions `±2`. Its even area moments
//! factor as `|Γ(n1, n2)| · P_2l(n1, n2)` with `P_2l` a symmetric polynomial
//! with rational coefficients. This crate computes `P_2l` symbolically
//! ([`moments`]), checks it against an exact enumeration of the walks
//! ([`walk`]), verifies the combinatorial identities the computation relies
//! on ([`identities`]) and cross-checks the characteristic function of the
//! area with the Hofstadter-Harper operator ([`hh`]).
//!
//! The polynomial and operator code is generic over the scalar type through
//! `num-traits`; the aliases below fix the concrete types used by the rest of
//! the crate and the CLI.

pub mod error;
pub mod exactmath;
pub mod hh;
pub mod identities;
pub mod moments;
pub mod walk;

pub use error::{Error, Result};
pub use exactmath::{BiPoly, Coeff, Real, Var};

/// Arbitrary-precision signed integer.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;
/// Sparse bivariate polynomial with exact rational coefficients.
pub type RatPoly = BiPoly<Rational>;
/// Sparse bivariate polynomial with integer coefficients.
pub type IntPoly = BiPoly<Int>;
/// Double-precision complex amplitude used by the operator cross-check.
pub type Complex64 = num_complex::Complex<f64>;
