//! Exact construction of the twisting representation of genus-2 curves with
//! automorphism group D8 or D12, together with verification harnesses for the
//! representation-theoretic identities (checked symbolically over Q) and for
//! the induced relations between local L-factors (checked by finite-field
//! point counting).
//!
//! The crate is organised around exact arithmetic: all representation theory
//! is done over `Rat` (arbitrary-precision rationals) and the cyclotomic field
//! Q(zeta_24); point counts are the only place machine integers appear.

pub mod arith;
pub mod cm;
pub mod curves;
pub mod cyclotomic;
pub mod galois;
pub mod groups;
pub mod mat;
pub mod modular;
pub mod multiquad;
pub mod poly;
pub mod rankin;

mod error;

pub use error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// Polynomial with exact rational coefficients.
pub type RatPoly = poly::Polynomial<Rat>;
/// Polynomial with integer coefficients (local factors, tensor products).
pub type IntPoly = poly::Polynomial<Int>;

/// 4x4 rational matrix: the twisting representation acts on the 4-dimensional
/// endomorphism algebra.
pub type Mat4 = mat::Matrix<Rat, 4>;

pub(crate) fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub(crate) fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}
