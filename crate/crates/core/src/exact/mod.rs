//! Exact arithmetic substrate: rationals, bivariate polynomials and dense
//! matrices with exact rank and kernel computation.

pub mod matrix;
pub mod poly;
pub mod rat;

pub use matrix::{rank_of, EchelonBasis, RatMatrix};
pub use poly::{BivarPoly, Monomial, ParsePolyError};
pub use rat::{rat, ParseRatError, Rat};
