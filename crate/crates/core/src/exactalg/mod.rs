//! Exact arithmetic foundation: rationals, sparse polynomials in named
//! parameters, univariate gcd, rational functions and exact linear algebra.

mod linalg;
mod parse;
mod poly;
mod ratfunc;
mod solve;
mod unipoly;

pub use linalg::{matrix_rank_kernel, Field, Matrix};
pub use parse::parse_poly;
pub use poly::{Monomial, ParamPoly};
pub use ratfunc::RatFunc;
pub use solve::{poly_solve_zero_identity, resubstitute, Assignment, SearchBox, DEFAULT_BOUND};
pub use unipoly::{gcd_univariate, UniPoly};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Add, subtract or multiply two polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(p: &ParamPoly, q: &ParamPoly, op: PolyOp) -> ParamPoly {
    match op {
        PolyOp::Add => p + q,
        PolyOp::Sub => p - q,
        PolyOp::Mul => p * q,
    }
}
