//! Exact arithmetic: rationals, dense polynomials in `X`, and the factorial
//! family used to build every identity.

mod factorial;
mod poly;
mod rational;

pub use factorial::{
    binom_int, binom_poly, binom_rat, factorial, factorial_rat, falling_factorial_eval,
    falling_factorial_poly, rising_factorial_eval,
};
pub use poly::{poly_eval, poly_mul, ParsePolynomialError, Polynomial};
pub use rational::{ParseRationalError, Rational};
