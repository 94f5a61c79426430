//! Rising and falling factorials and binomial coefficients with a rational or
//! polynomial upper argument.

use num_bigint::BigUint;
use num_traits::One;

use super::{Polynomial, Rational};

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn factorial_rat(n: u32) -> Rational {
    Rational::from(factorial(n))
}

/// `(x)_n = x (x+1) ... (x+n-1)`; the empty product `1` when `n = 0`.
pub fn rising_factorial_eval(x: &Rational, n: u32) -> Rational {
    (0..n).map(|j| x + Rational::from(j)).product()
}

/// `[x]_n = x (x-1) ... (x-n+1)`; `1` when `n = 0`.
pub fn falling_factorial_eval(x: &Rational, n: u32) -> Rational {
    (0..n).map(|j| x - Rational::from(j)).product()
}

/// The polynomial `[X+c]_n = (X+c)(X+c-1)...(X+c-n+1)`.
pub fn falling_factorial_poly(c: &Rational, n: u32) -> Polynomial {
    (0..n).fold(Polynomial::one(), |acc, j| {
        acc * Polynomial::linear(c - Rational::from(j))
    })
}

/// The polynomial `binom(X+c, r) = [X+c]_r / r!`.
pub fn binom_poly(c: &Rational, r: u32) -> Polynomial {
    let denom = factorial_rat(r);
    falling_factorial_poly(c, r).scale(&(Rational::one() / denom))
}

/// `binom(x, k) = [x]_k / k!` for `k >= 0`, and `0` for negative `k`.
///
/// A negative upper argument goes through the falling factorial, so for
/// example `binom(-2, 2) = 3`.
pub fn binom_rat(x: &Rational, k: i64) -> Rational {
    let Ok(k) = u32::try_from(k) else {
        return Rational::zero();
    };
    falling_factorial_eval(x, k) / factorial_rat(k)
}

/// `binom(x, k)` for integer arguments, same conventions as [`binom_rat`].
pub fn binom_int(x: i64, k: i64) -> Rational {
    binom_rat(&Rational::from(x), k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from(v)
    }

    fn ints(cs: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(cs.iter().map(|&c| Rational::from(c)).collect())
    }

    #[test]
    fn rising_factorial_examples() {
        assert_eq!(rising_factorial_eval(&r(3), 2), r(12));
        assert_eq!(rising_factorial_eval(&Rational::new(5, 7).unwrap(), 0), r(1));
        assert_eq!(rising_factorial_eval(&r(-1), 3), r(0));
    }

    #[test]
    fn falling_factorial_poly_examples() {
        assert_eq!(falling_factorial_poly(&r(0), 2), ints(&[0, -1, 1]));
        assert_eq!(falling_factorial_poly(&r(-1), 1), ints(&[-1, 1]));
        assert_eq!(falling_factorial_poly(&r(2), 3).eval(&r(0)), r(0));
        assert_eq!(falling_factorial_poly(&r(9), 0), Polynomial::one());
    }

    #[test]
    fn binom_poly_examples() {
        let half = Rational::new(1, 2).unwrap();
        let expected = Polynomial::from_coeffs(vec![r(0), -half.clone(), half.clone()]);
        assert_eq!(binom_poly(&r(0), 2), expected);
        assert_eq!(binom_poly(&r(0), 0), Polynomial::one());
        assert_eq!(binom_poly(&r(-1), 1), ints(&[-1, 1]));
        // X(X-1)/2 at 1/2 is (1/2)(-1/2)/2
        assert_eq!(binom_poly(&r(0), 2).eval(&half), Rational::new(-1, 8).unwrap());
    }

    #[test]
    fn binom_rat_examples() {
        assert_eq!(binom_rat(&r(4), 2), r(6));
        assert_eq!(binom_rat(&r(4), -1), r(0));
        assert_eq!(binom_rat(&r(-2), 2), r(3));
        assert_eq!(binom_rat(&r(3), 5), r(0));
        assert_eq!(binom_rat(&r(-1), 3), r(-1));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigUint::from(1u32));
        assert_eq!(factorial(10), BigUint::from(3_628_800u32));
        assert_eq!(factorial(25).to_string(), "15511210043330985984000000");
    }
}
