//! Dense univariate polynomials in `X` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParsePolynomialError {
    #[error("empty polynomial expression")]
    Empty,
    #[error("malformed term `{0}`")]
    BadTerm(String),
}

/// Coefficient `k` holds the coefficient of `X^k`. Trailing zeros are never
/// stored, so the zero polynomial has no coefficients and two polynomials are
/// equal exactly when their coefficient sequences are.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// The indeterminate `X`.
    pub fn x() -> Self {
        Polynomial::monomial(Rational::one(), 1)
    }

    /// `c · X^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::from_coeffs(coeffs)
    }

    /// `X + c`
    pub fn linear(c: Rational) -> Self {
        Polynomial::from_coeffs(vec![c, Rational::one()])
    }

    /// Builds a polynomial from coefficients listed constant term first.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `X^k`; zero past the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` stands for the degree of the zero polynomial (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// The polynomial `p(-X)`.
    pub fn negate_x(&self) -> Polynomial {
        Polynomial::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Keeps only the coefficients of `X^k` for `k` in `lo..=hi`.
    pub fn restrict(&self, lo: usize, hi: usize) -> Polynomial {
        Polynomial::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    if (lo..=hi).contains(&k) {
                        c.clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        )
    }

    /// Coefficients as `"p/q"` strings, constant term first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(Rational::to_string).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Polynomial, super::ParseRationalError> {
        let coeffs = items
            .iter()
            .map(|s| s.as_ref().parse())
            .collect::<Result<Vec<Rational>, _>>()?;
        Ok(Polynomial::from_coeffs(coeffs))
    }
}

/// Product of two polynomials by schoolbook convolution.
pub fn poly_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero();
    }
    let mut out = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Polynomial::from_coeffs(out)
}

/// Exact value of `p` at `x`.
pub fn poly_eval(p: &Polynomial, x: &Rational) -> Rational {
    p.eval(x)
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        poly_mul(self, rhs)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        poly_mul(&self, &rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

const MINUS: char = '\u{2212}';
const DOT: char = '\u{00B7}';

/// Descending powers, e.g. `1/2·X^2 − 1/2·X`; the zero polynomial is `0`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            match (first, negative) {
                (true, true) => write!(f, "{MINUS}")?,
                (true, false) => {}
                (false, true) => write!(f, " {MINUS} ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}{DOT}")?;
                    }
                    if k == 1 {
                        f.write_str("X")?;
                    } else {
                        write!(f, "X^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

fn parse_term(term: &str, negative: bool) -> Result<(usize, Rational), ParsePolynomialError> {
    let bad = || ParsePolynomialError::BadTerm(term.to_string());
    let (coef_text, power) = match term.split_once('X') {
        None => (term, 0),
        Some((before, after)) => {
            let before = before.trim_end_matches([DOT, '*']);
            let power = if after.is_empty() {
                1
            } else {
                after
                    .strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse::<usize>()
                    .map_err(|_| bad())?
            };
            (before, power)
        }
    };
    let coef = if coef_text.is_empty() {
        if power == 0 {
            return Err(bad());
        }
        Rational::one()
    } else {
        coef_text.parse::<Rational>().map_err(|_| bad())?
    };
    Ok((power, if negative { -coef } else { coef }))
}

/// Parses the rendering produced by `Display`. ASCII `-` and `*` are accepted
/// in place of the typographic minus and middle dot.
impl FromStr for Polynomial {
    type Err = ParsePolynomialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == MINUS { '-' } else { c })
            .collect();
        if text.is_empty() {
            return Err(ParsePolynomialError::Empty);
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for ch in text.chars() {
            if (ch == '+' || ch == '-') && !current.is_empty() && !current.ends_with('/') {
                terms.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && current.is_empty() {
                if ch == '-' {
                    negative = !negative;
                }
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(ParsePolynomialError::BadTerm(text));
        }
        terms.push((negative, current));

        let mut coeffs: Vec<Rational> = Vec::new();
        for (negative, term) in terms {
            let (power, value) = parse_term(&term, negative)?;
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Rational::zero());
            }
            coeffs[power] += value;
        }
        Ok(Polynomial::from_coeffs(coeffs))
    }
}
