//! Both sides of every identity, built as exact values.
//!
//! Identities in `X` produce [`Polynomial`] sides and scalar identities produce
//! [`Rational`] sides. Nothing here compares the two sides; that is the
//! verifier's job, so a failing case can still show both.

mod case;

pub use case::{CaseError, Form, IdentityCase, IdentityId};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{
    binom_int, binom_poly, factorial_rat, falling_factorial_eval, falling_factorial_poly,
    rising_factorial_eval, Polynomial, Rational,
};
use crate::genbinom::GenBinomCache;
use crate::partitions::{multiplicities, z_value, Partition, PartitionCache};

/// One side of an identity. Both sides of a case always carry the same tag.
/// Serializes as an array of `"p/q"` strings (constant term first) for
/// polynomials and as a single `"p/q"` string for scalars.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SideValue {
    Poly(Polynomial),
    Scalar(Rational),
}

impl SideValue {
    pub fn as_poly(&self) -> Option<&Polynomial> {
        match self {
            SideValue::Poly(p) => Some(p),
            SideValue::Scalar(_) => None,
        }
    }

    pub fn as_scalar(&self) -> Option<&Rational> {
        match self {
            SideValue::Scalar(q) => Some(q),
            SideValue::Poly(_) => None,
        }
    }

    /// Adds one to the constant term. Used by negative-path fixtures.
    pub fn perturbed(&self) -> SideValue {
        match self {
            SideValue::Poly(p) => SideValue::Poly(p + &Polynomial::one()),
            SideValue::Scalar(q) => SideValue::Scalar(q + Rational::one()),
        }
    }
}

impl std::fmt::Display for SideValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SideValue::Poly(p) => write!(f, "{p}"),
            SideValue::Scalar(q) => write!(f, "{q}"),
        }
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs())
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Polynomial::from_coeffs(Vec::<Rational>::deserialize(
            deserializer,
        )?))
    }
}

pub type Sides = (SideValue, SideValue);

/// A single coefficient extraction: the value read off a built polynomial and
/// the closed form it should match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientCheck {
    pub label: &'static str,
    pub extracted: Rational,
    pub closed_form: Rational,
}

impl CoefficientCheck {
    pub fn holds(&self) -> bool {
        self.extracted == self.closed_form
    }
}

fn rat(v: i64) -> Rational {
    Rational::from(v)
}

fn sign(exponent: i64) -> Rational {
    if exponent.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `Σ_i (λ_i)_s` over the parts of λ.
fn rising_power_sum(lambda: &Partition, s: u32) -> Rational {
    lambda
        .parts()
        .iter()
        .map(|&p| rising_factorial_eval(&Rational::from(p), s))
        .sum()
}

/// `[Σ_i m_i (i)_s] / Π_i m_i!`, the per-partition term shared by the
/// length-restricted sums.
fn multiplicity_term(lambda: &Partition, s: u32) -> Rational {
    let m = multiplicities(lambda);
    let numer: Rational = m
        .iter()
        .map(|(&i, &mi)| Rational::from(mi) * rising_factorial_eval(&Rational::from(i), s))
        .sum();
    let denom: Rational = m.values().map(|&mi| factorial_rat(mi)).product();
    numer / denom
}

/// `binom(X, r) - binom(X - s, r)`
fn signed_bracket(r: u32, s: u32) -> Polynomial {
    binom_poly(&Rational::zero(), r) - binom_poly(&-Rational::from(s), r)
}

/// `binom(X + r + s - 1, r) - binom(X + r - 1, r)`
fn unsigned_bracket(r: u32, s: u32) -> Polynomial {
    binom_poly(&rat(i64::from(r) + i64::from(s) - 1), r) - binom_poly(&rat(i64::from(r) - 1), r)
}

/// `(s-1)! binom(n+s-1, n-r)`
fn conj1_prefactor(n: u32, r: u32, s: u32) -> Rational {
    let (n, r, s) = (i64::from(n), i64::from(r), i64::from(s));
    factorial_rat((s - 1) as u32) * binom_int(n + s - 1, n - r)
}

/// Builds identity sides, memoizing partition lists and `⟨λ, r⟩` tables.
/// Shareable across threads; caches fill idempotently.
#[derive(Debug, Default)]
pub struct Evaluator {
    partitions: PartitionCache,
    genbinom: GenBinomCache,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn partitions(&self, n: u32, min_len: usize, max_len: Option<usize>) -> Arc<Vec<Partition>> {
        self.partitions.get(n, min_len, max_len)
    }

    pub fn genbinom_cache(&self) -> &GenBinomCache {
        &self.genbinom
    }

    /// Fills the caches for every partition of `n`.
    pub fn prefill(&self, n: u32) {
        for lambda in self.partitions(n, 0, None).iter() {
            self.genbinom.get(lambda);
        }
    }

    pub fn sides(&self, case: &IdentityCase) -> Sides {
        let n = case.n();
        let r = case.r().unwrap_or(0);
        let s = case.s().unwrap_or(0);
        let form = case.form().unwrap_or(Form::Signed);
        match case.id() {
            IdentityId::Classical => self.classical_sides(n, form),
            IdentityId::Conj1 => self.conj1_sides(n, r, s, form),
            IdentityId::Conj2 => self.conj2_sides(n, s, form),
            IdentityId::Conj3 => self.conj3_sides(n, r, s),
            IdentityId::Conj4 => self.conj4_sides(n, r, s),
            IdentityId::ConstTerm => const_term_sides(n, r, s),
            IdentityId::TopCoeff => top_coeff_sides(n, r, s),
            IdentityId::BinomialType => binomial_type_sides(n, s),
            IdentityId::HockeyStick => hockey_stick_sides(n, r),
        }
    }

    /// `Σ_{|μ|=n} (±1)^{n-l(μ)} X^{l(μ)} / z_μ` against `binom(X, n)` (signed)
    /// or `binom(X+n-1, n)` (unsigned).
    pub fn classical_sides(&self, n: u32, form: Form) -> Sides {
        let mut coeffs = vec![Rational::zero(); n as usize + 1];
        for mu in self.partitions(n, 1, None).iter() {
            let len = mu.length();
            let mut term = Rational::one() / Rational::from(z_value(mu));
            if form == Form::Signed {
                term *= sign(i64::from(n) - len as i64);
            }
            coeffs[len] += term;
        }
        let lhs = Polynomial::from_coeffs(coeffs);
        let rhs = match form {
            Form::Signed => binom_poly(&Rational::zero(), n),
            Form::Unsigned => binom_poly(&rat(i64::from(n) - 1), n),
        };
        (SideValue::Poly(lhs), SideValue::Poly(rhs))
    }

    /// The partition-sum side of the main identity, summed over `list`.
    fn conj1_lhs_over(&self, list: &[Partition], r: u32, s: u32, form: Form) -> Polynomial {
        let mut coeffs = vec![Rational::zero(); list.iter().map(Partition::length).max().unwrap_or(0)];
        for mu in list {
            let g = self.genbinom.gen_binom(mu, r as usize);
            if g == num_bigint::BigUint::default() {
                continue;
            }
            let len = mu.length();
            let mut term = Rational::from(g) / Rational::from(z_value(mu)) * rising_power_sum(mu, s);
            if form == Form::Signed {
                term *= sign(i64::from(r) - len as i64);
            }
            coeffs[len - 1] += term;
        }
        Polynomial::from_coeffs(coeffs)
    }

    /// Left side summed over partitions with `l(μ) <= r` only.
    pub fn conj1_lhs(&self, n: u32, r: u32, s: u32, form: Form) -> Polynomial {
        let list = self.partitions(n, 1, Some(r as usize));
        self.conj1_lhs_over(&list, r, s, form)
    }

    /// Left side summed over every partition of `n`, without the length cut.
    pub fn conj1_lhs_unrestricted(&self, n: u32, r: u32, s: u32, form: Form) -> Polynomial {
        let list = self.partitions(n, 1, None);
        self.conj1_lhs_over(&list, r, s, form)
    }

    pub fn conj1_rhs(&self, n: u32, r: u32, s: u32, form: Form) -> Polynomial {
        let bracket = match form {
            Form::Signed => signed_bracket(r, s),
            Form::Unsigned => unsigned_bracket(r, s),
        };
        bracket.scale(&conj1_prefactor(n, r, s))
    }

    pub fn conj1_sides(&self, n: u32, r: u32, s: u32, form: Form) -> Sides {
        (
            SideValue::Poly(self.conj1_lhs(n, r, s, form)),
            SideValue::Poly(self.conj1_rhs(n, r, s, form)),
        )
    }

    /// The `r = n` specialization, built without `⟨μ, n⟩ = 1` lookups.
    pub fn conj2_sides(&self, n: u32, s: u32, form: Form) -> Sides {
        let mut coeffs = vec![Rational::zero(); n as usize];
        for mu in self.partitions(n, 1, None).iter() {
            let len = mu.length();
            let mut term = rising_power_sum(mu, s) / Rational::from(z_value(mu));
            if form == Form::Signed {
                term *= sign(i64::from(n) - len as i64);
            }
            coeffs[len - 1] += term;
        }
        let lhs = Polynomial::from_coeffs(coeffs);
        let bracket = match form {
            Form::Signed => signed_bracket(n, s),
            Form::Unsigned => {
                binom_poly(&rat(i64::from(n) + i64::from(s) - 1), n) - binom_poly(&rat(i64::from(n) - 1), n)
            }
        };
        let rhs = bracket.scale(&factorial_rat(s - 1));
        (SideValue::Poly(lhs), SideValue::Poly(rhs))
    }

    /// `(r-1)! Σ_{|μ|=n, l(μ)=r} [Σ_i m_i (i)_s] / Π_i m_i!`
    pub fn conj3_lhs(&self, n: u32, r: u32, s: u32) -> Rational {
        if r == 0 {
            return Rational::zero();
        }
        let sum: Rational = self
            .partitions(n, r as usize, Some(r as usize))
            .iter()
            .map(|mu| multiplicity_term(mu, s))
            .sum();
        factorial_rat(r - 1) * sum
    }

    pub fn conj3_sides(&self, n: u32, r: u32, s: u32) -> Sides {
        (
            SideValue::Scalar(self.conj3_lhs(n, r, s)),
            SideValue::Scalar(conj3_rhs(n, r, s)),
        )
    }

    pub fn conj4_sides(&self, n: u32, r: u32, s: u32) -> Sides {
        (
            SideValue::Scalar(self.conj3_lhs(n, r, s)),
            SideValue::Scalar(conj4_rhs(n, r, s)),
        )
    }

    /// Coefficient extractions linking the main identity to the constant-term
    /// identity, the leading-coefficient expansion, and the length-restricted
    /// sums at `r` and `r - 1`.
    pub fn top_coeff_checks(&self, n: u32, r: u32, s: u32) -> Vec<CoefficientCheck> {
        let lhs = self.conj1_lhs(n, r, s, Form::Signed);
        let rhs = self.conj1_rhs(n, r, s, Form::Signed);
        let bracket = signed_bracket(r, s);
        let top = (r - 1) as usize;
        let (n_i, r_i, s_i) = (i64::from(n), i64::from(r), i64::from(s));
        let r_fact = factorial_rat(r);

        let mut checks = vec![
            CoefficientCheck {
                label: "bracket X^(r-1)",
                extracted: bracket.coeff(top),
                closed_form: rat(r_i * s_i) / r_fact.clone(),
            },
            CoefficientCheck {
                label: "lhs X^(r-1) vs CONJ3 lhs",
                extracted: factorial_rat(r - 1) * lhs.coeff(top),
                closed_form: self.conj3_lhs(n, r, s),
            },
            CoefficientCheck {
                label: "rhs X^(r-1) vs CONJ3 rhs",
                extracted: factorial_rat(r - 1) * rhs.coeff(top),
                closed_form: conj3_rhs(n, r, s),
            },
        ];
        if r >= 2 {
            let half_gap = rat(n_i - r_i + 1) / rat(2);
            checks.push(CoefficientCheck {
                label: "bracket X^(r-2)",
                extracted: bracket.coeff(top - 1),
                closed_form: -rat(r_i * (r_i - 1) / 2 * s_i * (r_i + s_i - 1)) / r_fact,
            });
            checks.push(CoefficientCheck {
                label: "lhs X^(r-2) vs CONJ3 lhs at r-1",
                extracted: factorial_rat(r - 2) * lhs.coeff(top - 1),
                closed_form: -half_gap.clone() * self.conj3_lhs(n, r - 1, s),
            });
            checks.push(CoefficientCheck {
                label: "rhs X^(r-2) vs CONJ3 rhs at r-1",
                extracted: factorial_rat(r - 2) * rhs.coeff(top - 1),
                closed_form: -half_gap * conj3_rhs(n, r - 1, s),
            });
        }
        let (ct_lhs, ct_rhs) = const_term_values(n, r, s);
        checks.push(CoefficientCheck {
            label: "lhs X^0 vs CONST_TERM lhs",
            extracted: lhs.coeff(0),
            closed_form: -ct_lhs.clone(),
        });
        checks.push(CoefficientCheck {
            label: "rhs X^0 vs CONST_TERM rhs",
            extracted: rhs.coeff(0),
            closed_form: -ct_rhs.clone(),
        });
        checks.push(CoefficientCheck {
            label: "CONST_TERM",
            extracted: ct_lhs,
            closed_form: ct_rhs,
        });
        checks
    }

    /// `p(-X)` relation between the two forms: the unsigned sides at `-X`
    /// equal `(-1)^{r-1}` times the signed sides.
    pub fn sign_flip_check(&self, n: u32, r: u32, s: u32) -> bool {
        let factor = sign(i64::from(r) - 1);
        let lhs_ok = self.conj1_lhs(n, r, s, Form::Unsigned).negate_x()
            == self.conj1_lhs(n, r, s, Form::Signed).scale(&factor);
        let rhs_ok = self.conj1_rhs(n, r, s, Form::Unsigned).negate_x()
            == self.conj1_rhs(n, r, s, Form::Signed).scale(&factor);
        lhs_ok && rhs_ok
    }
}

/// `s! binom(n+s-1, n-r)`
pub fn conj3_rhs(n: u32, r: u32, s: u32) -> Rational {
    let (n, r, s_i) = (i64::from(n), i64::from(r), i64::from(s));
    factorial_rat(s) * binom_int(n + s_i - 1, n - r)
}

/// `Σ_{i=1}^{n-r+1} binom(n-i-1, r-2) (i)_s`
pub fn conj4_rhs(n: u32, r: u32, s: u32) -> Rational {
    let (n, r) = (i64::from(n), i64::from(r));
    (1..=(n - r + 1))
        .map(|i| binom_int(n - i - 1, r - 2) * rising_factorial_eval(&rat(i), s))
        .sum()
}

fn const_term_values(n: u32, r: u32, s: u32) -> (Rational, Rational) {
    let (n_i, r_i, s_i) = (i64::from(n), i64::from(r), i64::from(s));
    let lhs = sign(r_i) * binom_int(n_i, r_i) / rat(n_i) * rising_factorial_eval(&rat(n_i), s);
    let rhs = conj1_prefactor(n, r, s) * binom_int(-s_i, r_i);
    (lhs, rhs)
}

/// `(-1)^r C(n,r)/n (n)_s` against `(s-1)! binom(n+s-1, n-r) binom(-s, r)`.
pub fn const_term_sides(n: u32, r: u32, s: u32) -> Sides {
    let (lhs, rhs) = const_term_values(n, r, s);
    (SideValue::Scalar(lhs), SideValue::Scalar(rhs))
}

/// The two leading terms (`X^{r-1}`, `X^{r-2}`) of the signed right side,
/// read off the built polynomial, against the closed-form expansion
/// `(s-1)! binom(n+s-1,n-r) (r s X^{r-1} - r(r-1)/2 s(r+s-1) X^{r-2}) / r!`.
pub fn top_coeff_sides(n: u32, r: u32, s: u32) -> Sides {
    let prefactor = conj1_prefactor(n, r, s);
    let top = (r - 1) as usize;
    let low = top.saturating_sub(1);
    let extracted = signed_bracket(r, s).scale(&prefactor).restrict(low, top);

    let (r_i, s_i) = (i64::from(r), i64::from(s));
    let r_fact = factorial_rat(r);
    let mut closed = Polynomial::monomial(rat(r_i * s_i) / r_fact.clone(), top);
    if r >= 2 {
        let next = -rat(r_i * (r_i - 1) / 2 * s_i * (r_i + s_i - 1)) / r_fact;
        closed = closed + Polynomial::monomial(next, top - 1);
    }
    (
        SideValue::Poly(extracted),
        SideValue::Poly(closed.scale(&prefactor)),
    )
}

/// `[X+y]_n` against `Σ_k C(n,k) [X]_{n-k} [y]_k` for an integer shift `y`.
pub fn binomial_type_sides(n: u32, y: u32) -> Sides {
    let y = Rational::from(y);
    let lhs = falling_factorial_poly(&y, n);
    let rhs = (0..=n).fold(Polynomial::zero(), |acc, k| {
        let weight = binom_int(i64::from(n), i64::from(k)) * falling_factorial_eval(&y, k);
        acc + falling_factorial_poly(&Rational::zero(), n - k).scale(&weight)
    });
    (SideValue::Poly(lhs), SideValue::Poly(rhs))
}

/// `C(big_n, k)` against `Σ_{i=1}^{big_n-1} C(i, k-1)`.
pub fn hockey_stick_sides(big_n: u32, k: u32) -> Sides {
    let (big_n, k) = (i64::from(big_n), i64::from(k));
    let lhs = binom_int(big_n, k);
    let rhs = (1..big_n).map(|i| binom_int(i, k - 1)).sum();
    (SideValue::Scalar(lhs), SideValue::Scalar(rhs))
}

/// `r = 1` closed form of the length-restricted sum: `(n)_s = s! binom(n+s-1, s)`.
pub fn conj3_r1_closed_form(n: u32, s: u32) -> Sides {
    let lhs = rising_factorial_eval(&Rational::from(n), s);
    let rhs = factorial_rat(s) * binom_int(i64::from(n) + i64::from(s) - 1, i64::from(s));
    (SideValue::Scalar(lhs), SideValue::Scalar(rhs))
}

/// `r = 2` closed form: `Σ_{i=1}^{n-1} (i)_s = s! binom(n+s-1, n-2)`.
pub fn conj3_r2_closed_form(n: u32, s: u32) -> Sides {
    let lhs = (1..n).map(|i| rising_factorial_eval(&Rational::from(i), s)).sum();
    let rhs = factorial_rat(s) * binom_int(i64::from(n) + i64::from(s) - 1, i64::from(n) - 2);
    (SideValue::Scalar(lhs), SideValue::Scalar(rhs))
}
