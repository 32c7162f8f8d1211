//! Exact scalars and polynomials.
//!
//! Everything above this module works over exact rationals, Gaussian
//! rationals, polynomials in a formal `hbar`, sparse multivariate
//! polynomials and finite Fourier sums. Equality is always structural and
//! exact; no value carries a tolerance.

mod gaussian;
mod hpoly;
pub mod linalg;
mod poly;
mod trig;

use std::fmt;
use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use gaussian::GaussianRational;
pub use hpoly::HPoly;
pub use poly::{poly_arith, vars, MultiPoly, Poly, PolyOp, Vars};
pub use trig::TrigPoly;

/// Arbitrary precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Polynomial with rational coefficients.
pub type RealPoly = Poly<Rational>;

/// Shorthand for the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Coefficient ring usable inside [`Poly`] and [`TrigPoly`].
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Send
    + Sync
{
    fn from_rational(q: Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// Whether the printed form is a sum and needs parentheses when used as
    /// a factor.
    fn is_compound(&self) -> bool {
        false
    }
}

/// Coefficients that contain the imaginary unit and support conjugation.
pub trait ComplexCoeff: Coeff {
    fn conj(&self) -> Self;
    fn from_gaussian(g: GaussianRational) -> Self;
}

impl Coeff for Rational {
    fn from_rational(q: Rational) -> Self {
        q
    }
}

/// Formats a coefficient as a factor, parenthesized when compound.
pub(crate) fn factor_string<C: Coeff>(c: &C) -> String {
    if c.is_compound() {
        format!("({c})")
    } else {
        c.to_string()
    }
}

/// Formats `coeff*body`, dropping a unit coefficient.
pub(crate) fn term_string<C: Coeff>(c: &C, body: &str) -> String {
    if body.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        return body.to_string();
    }
    if (-c.clone()).is_one() {
        return format!("-{body}");
    }
    format!("{}*{}", factor_string(c), body)
}

/// Joins printed terms into a sum, writing `a - b` rather than `a + -b`.
pub(crate) fn join_terms(terms: &[String]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = terms[0].clone();
    for t in &terms[1..] {
        if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

/// Binomial coefficient as a rational.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    Rational::from_integer(acc)
}

/// `n!` as a rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    Rational::from_integer(acc)
}
