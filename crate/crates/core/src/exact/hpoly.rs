use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{join_terms, term_string, Coeff, ComplexCoeff, GaussianRational, Rational};

/// Polynomial in a formal central symbol `hbar` with Gaussian rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HPoly {
    coeffs: BTreeMap<u32, GaussianRational>,
}

impl HPoly {
    /// `c hbar^k`.
    pub fn monomial(c: GaussianRational, k: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Self { coeffs }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn hbar() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    /// Coefficient of `hbar^k`.
    pub fn coeff(&self, k: u32) -> GaussianRational {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &GaussianRational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = BTreeMap::new();
        for (k, v) in &self.coeffs {
            let p = v * c;
            if !p.is_zero() {
                out.insert(*k, p);
            }
        }
        Self { coeffs: out }
    }

    fn add_term(&mut self, k: u32, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_default();
        *e = std::mem::take(e) + c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }
}

impl Add for HPoly {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (k, c) in rhs.coeffs {
            self.add_term(k, c);
        }
        self
    }
}

impl Sub for HPoly {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for HPoly {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            coeffs: self.coeffs.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Mul for HPoly {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = HPoly::default();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &rhs.coeffs {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Zero for HPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for HPoly {
    fn one() -> Self {
        Self::constant(GaussianRational::one())
    }
}

impl Coeff for HPoly {
    fn from_rational(q: Rational) -> Self {
        Self::constant(GaussianRational::real(q))
    }
    fn is_compound(&self) -> bool {
        self.coeffs.len() > 1 || self.coeffs.values().any(|c| c.is_compound())
    }
}

impl ComplexCoeff for HPoly {
    fn conj(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.conj())).collect(),
        }
    }
    fn from_gaussian(g: GaussianRational) -> Self {
        Self::constant(g)
    }
}

impl From<GaussianRational> for HPoly {
    fn from(g: GaussianRational) -> Self {
        Self::constant(g)
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let body = match k {
                    0 => String::new(),
                    1 => "hbar".to_string(),
                    _ => format!("hbar^{k}"),
                };
                term_string(c, &body)
            })
            .collect();
        write!(f, "{}", join_terms(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hbar_square() {
        let h = HPoly::hbar();
        let h2 = h.clone() * h;
        assert_eq!(h2.degree(), Some(2));
        assert_eq!(h2.coeff(2), GaussianRational::one());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = HPoly::hbar() + HPoly::one();
        let b = a.clone() - HPoly::hbar();
        assert_eq!(b, HPoly::one());
        assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn display() {
        let i = GaussianRational::i();
        let p = HPoly::one() - HPoly::monomial(i.scale(&crate::exact::int(2)), 1);
        assert_eq!(p.to_string(), "1 - 2i*hbar");
    }
}
