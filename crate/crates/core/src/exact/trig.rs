use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{join_terms, rat, term_string, Coeff, ComplexCoeff, GaussianRational, Rational};

/// Finite Fourier sum `sum_m c_m e^{i m phi}`.
///
/// The coefficient ring defaults to Gaussian rationals; operator states use
/// [`super::HPoly`] coefficients so that `hbar` can appear, and nesting a
/// `TrigPoly` inside another gives functions of two angles.
#[derive(Clone, PartialEq, Debug)]
pub struct TrigPoly<C = GaussianRational> {
    modes: BTreeMap<i64, C>,
}

impl<C: ComplexCoeff> Default for TrigPoly<C> {
    fn default() -> Self {
        Self {
            modes: BTreeMap::new(),
        }
    }
}

impl<C: ComplexCoeff> TrigPoly<C> {
    /// `c e^{i m phi}`.
    pub fn mode(m: i64, c: C) -> Self {
        let mut modes = BTreeMap::new();
        if !c.is_zero() {
            modes.insert(m, c);
        }
        Self { modes }
    }

    pub fn constant(c: C) -> Self {
        Self::mode(0, c)
    }

    /// `e^{i m phi}`.
    pub fn exp(m: i64) -> Self {
        Self::mode(m, C::one())
    }

    /// `cos(m phi) = (e^{imφ} + e^{-imφ}) / 2`.
    pub fn cos(m: i64) -> Self {
        let half = C::from_rational(rat(1, 2));
        Self::mode(m, half.clone()) + Self::mode(-m, half)
    }

    /// `sin(m phi) = (e^{imφ} - e^{-imφ}) / 2i`.
    pub fn sin(m: i64) -> Self {
        let c = C::from_gaussian(GaussianRational::new(Rational::zero(), rat(-1, 2)));
        Self::mode(m, c.clone()) + Self::mode(-m, -c)
    }

    pub fn coeff(&self, m: i64) -> C {
        self.modes.get(&m).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> {
        self.modes.iter().map(|(m, c)| (*m, c))
    }

    pub fn max_abs_mode(&self) -> i64 {
        self.modes.keys().map(|m| m.abs()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::default();
        for (m, v) in &self.modes {
            out.add_mode(*m, v.clone() * c.clone());
        }
        out
    }

    pub fn add_mode(&mut self, m: i64, c: C) {
        if c.is_zero() {
            return;
        }
        match self.modes.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.modes.insert(m, s);
                }
            }
            None => {
                self.modes.insert(m, c);
            }
        }
    }

    /// Derivative in `phi`: mode `m` picks up `i m`.
    pub fn diff(&self) -> Self {
        let mut out = Self::default();
        for (m, c) in &self.modes {
            out.add_mode(*m, C::from_gaussian(GaussianRational::imag_int(*m)) * c.clone());
        }
        out
    }

    /// Complex conjugate as a function of real `phi`.
    pub fn conj(&self) -> Self {
        let mut out = Self::default();
        for (m, c) in &self.modes {
            out.add_mode(-m, c.conj());
        }
        out
    }

    /// `c_{-m} = conj(c_m)` for every mode.
    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn real_part(&self) -> Self {
        (self.clone() + self.conj()).scale(&C::from_rational(rat(1, 2)))
    }

    pub fn imag_part(&self) -> Self {
        let c = C::from_gaussian(GaussianRational::new(Rational::zero(), rat(-1, 2)));
        (self.clone() - self.conj()).scale(&c)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<D: ComplexCoeff>(&self, f: impl Fn(&C) -> D) -> TrigPoly<D> {
        let mut out = TrigPoly::<D>::default();
        for (m, c) in &self.modes {
            out.add_mode(*m, f(c));
        }
        out
    }
}

impl<C: ComplexCoeff> Add for TrigPoly<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.modes {
            self.add_mode(m, c);
        }
        self
    }
}

impl<C: ComplexCoeff> Sub for TrigPoly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: ComplexCoeff> Neg for TrigPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            modes: self.modes.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<C: ComplexCoeff> Mul for TrigPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::default();
        for (a, ca) in &self.modes {
            for (b, cb) in &rhs.modes {
                out.add_mode(a + b, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: ComplexCoeff> Zero for TrigPoly<C> {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.modes.is_empty()
    }
}

impl<C: ComplexCoeff> One for TrigPoly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: ComplexCoeff> Coeff for TrigPoly<C> {
    fn from_rational(q: Rational) -> Self {
        Self::constant(C::from_rational(q))
    }
    fn is_compound(&self) -> bool {
        self.modes.len() > 1 || self.modes.values().any(|c| c.is_compound())
    }
}

impl<C: ComplexCoeff> ComplexCoeff for TrigPoly<C> {
    fn conj(&self) -> Self {
        TrigPoly::conj(self)
    }
    fn from_gaussian(g: GaussianRational) -> Self {
        Self::constant(C::from_gaussian(g))
    }
}

impl<C: ComplexCoeff> fmt::Display for TrigPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .modes
            .iter()
            .map(|(m, c)| {
                let body = match m {
                    0 => String::new(),
                    1 => "e^(i*phi)".to_string(),
                    -1 => "e^(-i*phi)".to_string(),
                    _ => format!("e^({m}i*phi)"),
                };
                term_string(c, &body)
            })
            .collect();
        write!(f, "{}", join_terms(&terms))
    }
}
