use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{join_terms, term_string, Coeff, HPoly};
use crate::error::{Error, Result};

/// Ordered list of commuting variable names shared between polynomials.
pub type Vars = Arc<[String]>;

/// Builds a variable set from names.
pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

/// Sparse multivariate polynomial keyed by exponent vectors.
///
/// Invariants: every exponent vector has the arity of `vars`, and no zero
/// coefficient is stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C> {
    vars: Vars,
    terms: BTreeMap<Vec<u32>, C>,
}

/// The general polynomial type with `hbar`-polynomial coefficients.
pub type MultiPoly = Poly<HPoly>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    Neg,
}

/// Checked ring operation. `b` is ignored for [`PolyOp::Neg`].
pub fn poly_arith<C: Coeff>(a: &Poly<C>, b: &Poly<C>, op: PolyOp) -> Result<Poly<C>> {
    match op {
        PolyOp::Add => a.try_add(b),
        PolyOp::Mul => a.try_mul(b),
        PolyOp::Neg => Ok(-a.clone()),
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero(vars: &Vars) -> Self {
        Self {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: C) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, C::one())
    }

    /// The variable at position `idx`.
    pub fn var(vars: &Vars, idx: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Self::monomial(vars, e, C::one())
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(vars, idx))
    }

    pub fn monomial(vars: &Vars, exps: Vec<u32>, c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent arity mismatch");
        let mut p = Self::zero(vars);
        p.add_term(exps, c);
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Largest total degree in the given subset of variables.
    pub fn degree_in(&self, idx: &[usize]) -> u32 {
        self.terms
            .keys()
            .map(|e| idx.iter().map(|&i| e[i]).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exps) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(exps, s);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    fn same_vars(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.same_vars(other) {
            Ok(())
        } else {
            Err(Error::VariableMismatch {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative in the variable at `idx`.
    pub fn diff(&self, idx: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[idx] -= 1;
            out.add_term(e2, c.clone() * C::from_int(e[idx] as i64));
        }
        out
    }

    /// Partial derivative by variable name.
    pub fn diff_var(&self, name: &str) -> Result<Self> {
        let idx = self
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.diff(idx))
    }

    /// Applies `f` to every coefficient, keeping the variable set.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::<D>::zero(&self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Ring homomorphism into `Poly<D>` over `target`: variable `k` maps to
    /// `images[k]` and each coefficient through `lift`.
    pub fn substitute<D: Coeff>(
        &self,
        target: &Vars,
        images: &[Poly<D>],
        lift: impl Fn(&C) -> D,
    ) -> Poly<D> {
        assert_eq!(images.len(), self.vars.len());
        let mut powers: Vec<Vec<Poly<D>>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        let mut out = Poly::<D>::zero(target);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(target, lift(c));
            for (k, &ek) in e.iter().enumerate() {
                if ek == 0 {
                    continue;
                }
                while powers[k].len() <= ek as usize {
                    let next = &powers[k][powers[k].len() - 1] * &images[k];
                    powers[k].push(next);
                }
                term = &term * &powers[k][ek as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Printed monomial such as `q1^2*pi1_2`; empty for the constant.
    pub fn monomial_string(&self, e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                if k == 1 {
                    self.vars[i].clone()
                } else {
                    format!("{}^{}", self.vars[i], k)
                }
            })
            .collect();
        parts.join("*")
    }

    /// Sorted term list in `coeff*monomial` form.
    pub fn term_strings(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let body = self.monomial_string(e);
                if body.is_empty() {
                    c.to_string()
                } else {
                    format!("{}*{}", super::factor_string(c), body)
                }
            })
            .collect()
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| term_string(c, &self.monomial_string(e)))
            .collect();
        write!(f, "{}", join_terms(&terms))
    }
}

impl<'a, C: Coeff> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        self.try_add(rhs).expect("polynomial variable sets differ")
    }
}

impl<'a, C: Coeff> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        self.try_sub(rhs).expect("polynomial variable sets differ")
    }
}

impl<'a, C: Coeff> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        self.try_mul(rhs).expect("polynomial variable sets differ")
    }
}

impl<C: Coeff> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Poly<C>) -> Poly<C> {
        &self + &rhs
    }
}

impl<C: Coeff> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Poly<C>) -> Poly<C> {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            vars: self.vars,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<C: Coeff> Poly<C> {
    /// True when the polynomial is the constant one.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, Rational};
    use num_traits::Zero;
    use proptest::prelude::*;

    type P = Poly<Rational>;

    fn q() -> Vars {
        vars(&["q1", "q2"])
    }

    #[test]
    fn monomial_product() {
        let q1 = P::var(&q(), 0);
        assert_eq!((&q1 * &q1).to_string(), "q1^2");
    }

    #[test]
    fn additive_inverse() {
        let p = &P::var(&q(), 0) + &P::constant(&q(), int(3));
        assert!(poly_arith(&p, &-p.clone(), PolyOp::Add).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let q1 = P::var(&q(), 0);
        let q2 = P::var(&q(), 1);
        let lhs = &(&q1 + &q2) * &(&q1 - &q2);
        let rhs = &(&q1 * &q1) - &(&q2 * &q2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn variable_mismatch_is_error() {
        let a = P::var(&q(), 0);
        let b = P::var(&vars(&["x"]), 0);
        assert!(matches!(
            poly_arith(&a, &b, PolyOp::Mul),
            Err(Error::VariableMismatch { .. })
        ));
    }

    #[test]
    fn derivatives() {
        let q1 = P::var(&q(), 0);
        let q2 = P::var(&q(), 1);
        assert_eq!((&q1 * &q1).diff_var("q1").unwrap(), q1.scale(&int(2)));
        assert!(q1.diff_var("q2").unwrap().is_zero());
        let p = &(&q1 * &q2) + &q1.pow(3);
        let expect = &q2 + &(&q1 * &q1).scale(&int(3));
        assert_eq!(p.diff_var("q1").unwrap(), expect);
        assert!(matches!(p.diff_var("q9"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn substitution_is_homomorphic() {
        let q1 = P::var(&q(), 0);
        let q2 = P::var(&q(), 1);
        let p = &q1 * &q2;
        let t = vars(&["s"]);
        let s = P::var(&t, 0);
        let images = vec![&s + &P::one(&t), &s - &P::one(&t)];
        let got = p.substitute(&t, &images, |c| c.clone());
        assert_eq!(got, &(&s * &s) - &P::one(&t));
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        proptest::collection::vec((0u32..3, 0u32..3, -5i64..6), 0..5).prop_map(|ts| {
            let mut p = P::zero(&q());
            for (a, b, c) in ts {
                p.add_term(vec![a, b], int(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        }

        #[test]
        fn no_zero_terms_stored(a in arb_poly(), b in arb_poly()) {
            let p = &a * &b;
            prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
        }
    }
}
