//! Cartan calculus on coordinate space with polynomial-type coefficients:
//! vector fields, differential forms, exterior derivative, interior
//! product, wedge product and the Lie bracket of fields.
//!
//! Coefficients are anything implementing [`CoordFn`]; real and complex
//! polynomials on `R^N` are the main instances, and the circle bundle uses
//! polynomials with Fourier coefficients in the fibre angle.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{Coeff, Poly};

/// Largest supported form degree.
pub const MAX_DEGREE: usize = 4;

/// Function algebra on a coordinate patch with partial derivatives.
pub trait CoordFn: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn partial(&self, coord: usize) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
}

impl<C: Coeff> CoordFn for Poly<C> {
    fn zero_like(&self) -> Self {
        Poly::zero(self.vars())
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self.clone()
    }
    fn partial(&self, coord: usize) -> Self {
        self.diff(coord)
    }
}

/// Vector field `sum_a X^a d/dx^a`.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyField<F> {
    components: Vec<F>,
}

impl<F: CoordFn> PolyField<F> {
    pub fn new(components: Vec<F>) -> Self {
        Self { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[F] {
        &self.components
    }

    pub fn component(&self, a: usize) -> &F {
        &self.components[a]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.vanishes())
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self::new(self.components.iter().zip(&other.components).map(|(a, b)| a.plus(b)).collect())
    }

    pub fn scaled(&self, f: &F) -> Self {
        Self::new(self.components.iter().map(|a| a.times(f)).collect())
    }

    pub fn negated(&self) -> Self {
        Self::new(self.components.iter().map(|a| a.negated()).collect())
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &F) -> F {
        let mut acc = f.zero_like();
        for (a, xa) in self.components.iter().enumerate() {
            if xa.vanishes() {
                continue;
            }
            acc = acc.plus(&xa.times(&f.partial(a)));
        }
        acc
    }
}

/// Commutator of derivations, `[X,Y]^a = X(Y^a) - Y(X^a)`.
pub fn lie_bracket<F: CoordFn>(x: &PolyField<F>, y: &PolyField<F>) -> Result<PolyField<F>> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    let comps = (0..x.dim())
        .map(|a| x.apply(&y.components[a]).minus(&y.apply(&x.components[a])))
        .collect();
    Ok(PolyField::new(comps))
}

/// Differential `k`-form stored by strictly increasing index tuples.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyForm<F> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, F>,
}

/// Sorts `idx`, returning the permutation sign, or `None` on a repeat.
fn sort_with_sign(idx: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// Prints terms as `(f)*dx1^dx2` with 1-based coordinate indices.
impl<F: CoordFn> fmt::Display for PolyForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(idx, c)| {
                let basis: Vec<String> = idx.iter().map(|k| format!("dx{}", k + 1)).collect();
                if basis.is_empty() {
                    c.to_string()
                } else {
                    format!("({c})*{}", basis.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: CoordFn> PolyForm<F> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The 0-form `f`.
    pub fn function(dim: usize, f: F) -> Self {
        let mut w = Self::zero(dim, 0);
        w.add_term(vec![], f);
        w
    }

    /// `f dx^{i1} ^ ... ^ dx^{ik}` for indices in any order.
    pub fn basis(dim: usize, idx: &[usize], f: F) -> Self {
        let mut w = Self::zero(dim, idx.len());
        w.add_term(idx.to_vec(), f);
        w
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &F)> {
        self.terms.iter()
    }

    /// Coefficient of the sorted tuple, if present.
    pub fn get(&self, idx: &[usize]) -> Option<&F> {
        self.terms.get(idx)
    }

    /// Coefficient for an arbitrary index order with its sign applied.
    pub fn component(&self, idx: &[usize]) -> Option<F> {
        let (sign, sorted) = sort_with_sign(idx)?;
        let f = self.terms.get(&sorted)?;
        Some(if sign < 0 { f.negated() } else { f.clone() })
    }

    /// Adds `f dx^idx`, reordering the indices with sign.
    pub fn add_term(&mut self, idx: Vec<usize>, f: F) {
        assert_eq!(idx.len(), self.degree, "form degree mismatch");
        assert!(idx.iter().all(|&i| i < self.dim), "form index out of range");
        let Some((sign, sorted)) = sort_with_sign(&idx) else {
            return;
        };
        let f = if sign < 0 { f.negated() } else { f };
        if f.vanishes() {
            return;
        }
        match self.terms.remove(&sorted) {
            Some(old) => {
                let s = old.plus(&f);
                if !s.vanishes() {
                    self.terms.insert(sorted, s);
                }
            }
            None => {
                self.terms.insert(sorted, f);
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        if self.degree != other.degree {
            return Err(Error::Unsupported(format!(
                "cannot add forms of degree {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (i, f) in &other.terms {
            out.add_term(i.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.negated())
    }

    pub fn negated(&self) -> Self {
        self.map(|f| f.negated())
    }

    /// Multiplies every coefficient by the function `g`.
    pub fn scaled(&self, g: &F) -> Self {
        self.map(|f| f.times(g))
    }

    /// Applies `h` to each coefficient.
    pub fn map(&self, h: impl Fn(&F) -> F) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (i, f) in &self.terms {
            out.add_term(i.clone(), h(f));
        }
        out
    }

    /// Coefficient array `w_{ab}` of a 2-form, with `zero` in empty slots.
    pub fn matrix(&self, zero: &F) -> Vec<Vec<F>> {
        assert_eq!(self.degree, 2);
        let mut m = vec![vec![zero.clone(); self.dim]; self.dim];
        for (idx, f) in &self.terms {
            m[idx[0]][idx[1]] = f.clone();
            m[idx[1]][idx[0]] = f.negated();
        }
        m
    }
}

/// Exterior derivative.
pub fn ext_d<F: CoordFn>(w: &PolyForm<F>) -> Result<PolyForm<F>> {
    if w.degree >= w.dim || w.degree >= MAX_DEGREE {
        return Err(Error::DegreeOverflow {
            degree: w.degree + 1,
            dim: w.dim,
        });
    }
    let mut out = PolyForm::zero(w.dim, w.degree + 1);
    for (idx, f) in &w.terms {
        for j in 0..w.dim {
            if idx.contains(&j) {
                continue;
            }
            let df = f.partial(j);
            if df.vanishes() {
                continue;
            }
            let mut full = vec![j];
            full.extend_from_slice(idx);
            out.add_term(full, df);
        }
    }
    Ok(out)
}

/// Interior product `X ⌟ w`, inserting `X` into the first slot.
pub fn contract<F: CoordFn>(x: &PolyField<F>, w: &PolyForm<F>) -> Result<PolyForm<F>> {
    if x.dim() != w.dim {
        return Err(Error::DimensionMismatch(x.dim(), w.dim));
    }
    if w.degree == 0 {
        return Err(Error::Unsupported("cannot contract a 0-form".into()));
    }
    let mut out = PolyForm::zero(w.dim, w.degree - 1);
    for (idx, f) in &w.terms {
        for s in 0..idx.len() {
            let xs = &x.components()[idx[s]];
            if xs.vanishes() {
                continue;
            }
            let mut rest = idx.clone();
            rest.remove(s);
            let c = xs.times(f);
            out.add_term(rest, if s % 2 == 0 { c } else { c.negated() });
        }
    }
    Ok(out)
}

/// Wedge product.
pub fn wedge<F: CoordFn>(a: &PolyForm<F>, b: &PolyForm<F>) -> Result<PolyForm<F>> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(a.dim, b.dim));
    }
    let degree = a.degree + b.degree;
    if degree > a.dim || degree > MAX_DEGREE {
        return Err(Error::DegreeOverflow { degree, dim: a.dim });
    }
    let mut out = PolyForm::zero(a.dim, degree);
    for (i, f) in &a.terms {
        for (j, g) in &b.terms {
            let mut idx = i.clone();
            idx.extend_from_slice(j);
            out.add_term(idx, f.times(g));
        }
    }
    Ok(out)
}

/// Lie derivative through the homotopy formula `d(X⌟w) + X⌟dw`.
pub fn lie_derivative<F: CoordFn>(x: &PolyField<F>, w: &PolyForm<F>) -> Result<PolyForm<F>> {
    let first = if w.degree == 0 {
        PolyForm::zero(w.dim, 0)
    } else {
        ext_d(&contract(x, w)?)?
    };
    if w.degree == w.dim {
        return Ok(first);
    }
    let second = contract(x, &ext_d(w)?)?;
    first.plus(&second)
}

/// Lie derivative from the component formula
/// `(L_X w)_I = X(w_I) + sum_s w_{I[s -> a]} d_{i_s} X^a`.
pub fn lie_derivative_components<F: CoordFn>(x: &PolyField<F>, w: &PolyForm<F>) -> Result<PolyForm<F>> {
    if x.dim() != w.dim {
        return Err(Error::DimensionMismatch(x.dim(), w.dim));
    }
    let mut out = PolyForm::zero(w.dim, w.degree);
    for (idx, f) in &w.terms {
        out.add_term(idx.clone(), x.apply(f));
    }
    // Second part: collect over all target tuples J by scanning source terms.
    for (idx, f) in &w.terms {
        for s in 0..idx.len() {
            let a = idx[s];
            for j in 0..w.dim {
                let dxa = x.components()[a].partial(j);
                if dxa.vanishes() {
                    continue;
                }
                let mut target = idx.clone();
                target[s] = j;
                out.add_term(target, f.times(&dxa));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, vars, Rational, Vars};
    use proptest::prelude::*;

    type P = Poly<Rational>;

    fn r4() -> Vars {
        vars(&["q1", "q2", "q3", "q4"])
    }

    fn q(i: usize) -> P {
        P::var(&r4(), i)
    }

    fn one() -> P {
        P::one(&r4())
    }

    fn c(n: i64) -> P {
        P::constant(&r4(), int(n))
    }

    #[test]
    fn d_of_q1_dq2() {
        let w = PolyForm::basis(4, &[1], q(0));
        assert_eq!(ext_d(&w).unwrap(), PolyForm::basis(4, &[0, 1], one()));
    }

    #[test]
    fn d_of_theta_one() {
        let mut th = PolyForm::zero(4, 1);
        th.add_term(vec![1], q(0));
        th.add_term(vec![0], q(1).negated());
        th.add_term(vec![3], q(2));
        th.add_term(vec![2], q(3).negated());
        let mut expect = PolyForm::basis(4, &[0, 1], c(2));
        expect.add_term(vec![2, 3], c(2));
        assert_eq!(ext_d(&th).unwrap(), expect);
    }

    #[test]
    fn d_of_constant_two_form() {
        let w = PolyForm::basis(4, &[0, 1], one());
        assert!(ext_d(&w).unwrap().is_zero());
    }

    #[test]
    fn top_degree_overflows() {
        let w = PolyForm::basis(2, &[0, 1], P::one(&vars(&["a", "b"])));
        assert!(matches!(ext_d(&w), Err(Error::DegreeOverflow { .. })));
    }

    #[test]
    fn contraction_signs() {
        let w = PolyForm::basis(4, &[0, 1], one());
        let d1 = PolyField::new(vec![one(), c(0), c(0), c(0)]);
        let d2 = PolyField::new(vec![c(0), one(), c(0), c(0)]);
        assert_eq!(contract(&d1, &w).unwrap(), PolyForm::basis(4, &[1], one()));
        assert_eq!(contract(&d2, &w).unwrap(), PolyForm::basis(4, &[0], c(-1)));
        let short = PolyField::new(vec![one()]);
        assert!(matches!(contract(&short, &w), Err(Error::DimensionMismatch(..))));
    }

    #[test]
    fn wedge_examples() {
        let d1 = PolyForm::basis(4, &[0], one());
        let d2 = PolyForm::basis(4, &[1], one());
        assert_eq!(wedge(&d1, &d2).unwrap(), wedge(&d2, &d1).unwrap().negated());
        let q1d1 = PolyForm::basis(4, &[0], q(0));
        assert_eq!(wedge(&q1d1, &d2).unwrap(), PolyForm::basis(4, &[0, 1], q(0)));
        let s = d1.plus(&d2).unwrap();
        let t = d1.minus(&d2).unwrap();
        assert_eq!(wedge(&s, &t).unwrap(), PolyForm::basis(4, &[0, 1], c(-2)));
        let full = PolyForm::basis(4, &[0, 1, 2, 3], one());
        assert!(matches!(wedge(&full, &d1), Err(Error::DegreeOverflow { .. })));
    }

    #[test]
    fn bracket_examples() {
        let z = c(0);
        let d1 = PolyField::new(vec![one(), z.clone(), z.clone(), z.clone()]);
        let q1d2 = PolyField::new(vec![z.clone(), q(0), z.clone(), z.clone()]);
        let d2 = PolyField::new(vec![z.clone(), one(), z.clone(), z.clone()]);
        assert_eq!(lie_bracket(&d1, &q1d2).unwrap(), d2);
        assert!(lie_bracket(&q1d2, &q1d2).unwrap().is_zero());
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, 4), -4i64..5), 0..4).prop_map(|ts| {
            let mut p = P::zero(&r4());
            for (e, c) in ts {
                if e.iter().sum::<u32>() <= 3 {
                    p.add_term(e, int(c));
                }
            }
            p
        })
    }

    fn arb_field() -> impl Strategy<Value = PolyField<P>> {
        proptest::collection::vec(arb_poly(), 4).prop_map(PolyField::new)
    }

    fn arb_form(k: usize) -> impl Strategy<Value = PolyForm<P>> {
        proptest::collection::vec((proptest::sample::subsequence(vec![0usize, 1, 2, 3], k), arb_poly()), 0..3)
            .prop_map(move |ts| {
                let mut w = PolyForm::zero(4, k);
                for (idx, f) in ts {
                    w.add_term(idx, f);
                }
                w
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn d_squared_vanishes(w0 in arb_form(0), w1 in arb_form(1), w2 in arb_form(2)) {
            prop_assert!(ext_d(&ext_d(&w0).unwrap()).unwrap().is_zero());
            prop_assert!(ext_d(&ext_d(&w1).unwrap()).unwrap().is_zero());
            prop_assert!(ext_d(&ext_d(&w2).unwrap()).unwrap().is_zero());
        }

        #[test]
        fn d_is_an_antiderivation(a in arb_form(1), b in arb_form(1)) {
            let lhs = ext_d(&wedge(&a, &b).unwrap()).unwrap();
            let rhs = wedge(&ext_d(&a).unwrap(), &b).unwrap()
                .minus(&wedge(&a, &ext_d(&b).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn contraction_is_an_antiderivation(x in arb_field(), a in arb_form(1), b in arb_form(2)) {
            let lhs = contract(&x, &wedge(&a, &b).unwrap()).unwrap();
            let ia = contract(&x, &a).unwrap().get(&[]).cloned().unwrap_or_else(|| c(0));
            let rhs = b.scaled(&ia).minus(&wedge(&a, &contract(&x, &b).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn cartan_formula_matches_components(x in arb_field(), w1 in arb_form(1), w2 in arb_form(2), w4 in arb_form(4)) {
            prop_assert_eq!(lie_derivative(&x, &w1).unwrap(), lie_derivative_components(&x, &w1).unwrap());
            prop_assert_eq!(lie_derivative(&x, &w2).unwrap(), lie_derivative_components(&x, &w2).unwrap());
            prop_assert_eq!(lie_derivative(&x, &w4).unwrap(), lie_derivative_components(&x, &w4).unwrap());
        }

        #[test]
        fn bracket_contraction_identity(x in arb_field(), y in arb_field(), w in arb_form(2)) {
            // i_[X,Y] = [L_X, i_Y]
            let lhs = contract(&lie_bracket(&x, &y).unwrap(), &w).unwrap();
            let rhs = lie_derivative(&x, &contract(&y, &w).unwrap()).unwrap()
                .minus(&contract(&y, &lie_derivative(&x, &w).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn jacobi(x in arb_field(), y in arb_field(), z in arb_field()) {
            let a = lie_bracket(&x, &lie_bracket(&y, &z).unwrap()).unwrap();
            let b = lie_bracket(&y, &lie_bracket(&z, &x).unwrap()).unwrap();
            let cc = lie_bracket(&z, &lie_bracket(&x, &y).unwrap()).unwrap();
            prop_assert!(a.plus(&b).plus(&cc).is_zero());
        }
    }
}
