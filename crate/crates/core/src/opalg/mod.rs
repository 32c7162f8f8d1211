//! Operator algebra generated by positions `X^a`, momenta `P_a` and
//! idempotent central units `I_a`, with `[P_a, X^b] = -i hbar delta^b_a I_a`.
//!
//! Every [`OpPoly`] is kept in normal order: positions left, momenta right,
//! units trailing.

mod quantize;
mod words;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{binomial, factorial, join_terms, term_string, Coeff, GaussianRational, HPoly, Rational};

pub use quantize::{
    antisym_table, dirac_check, gvh_demo, grouping_check, half_minus_i_hbar, quantize_antisym, quantize_sym, word_bracket, DiracOutcome,
    GroupingOutcome, GvhReport, WordCombination,
};
pub use words::{normal_order_word, WordSum};

/// A single generator; indices are 0-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum OpGen {
    X(usize),
    P(usize),
    I(usize),
}

impl fmt::Display for OpGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpGen::X(a) => write!(f, "X{}", a + 1),
            OpGen::P(a) => write!(f, "P{}", a + 1),
            OpGen::I(a) => write!(f, "I{}", a + 1),
        }
    }
}

/// Normal-ordered monomial `prod X^{x} prod P^{p} prod I`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct OpMonomial {
    x: BTreeMap<usize, u32>,
    p: BTreeMap<usize, u32>,
    units: BTreeSet<usize>,
}

impl OpMonomial {
    pub fn generator(g: OpGen) -> Self {
        let mut m = Self::default();
        match g {
            OpGen::X(a) => {
                m.x.insert(a, 1);
            }
            OpGen::P(a) => {
                m.p.insert(a, 1);
            }
            OpGen::I(a) => {
                m.units.insert(a);
            }
        }
        m
    }

    pub fn degree(&self) -> u32 {
        self.x.values().sum::<u32>() + self.p.values().sum::<u32>()
    }

    pub fn x_power(&self, a: usize) -> u32 {
        self.x.get(&a).copied().unwrap_or(0)
    }

    pub fn p_power(&self, a: usize) -> u32 {
        self.p.get(&a).copied().unwrap_or(0)
    }

    pub fn units(&self) -> &BTreeSet<usize> {
        &self.units
    }

    /// The word spelled by this monomial.
    pub fn word(&self) -> Vec<OpGen> {
        let mut w = Vec::new();
        for (&a, &k) in &self.x {
            w.extend(std::iter::repeat_n(OpGen::X(a), k as usize));
        }
        for (&a, &k) in &self.p {
            w.extend(std::iter::repeat_n(OpGen::P(a), k as usize));
        }
        w.extend(self.units.iter().map(|&a| OpGen::I(a)));
        w
    }

    fn label(&self) -> String {
        let mut parts = Vec::new();
        for (&a, &k) in &self.x {
            parts.push(power_label("X", a, k));
        }
        for (&a, &k) in &self.p {
            parts.push(power_label("P", a, k));
        }
        for &a in &self.units {
            parts.push(format!("I{}", a + 1));
        }
        parts.join("*")
    }
}

fn power_label(sym: &str, a: usize, k: u32) -> String {
    if k == 1 {
        format!("{sym}{}", a + 1)
    } else {
        format!("{sym}{}^{k}", a + 1)
    }
}

// Higher degree first, then lexicographic, so printed sums lead with the
// principal symbol.
impl Ord for OpMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.x.cmp(&self.x))
            .then_with(|| other.p.cmp(&self.p))
            .then_with(|| self.units.cmp(&other.units))
    }
}

impl PartialOrd for OpMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Linear combination of normal-ordered monomials with `hbar`-polynomial
/// coefficients.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct OpPoly {
    terms: BTreeMap<OpMonomial, HPoly>,
}

impl OpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(OpMonomial::default(), HPoly::one())
    }

    pub fn generator(g: OpGen) -> Self {
        Self::term(OpMonomial::generator(g), HPoly::one())
    }

    pub fn term(m: OpMonomial, c: HPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn scalar(c: HPoly) -> Self {
        Self::term(OpMonomial::default(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpMonomial, &HPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &OpMonomial) -> HPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: OpMonomial, c: HPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale(&HPoly::from(GaussianRational::from_int(-1))))
    }

    pub fn scale(&self, c: &HPoly) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&HPoly::from(GaussianRational::real(q.clone())))
    }

    /// Product followed by normal ordering.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca.clone() * cb.clone();
                for (m, k) in mul_monomials(ma, mb) {
                    out.add_term(m, k * c.clone());
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Setting every unit to the identity, as for a single symplectic pair.
    pub fn collapse_units(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut m = m.clone();
            m.units.clear();
            out.add_term(m, c.clone());
        }
        out
    }

    /// Sorted `coeff*monomial` strings.
    pub fn term_strings(&self) -> Vec<String> {
        self.terms.iter().map(|(m, c)| term_string(c, &m.label())).collect()
    }
}

/// `[a, b] = ab - ba`.
pub fn commutator(a: &OpPoly, b: &OpPoly) -> OpPoly {
    a.mul(b).minus(&b.mul(a))
}

/// `(-i hbar)^j`.
fn minus_i_hbar_pow(j: u32) -> HPoly {
    let base = HPoly::monomial(GaussianRational::imag_int(-1), 1);
    (0..j).fold(HPoly::one(), |acc, _| acc * base.clone())
}

/// Normal-orders `ma * mb` with the closed form
/// `P^m X^k = sum_j j! C(m,j) C(k,j) (-i hbar)^j X^{k-j} P^{m-j} I^{[j>0]}`
/// applied independently for each index.
fn mul_monomials(ma: &OpMonomial, mb: &OpMonomial) -> Vec<(OpMonomial, HPoly)> {
    // Indices where momenta of the left factor meet positions of the right.
    let shared: Vec<usize> = ma.p.keys().filter(|a| mb.x.contains_key(a)).copied().collect();
    let mut base = OpMonomial::default();
    for (m, k) in [&ma.x, &mb.x].into_iter().flatten() {
        *base.x.entry(*m).or_insert(0) += k;
    }
    for (m, k) in [&ma.p, &mb.p].into_iter().flatten() {
        *base.p.entry(*m).or_insert(0) += k;
    }
    base.units = ma.units.union(&mb.units).copied().collect();

    let mut out = vec![(base, HPoly::one())];
    for a in shared {
        let m = ma.p[&a];
        let k = mb.x[&a];
        let mut next = Vec::new();
        for (mono, c) in &out {
            for j in 0..=m.min(k) {
                let w = factorial(j as u64) * binomial(m as u64, j as u64) * binomial(k as u64, j as u64);
                let coeff = c.clone() * minus_i_hbar_pow(j) * HPoly::from(GaussianRational::real(w));
                let mut mono = mono.clone();
                reduce(&mut mono.x, a, j);
                reduce(&mut mono.p, a, j);
                if j > 0 {
                    mono.units.insert(a);
                }
                next.push((mono, coeff));
            }
        }
        out = next;
    }
    out
}

fn reduce(map: &mut BTreeMap<usize, u32>, a: usize, j: u32) {
    let e = map.get_mut(&a).expect("present");
    *e -= j;
    if *e == 0 {
        map.remove(&a);
    }
}

impl fmt::Display for OpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join_terms(&self.term_strings()))
    }
}

/// `-i hbar` as a coefficient.
pub fn minus_i_hbar() -> HPoly {
    minus_i_hbar_pow(1)
}

/// Normalizes a list of generators into an operator by multiplication.
pub fn word_product(word: &[OpGen]) -> OpPoly {
    word.iter().fold(OpPoly::one(), |acc, g| acc.mul(&OpPoly::generator(*g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Coeff;

    fn x() -> OpPoly {
        OpPoly::generator(OpGen::X(0))
    }
    fn p() -> OpPoly {
        OpPoly::generator(OpGen::P(0))
    }

    #[test]
    fn canonical_commutator() {
        let c = commutator(&p(), &x());
        assert_eq!(c, OpPoly::generator(OpGen::I(0)).scale(&minus_i_hbar()));
        assert!(commutator(&p(), &OpPoly::generator(OpGen::X(1))).is_zero());
    }

    #[test]
    fn simple_products() {
        assert_eq!(p().mul(&x()).to_string(), "X1*P1 - i*hbar*I1");
        assert_eq!(x().mul(&p()).to_string(), "X1*P1");
        assert_eq!(
            word_product(&[OpGen::P(0), OpGen::P(0), OpGen::X(0), OpGen::X(0)]).to_string(),
            "X1^2*P1^2 - 4i*hbar*X1*P1*I1 - 2*hbar^2*I1"
        );
    }

    #[test]
    fn commutator_with_product() {
        let xp = x().mul(&p());
        let expect = p().mul(&OpPoly::generator(OpGen::I(0))).scale(&minus_i_hbar());
        assert_eq!(commutator(&p(), &xp), expect);
    }

    #[test]
    fn units_are_idempotent_and_central() {
        let i = OpPoly::generator(OpGen::I(0));
        assert_eq!(i.mul(&i), i);
        assert!(commutator(&i, &p()).is_zero());
        assert!(commutator(&i, &x()).is_zero());
        let h = HPoly::from_int(3);
        assert_eq!(i.scale(&h).collapse_units(), OpPoly::scalar(h));
    }
}
