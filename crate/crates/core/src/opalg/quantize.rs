//! Symmetrized and antisymmetrized quantization of generator words.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};

use super::words::{normal_order_sum, WordSum};
use super::{commutator, minus_i_hbar, word_product, OpGen, OpPoly};
use crate::exact::{binomial, factorial, int, rat, GaussianRational, HPoly, Rational};
use crate::frame::index::sort_sign;

/// Average of the products over all orderings of the word.
pub fn quantize_sym(word: &[OpGen]) -> OpPoly {
    if word.is_empty() {
        return OpPoly::one();
    }
    let orders: Vec<Vec<OpGen>> = word.iter().copied().permutations(word.len()).unique().collect();
    let total = orders.iter().fold(OpPoly::zero(), |acc, w| acc.plus(&word_product(w)));
    total.scale_rational(&(int(1) / int(orders.len() as i64)))
}

/// Signed average of the products over all orderings of the word.
pub fn quantize_antisym(word: &[OpGen]) -> OpPoly {
    if word.is_empty() {
        return OpPoly::one();
    }
    let k = word.len();
    let mut total = OpPoly::zero();
    for perm in (0..k).permutations(k) {
        let w: Vec<OpGen> = perm.iter().map(|&i| word[i]).collect();
        let term = word_product(&w);
        total = if sort_sign(&perm) > 0 { total.plus(&term) } else { total.minus(&term) };
    }
    total.scale_rational(&(int(1) / factorial(k as u64)))
}

/// The two Jordan-rule evaluations of the quartic `p^2 q^2` for a single
/// canonical pair, with and without collapsing the unit.
#[derive(Clone, PartialEq, Debug)]
pub struct GvhReport {
    pub first: OpPoly,
    pub second: OpPoly,
    pub difference: OpPoly,
    pub first_collapsed: OpPoly,
    pub second_collapsed: OpPoly,
    pub difference_collapsed: OpPoly,
}

/// Evaluates `(Q(p^2)Q(q^2) + Q(q^2)Q(p^2)) / 2` and
/// `(Q(p)Q(q) + Q(q)Q(p))^2 / 4`.
pub fn gvh_demo() -> GvhReport {
    let x = OpPoly::generator(OpGen::X(0));
    let p = OpPoly::generator(OpGen::P(0));
    let p2 = p.pow(2);
    let x2 = x.pow(2);
    let first = p2.mul(&x2).plus(&x2.mul(&p2)).scale_rational(&rat(1, 2));
    let sym = p.mul(&x).plus(&x.mul(&p));
    let second = sym.mul(&sym).scale_rational(&rat(1, 4));
    let difference = first.minus(&second);
    GvhReport {
        first_collapsed: first.collapse_units(),
        second_collapsed: second.collapse_units(),
        difference_collapsed: difference.collapse_units(),
        first,
        second,
        difference,
    }
}

/// Outcome of the regrouping check for one word.
#[derive(Clone, PartialEq, Debug)]
pub struct GroupingOutcome {
    pub groupings: usize,
    pub all_equal: bool,
    pub reference: OpPoly,
}

/// Symmetrized word sum for a contiguous block, built bottom-up along a
/// binary bracketing: each node averages all shuffles of its children.
fn shuffle_average(a: &WordSum, b: &WordSum) -> WordSum {
    let mut out = WordSum::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let len = wa.len() + wb.len();
            let weight = ca * cb / binomial(len as u64, wa.len() as u64);
            for slots in (0..len).combinations(wa.len()) {
                let (mut ia, mut ib) = (0, 0);
                let mut w = Vec::with_capacity(len);
                for pos in 0..len {
                    if ia < slots.len() && slots[ia] == pos {
                        w.push(wa[ia]);
                        ia += 1;
                    } else {
                        w.push(wb[ib]);
                        ib += 1;
                    }
                }
                let e = out.entry(w).or_insert_with(Rational::zero);
                *e += weight.clone();
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// All binary bracketings of `word[lo..hi]`, as symmetrized word sums.
fn bracketings(word: &[OpGen], lo: usize, hi: usize) -> Vec<WordSum> {
    if hi - lo == 1 {
        let mut leaf = WordSum::new();
        leaf.insert(vec![word[lo]], Rational::one());
        return vec![leaf];
    }
    let mut out = Vec::new();
    for mid in lo + 1..hi {
        let left = bracketings(word, lo, mid);
        let right = bracketings(word, mid, hi);
        for l in &left {
            for r in &right {
                out.push(shuffle_average(l, r));
            }
        }
    }
    out
}

/// Quantizes the word through every binary grouping of its factors, each
/// evaluated by shuffle-symmetrization and rewriting, and compares every
/// result with the direct permutation average.
pub fn grouping_check(word: &[OpGen]) -> GroupingOutcome {
    let reference = quantize_sym(word);
    if word.is_empty() {
        return GroupingOutcome {
            groupings: 0,
            all_equal: true,
            reference,
        };
    }
    let trees = bracketings(word, 0, word.len());
    let all_equal = trees.iter().all(|t| normal_order_sum(t) == reference);
    GroupingOutcome {
        groupings: trees.len(),
        all_equal,
        reference,
    }
}

/// Linear combination of symmetric products of the classical generators;
/// each key is a sorted multiset of symbols, `X` for `q`, `P` for `pi` and
/// `I` for the unit.
pub type WordCombination = BTreeMap<Vec<OpGen>, Rational>;

/// Classical bracket of two symmetric products of generators, expanded by
/// the Leibniz rule from `{pi_j, q^k} = delta^k_j I_k`.
pub fn word_bracket(f: &[OpGen], g: &[OpGen]) -> WordCombination {
    let mut out = WordCombination::new();
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            let (unit, sign) = match (*a, *b) {
                (OpGen::P(x), OpGen::X(y)) if x == y => (x, 1),
                (OpGen::X(x), OpGen::P(y)) if x == y => (x, -1),
                _ => continue,
            };
            let mut rest: Vec<OpGen> = f.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, s)| *s).collect();
            rest.extend(g.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, s)| *s));
            rest.push(OpGen::I(unit));
            rest.sort();
            let e = out.entry(rest).or_insert_with(Rational::zero);
            *e += int(sign);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Comparison of `[Q(f), Q(g)]` with `-i hbar Q({f, g})`.
#[derive(Clone, PartialEq, Debug)]
pub struct DiracOutcome {
    pub holds: bool,
    pub commutator: OpPoly,
    pub quantized_bracket: OpPoly,
    pub residual: OpPoly,
}

/// Checks the Dirac condition for two symmetric products of generators.
pub fn dirac_check(f: &[OpGen], g: &[OpGen]) -> DiracOutcome {
    let lhs = commutator(&quantize_sym(f), &quantize_sym(g));
    let mut q_bracket = OpPoly::zero();
    for (w, c) in word_bracket(f, g) {
        q_bracket = q_bracket.plus(&quantize_sym(&w).scale_rational(&c));
    }
    let rhs = q_bracket.scale(&minus_i_hbar());
    let residual = lhs.minus(&rhs);
    DiracOutcome {
        holds: residual.is_zero(),
        commutator: lhs,
        quantized_bracket: rhs,
        residual,
    }
}

/// Antisymmetrized quantization of every pair of generators with indices
/// below `n`, as `(word, operator)` rows.
pub fn antisym_table(n: usize) -> Vec<(Vec<OpGen>, OpPoly)> {
    let gens: Vec<OpGen> = (0..n)
        .flat_map(|a| [OpGen::P(a), OpGen::X(a), OpGen::I(a)])
        .collect();
    let mut rows = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i..] {
            let w = vec![*a, *b];
            let q = quantize_antisym(&w);
            rows.push((w, q));
        }
    }
    rows
}

/// `-i hbar / 2` as a coefficient.
pub fn half_minus_i_hbar() -> HPoly {
    HPoly::monomial(GaussianRational::new(Rational::zero(), rat(-1, 2)), 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use OpGen::{I, P, X};

    #[test]
    fn gvh_values() {
        let r = gvh_demo();
        assert_eq!(r.first_collapsed.to_string(), "X1^2*P1^2 - 2i*hbar*X1*P1 - hbar^2");
        assert_eq!(r.second_collapsed.to_string(), "X1^2*P1^2 - 2i*hbar*X1*P1 - 1/4*hbar^2");
        assert_eq!(r.difference_collapsed.to_string(), "-3/4*hbar^2");
    }

    #[test]
    fn quartic_symmetrized() {
        let q = quantize_sym(&[P(0), P(0), X(0), X(0)]);
        assert_eq!(q.to_string(), "X1^2*P1^2 - 2i*hbar*X1*P1*I1 - 1/2*hbar^2*I1");
    }

    #[test]
    fn small_symmetrized_words() {
        assert_eq!(quantize_sym(&[P(0)]), OpPoly::generator(P(0)));
        assert_eq!(quantize_sym(&[P(0), X(0)]), quantize_sym(&[X(0), P(0)]));
    }

    #[test]
    fn antisymmetric_pairs() {
        assert!(quantize_antisym(&[P(0), P(1)]).is_zero());
        assert!(quantize_antisym(&[X(0), X(1)]).is_zero());
        assert!(quantize_antisym(&[P(0), I(1)]).is_zero());
        assert!(quantize_antisym(&[X(0), I(0)]).is_zero());
        assert!(quantize_antisym(&[P(0), X(1)]).is_zero());
        assert_eq!(
            quantize_antisym(&[P(0), X(0)]),
            OpPoly::generator(I(0)).scale(&half_minus_i_hbar())
        );
        assert!(quantize_antisym(&[P(0), X(0), P(0)]).is_zero());
    }

    #[test]
    fn cubic_with_unit_survives() {
        let q = quantize_antisym(&[P(0), X(0), I(0)]);
        assert!(!q.is_zero());
    }

    #[test]
    fn groupings_agree_for_short_words() {
        let out = grouping_check(&[P(0), X(0), P(0), X(0)]);
        assert_eq!(out.groupings, 5);
        assert!(out.all_equal);
    }

    #[test]
    fn dirac_examples() {
        assert!(dirac_check(&[P(0)], &[X(0)]).holds);
        assert!(dirac_check(&[P(0), X(0)], &[P(0), X(0)]).holds);
        let out = dirac_check(&[P(0), P(0)], &[P(0), X(0)]);
        assert!(out.holds, "{}", out.residual);
    }

    #[test]
    fn bracket_of_words() {
        let b = word_bracket(&[P(0), P(0)], &[P(0), X(0)]);
        let mut expect = WordCombination::new();
        expect.insert(vec![P(0), P(0), I(0)], int(2));
        assert_eq!(b, expect);
    }
}
