//! Formal words in the generators and normal ordering by local rewriting.
//!
//! This is a second, independent route to the normal form: instead of the
//! closed reordering formula it applies `P_a X^a -> X^a P_a - i hbar I_a`
//! and the commutation of distinct generators one adjacent swap at a time.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{minus_i_hbar, OpGen, OpMonomial, OpPoly};
use crate::exact::{GaussianRational, HPoly, Rational};

/// Linear combination of unreduced words with rational weights.
pub type WordSum = BTreeMap<Vec<OpGen>, Rational>;

/// Rank used for sorting: positions, then momenta, then units.
fn class(g: OpGen) -> (u8, usize) {
    match g {
        OpGen::X(a) => (0, a),
        OpGen::P(a) => (1, a),
        OpGen::I(a) => (2, a),
    }
}

fn add(map: &mut BTreeMap<Vec<OpGen>, HPoly>, w: Vec<OpGen>, c: HPoly) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(w.clone()).or_default();
    *e = std::mem::take(e) + c;
    if e.is_zero() {
        map.remove(&w);
    }
}

/// Normal-orders a word by repeated adjacent rewriting.
pub fn normal_order_word(word: &[OpGen]) -> OpPoly {
    let mut pending: BTreeMap<Vec<OpGen>, HPoly> = BTreeMap::new();
    pending.insert(word.to_vec(), HPoly::one());
    let mut out = OpPoly::zero();
    while let Some((w, c)) = pending.pop_first() {
        let unordered = (0..w.len().saturating_sub(1)).find(|&i| {
            class(w[i]) > class(w[i + 1]) || (w[i] == w[i + 1] && matches!(w[i], OpGen::I(_)))
        });
        match unordered {
            None => out.add_term(monomial_of(&w), c),
            Some(pos) => rewrite_at(&mut pending, &w, pos, c),
        }
    }
    out
}

fn rewrite_at(pending: &mut BTreeMap<Vec<OpGen>, HPoly>, w: &[OpGen], pos: usize, c: HPoly) {
    let (l, r) = (w[pos], w[pos + 1]);
    let mut swapped = w.to_vec();
    swapped.swap(pos, pos + 1);
    match (l, r) {
        (OpGen::I(a), OpGen::I(b)) if a == b => {
            let mut merged = w.to_vec();
            merged.remove(pos);
            add(pending, merged, c);
        }
        (OpGen::P(a), OpGen::X(b)) if a == b => {
            add(pending, swapped, c.clone());
            let mut contracted = w[..pos].to_vec();
            contracted.push(OpGen::I(a));
            contracted.extend_from_slice(&w[pos + 2..]);
            add(pending, contracted, c * minus_i_hbar());
        }
        _ => add(pending, swapped, c),
    }
}

fn monomial_of(w: &[OpGen]) -> OpMonomial {
    let mut m = OpMonomial::default();
    for g in w {
        match *g {
            OpGen::X(a) => *m.x.entry(a).or_insert(0) += 1,
            OpGen::P(a) => *m.p.entry(a).or_insert(0) += 1,
            OpGen::I(a) => {
                m.units.insert(a);
            }
        }
    }
    m
}

/// Normal form of a weighted word sum through the rewriting route.
pub fn normal_order_sum(sum: &WordSum) -> OpPoly {
    let mut out = OpPoly::zero();
    for (w, q) in sum {
        out = out.plus(&normal_order_word(w).scale(&HPoly::from(GaussianRational::real(q.clone()))));
    }
    out
}
