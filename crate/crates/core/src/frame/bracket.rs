//! The graded symmetric Poisson bracket.

use std::collections::BTreeMap;

use super::field::{hamiltonian_field, HamiltonianField};
use super::index::{difference, leading_block_weight, multisets, orderings, sub_multisets};
use super::{FrameObservable, Symmetry};
use crate::error::{Error, Result};
use crate::exact::{factorial, RealPoly};

/// `{f, g} = p! Sym[X_f^I (g^J)]` for a given representative `X_f`.
pub fn bracket_with_field(xf: &HamiltonianField, g: &FrameObservable) -> Result<FrameObservable> {
    if xf.space() != g.space() {
        return Err(Error::DimensionMismatch(xf.space().n(), g.n()));
    }
    if g.symmetry() != Symmetry::Sym {
        return Err(Error::SymmetryMismatch("bracket needs symmetric observables".into()));
    }
    let space = g.space();
    let n = space.n();
    let (p, q) = (xf.rank(), g.rank());
    let r = p + q - 1;
    let nvars = space.vars().len();

    let partials: BTreeMap<Vec<usize>, Vec<RealPoly>> = multisets(n, q)
        .into_iter()
        .map(|idx| {
            let c = g.component(&idx);
            let ds = (0..nvars).map(|v| c.diff(v)).collect();
            (idx, ds)
        })
        .collect();

    let pf = factorial(p as u64);
    let mut out = FrameObservable::zero(space, r, Symmetry::Sym);
    for whole in multisets(n, r) {
        let mut acc = space.zero();
        for head_set in sub_multisets(&whole, p - 1) {
            let tail = difference(&whole, &head_set);
            let ds = &partials[&tail];
            if ds.iter().all(|d| d.is_zero()) {
                continue;
            }
            for head in orderings(&head_set) {
                let term = xf.apply_to_partials(&head, ds);
                if term.is_zero() {
                    continue;
                }
                let w = leading_block_weight(&whole, &head) * pf.clone();
                acc = &acc + &term.scale(&w);
            }
        }
        out.set(&whole, acc)?;
    }
    Ok(out)
}

/// Bracket of two allowable symmetric observables of ranks `p` and `q`,
/// giving rank `p + q - 1`.
pub fn poisson_bracket(f: &FrameObservable, g: &FrameObservable) -> Result<FrameObservable> {
    if f.space() != g.space() {
        return Err(Error::DimensionMismatch(f.n(), g.n()));
    }
    let xf = hamiltonian_field(f)?;
    hamiltonian_field(g)?;
    bracket_with_field(&xf, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::frame::{sym_product, FrameSpace, Generator};

    fn gen(s: &FrameSpace, g: Generator) -> FrameObservable {
        FrameObservable::generator(s, g).unwrap()
    }

    #[test]
    fn canonical_pairs() {
        for n in 2..=3 {
            let s = FrameSpace::new(n).unwrap();
            for j in 1..=n {
                for k in 1..=n {
                    let b = poisson_bracket(&gen(&s, Generator::PiHat(j)), &gen(&s, Generator::QHat(k))).unwrap();
                    let expect = if j == k {
                        gen(&s, Generator::IHat(k))
                    } else {
                        FrameObservable::zero(&s, 1, Symmetry::Sym)
                    };
                    assert_eq!(b, expect);
                }
            }
        }
    }

    #[test]
    fn positions_commute() {
        let s = FrameSpace::new(2).unwrap();
        let b = poisson_bracket(&gen(&s, Generator::QHat(1)), &gen(&s, Generator::QHat(2))).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn quadratic_momentum_bracket() {
        let s = FrameSpace::new(2).unwrap();
        let pi = gen(&s, Generator::PiHat(1));
        let q = gen(&s, Generator::QHat(1));
        let i = gen(&s, Generator::IHat(1));
        let pp = sym_product(&pi, &pi).unwrap();
        let pq = sym_product(&pi, &q).unwrap();
        let lhs = poisson_bracket(&pp, &pq).unwrap();
        let rhs = sym_product(&pp, &i).unwrap().scale(&int(2));
        assert_eq!(lhs, rhs);
    }
}
