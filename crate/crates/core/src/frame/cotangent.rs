//! Projection of symmetric observables to functions on the cotangent
//! bundle, and the canonical bracket there.

use num_traits::Zero;

use super::field::hamiltonian_field;
use super::index::{multisets, ordering_count};
use super::{FrameObservable, Symmetry};
use crate::error::{Error, Result};
use crate::exact::{int, vars, Rational, RealPoly, Vars};

/// Variables `q1..qn, p1..pn`.
pub fn cotangent_vars(n: usize) -> Vars {
    let names: Vec<String> = (1..=n)
        .map(|a| format!("q{a}"))
        .chain((1..=n).map(|a| format!("p{a}")))
        .collect();
    vars(&names)
}

/// Contracts every value index of `f` with the covector `alpha` and
/// rewrites the momenta through `p_j = alpha_i pi^i_j`.
///
/// The rewrite solves for `pi^k_j` with the first `k` having
/// `alpha_k != 0`; the result must then be free of the remaining momenta,
/// which holds for every allowable observable.
pub fn project_to_cotangent(f: &FrameObservable, alpha: &[Rational]) -> Result<RealPoly> {
    let space = f.space();
    let n = space.n();
    if alpha.len() != n {
        return Err(Error::DimensionMismatch(alpha.len(), n));
    }
    if f.symmetry() != Symmetry::Sym {
        return Err(Error::SymmetryMismatch("projection needs a symmetric observable".into()));
    }
    let Some(k0) = alpha.iter().position(|a| !a.is_zero()) else {
        return Err(Error::ZeroCovector);
    };
    hamiltonian_field(f)?;

    let mut contracted = space.zero();
    for idx in multisets(n, f.rank()) {
        let c = f.component(&idx);
        if c.is_zero() {
            continue;
        }
        let w = idx.iter().fold(ordering_count(&idx), |acc, &i| acc * alpha[i].clone());
        contracted = &contracted + &c.scale(&w);
    }

    // Work in q, p and the momenta pi^i_j with i != k0.
    let mut names: Vec<String> = cotangent_vars(n).iter().cloned().collect();
    let mut spare = Vec::new();
    for i in (0..n).filter(|&i| i != k0) {
        for j in 0..n {
            spare.push((i, j, names.len()));
            names.push(format!("pi{}_{}", i + 1, j + 1));
        }
    }
    let work = vars(&names);
    let mut images = vec![RealPoly::zero(&work); space.vars().len()];
    for a in 0..n {
        images[space.q_index(a)] = RealPoly::var(&work, a);
    }
    for &(i, j, v) in &spare {
        images[space.pi_index(i, j)] = RealPoly::var(&work, v);
    }
    let inv = int(1) / alpha[k0].clone();
    for j in 0..n {
        let mut e = RealPoly::var(&work, n + j);
        for &(i, jj, v) in &spare {
            if jj == j && !alpha[i].is_zero() {
                e = &e - &RealPoly::var(&work, v).scale(&alpha[i]);
            }
        }
        images[space.pi_index(k0, j)] = e.scale(&inv);
    }
    let rewritten = contracted.substitute(&work, &images, |c| c.clone());
    let spare_idx: Vec<usize> = spare.iter().map(|s| s.2).collect();
    if rewritten.degree_in(&spare_idx) > 0 {
        return Err(Error::NotAllowable(
            "projection depends on momenta beyond the contraction with alpha".into(),
        ));
    }
    let target = cotangent_vars(n);
    let back: Vec<RealPoly> = (0..work.len())
        .map(|v| {
            if v < 2 * n {
                RealPoly::var(&target, v)
            } else {
                RealPoly::zero(&target)
            }
        })
        .collect();
    Ok(rewritten.substitute(&target, &back, |c| c.clone()))
}

/// Canonical bracket `sum_j (da/dp_j db/dq^j - da/dq^j db/dp_j)`.
pub fn cotangent_bracket(a: &RealPoly, b: &RealPoly) -> Result<RealPoly> {
    let n2 = a.nvars();
    if !n2.is_multiple_of(2) {
        return Err(Error::Unsupported("cotangent variables come in (q, p) pairs".into()));
    }
    let n = n2 / 2;
    if a.vars() != b.vars() {
        return Err(Error::VariableMismatch {
            left: a.vars().to_vec(),
            right: b.vars().to_vec(),
        });
    }
    let mut acc = RealPoly::zero(a.vars());
    for j in 0..n {
        let t1 = &a.diff(n + j) * &b.diff(j);
        let t2 = &a.diff(j) * &b.diff(n + j);
        acc = &acc + &(&t1 - &t2);
    }
    Ok(acc)
}
