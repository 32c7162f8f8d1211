//! Hamiltonian vector fields of symmetric observables.

use std::collections::BTreeMap;

use itertools::Itertools;

use super::index::{multisets, remove_one, sorted, tuples};
use super::{index_label, FrameObservable, FrameSpace, Symmetry};
use crate::error::{Error, Result};
use crate::exact::{factorial, int, Rational, RealPoly};

/// Tensor-valued vector field `X^I = X^{Ic} d/dq^c + X^{Ia}_b d/dpi^a_b`
/// attached to a rank-`p` observable, with `I` running over `p-1` indices.
///
/// The position part is keyed by the sorted tuple `I` and `c`. The momentum
/// part is keyed by the ordered tuple `(I, a)` and `b`, so representatives
/// that are not symmetric in `(I, a)` can be expressed.
#[derive(Clone, PartialEq, Debug)]
pub struct HamiltonianField {
    space: FrameSpace,
    rank: usize,
    q_part: BTreeMap<(Vec<usize>, usize), RealPoly>,
    pi_part: BTreeMap<(Vec<usize>, usize), RealPoly>,
}

impl HamiltonianField {
    pub fn zero(space: &FrameSpace, rank: usize) -> Self {
        Self {
            space: space.clone(),
            rank,
            q_part: BTreeMap::new(),
            pi_part: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.q_part.is_empty() && self.pi_part.is_empty()
    }

    pub fn space(&self) -> &FrameSpace {
        &self.space
    }

    /// `X^{Ic}` for `I` in any order.
    pub fn q_component(&self, idx: &[usize], c: usize) -> RealPoly {
        self.q_part
            .get(&(sorted(idx), c))
            .cloned()
            .unwrap_or_else(|| self.space.zero())
    }

    /// `X^{I a}_b`, where `full` is the ordered tuple `(I, a)`.
    pub fn pi_component(&self, full: &[usize], b: usize) -> RealPoly {
        self.pi_part
            .get(&(full.to_vec(), b))
            .cloned()
            .unwrap_or_else(|| self.space.zero())
    }

    pub fn q_part(&self) -> impl Iterator<Item = (&(Vec<usize>, usize), &RealPoly)> {
        self.q_part.iter()
    }

    pub fn pi_part(&self) -> impl Iterator<Item = (&(Vec<usize>, usize), &RealPoly)> {
        self.pi_part.iter()
    }

    fn insert(map: &mut BTreeMap<(Vec<usize>, usize), RealPoly>, key: (Vec<usize>, usize), v: RealPoly) {
        let s = match map.remove(&key) {
            Some(old) => &old + &v,
            None => v,
        };
        if !s.is_zero() {
            map.insert(key, s);
        }
    }

    /// Adds `v` to the momentum component at the ordered tuple `full`.
    pub fn add_pi(&mut self, full: Vec<usize>, b: usize, v: RealPoly) {
        Self::insert(&mut self.pi_part, (full, b), v);
    }

    /// Adds `v` to the position component at `idx`.
    pub fn add_q(&mut self, idx: &[usize], c: usize, v: RealPoly) {
        Self::insert(&mut self.q_part, (sorted(idx), c), v);
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.space != other.space || self.rank != other.rank {
            return Err(Error::DimensionMismatch(self.rank, other.rank));
        }
        let mut out = self.clone();
        for ((k, c), v) in &other.q_part {
            out.add_q(k, *c, v.clone());
        }
        for ((k, b), v) in &other.pi_part {
            out.add_pi(k.clone(), *b, v.clone());
        }
        Ok(out)
    }

    /// The field component `X^I` applied to a function, given the list of
    /// its partial derivatives in every frame variable.
    pub fn apply_to_partials(&self, head: &[usize], partials: &[RealPoly]) -> RealPoly {
        let n = self.space.n();
        let mut acc = self.space.zero();
        for c in 0..n {
            let d = &partials[self.space.q_index(c)];
            if d.is_zero() {
                continue;
            }
            let x = self.q_component(head, c);
            if !x.is_zero() {
                acc = &acc + &(&x * d);
            }
        }
        let mut full = head.to_vec();
        full.push(0);
        for a in 0..n {
            *full.last_mut().unwrap() = a;
            for b in 0..n {
                let d = &partials[self.space.pi_index(a, b)];
                if d.is_zero() {
                    continue;
                }
                let x = self.pi_component(&full, b);
                if !x.is_zero() {
                    acc = &acc + &(&x * d);
                }
            }
        }
        acc
    }

    /// Whether this field solves the homogeneous structure equation: no
    /// position part and a momentum part with vanishing total symmetrization.
    pub fn is_kernel(&self) -> bool {
        if !self.q_part.is_empty() {
            return false;
        }
        let n = self.space.n();
        multisets(n, self.rank).into_iter().all(|whole| {
            (0..n).all(|b| {
                let total = whole
                    .iter()
                    .copied()
                    .permutations(whole.len())
                    .fold(self.space.zero(), |acc, t| &acc + &self.pi_component(&t, b));
                total.is_zero()
            })
        })
    }

    /// Checks `df = -p! X^(I' ⌟ dtheta^k)` component by component, returning
    /// the first violated equation.
    pub fn check_structure_equation(&self, f: &FrameObservable) -> Result<()> {
        let n = self.space.n();
        let p = self.rank;
        // With the sum taken over all p! orderings, the p! prefactor and the
        // symmetrization weight 1/p! cancel.
        for whole in multisets(n, p) {
            let fk = f.component(&whole);
            let perms: Vec<Vec<usize>> = whole.iter().copied().permutations(p).collect();
            for j in 0..n {
                // Position derivatives pair with the momentum part.
                let mut sym = self.space.zero();
                for t in &perms {
                    sym = &sym + &self.pi_component(t, j);
                }
                let rhs = -sym;
                if fk.diff(self.space.q_index(j)) != rhs {
                    return Err(Error::NotAllowable(format!(
                        "d/dq{} of component {} does not match the field",
                        j + 1,
                        index_label(&whole)
                    )));
                }
            }
            for b in 0..n {
                for c in 0..n {
                    let mut sym = self.space.zero();
                    for t in &perms {
                        if t[p - 1] == b {
                            sym = &sym + &self.q_component(&t[..p - 1], c);
                        }
                    }
                    let rhs = sym;
                    if fk.diff(self.space.pi_index(b, c)) != rhs {
                        return Err(Error::NotAllowable(format!(
                            "d/dpi{}_{} of component {} does not match the field",
                            b + 1,
                            c + 1,
                            index_label(&whole)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Solves the structure equation for a symmetric observable.
///
/// The momentum part is the totally symmetric choice
/// `X^{Ia}_j = -(1/p!) df^{Ia}/dq^j`. The position part is pinned by the
/// momentum derivatives: each equation
/// `df^K/dpi^b_c = (p-1)! * mult_K(b) * X^{K-b, c}` either fixes an unknown
/// or must vanish, and every unknown must receive the same value from all
/// equations that mention it.
pub fn hamiltonian_field(f: &FrameObservable) -> Result<HamiltonianField> {
    if f.symmetry() != Symmetry::Sym {
        return Err(Error::SymmetryMismatch("Hamiltonian fields need a symmetric observable".into()));
    }
    let p = f.rank();
    if p == 0 {
        return Err(Error::Unsupported("rank-0 observables have no Hamiltonian field".into()));
    }
    let space = f.space().clone();
    let n = space.n();
    let pis = space.pi_indices();
    for (k, v) in f.components() {
        let d = v.degree_in(&pis);
        if d as usize > p {
            return Err(Error::NotAllowable(format!(
                "component {} has momentum degree {d}, above the rank {p}",
                index_label(k)
            )));
        }
    }

    let lower = factorial(p as u64 - 1);
    let mut pinned: BTreeMap<(Vec<usize>, usize), (RealPoly, Vec<usize>, usize)> = BTreeMap::new();
    for whole in multisets(n, p) {
        let fk = f.component(&whole);
        for b in 0..n {
            for c in 0..n {
                let d = fk.diff(space.pi_index(b, c));
                let Some(rest) = remove_one(&whole, b) else {
                    if !d.is_zero() {
                        return Err(Error::NotAllowable(format!(
                            "component {} depends on pi{}_{} although index {} does not occur",
                            index_label(&whole),
                            b + 1,
                            c + 1,
                            b + 1
                        )));
                    }
                    continue;
                };
                let mult = whole.iter().filter(|&&x| x == b).count() as i64;
                let value = d.scale(&(Rational::from_integer(1.into()) / (lower.clone() * int(mult))));
                match pinned.get(&(rest.clone(), c)) {
                    None => {
                        pinned.insert((rest, c), (value, whole.clone(), b));
                    }
                    Some((prev, src, pb)) if *prev != value => {
                        return Err(Error::NotAllowable(format!(
                            "position part X^{}{} is {} from component {} / pi{}_{} but {} from component {} / pi{}_{}",
                            index_label(&rest),
                            c + 1,
                            prev,
                            index_label(src),
                            pb + 1,
                            c + 1,
                            value,
                            index_label(&whole),
                            b + 1,
                            c + 1
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
    }

    let mut field = HamiltonianField::zero(&space, p);
    for ((rest, c), (v, _, _)) in pinned {
        field.add_q(&rest, c, v);
    }
    let scale = -(Rational::from_integer(1.into()) / factorial(p as u64));
    for full in tuples(n, p) {
        let fk = f.component(&full);
        if fk.is_zero() {
            continue;
        }
        for j in 0..n {
            let d = fk.diff(space.q_index(j));
            if !d.is_zero() {
                field.add_pi(full.clone(), j, d.scale(&scale));
            }
        }
    }
    Ok(field)
}

/// Outcome of the allowability test with the solver's diagnostic.
#[derive(Clone, PartialEq, Debug)]
pub struct Allowability {
    pub allowable: bool,
    pub diagnostic: Option<String>,
}

pub fn is_allowable(f: &FrameObservable) -> Allowability {
    match hamiltonian_field(f) {
        Ok(_) => Allowability {
            allowable: true,
            diagnostic: None,
        },
        Err(e) => Allowability {
            allowable: false,
            diagnostic: Some(e.to_string()),
        },
    }
}

/// Kernel element `Y^{L}_j = h`, `Y^{L'}_j = -h` where `L'` swaps the first
/// two slots of `L`. Its total symmetrization vanishes.
pub fn swap_kernel(space: &FrameSpace, rank: usize, full: Vec<usize>, j: usize, h: RealPoly) -> HamiltonianField {
    assert!(rank >= 2 && full.len() == rank);
    let mut y = HamiltonianField::zero(space, rank);
    let mut swapped = full.clone();
    swapped.swap(0, 1);
    y.add_pi(full, j, h.clone());
    y.add_pi(swapped, j, -h);
    y
}
