//! Vector-valued observables on the frame bundle of `R^n`.
//!
//! Coordinates are the base positions `q^a` and the generalized momenta
//! `pi^a_b`; an observable of rank `p` is a symmetric or alternating
//! `p`-index array of polynomials in them. Indices are 0-based in the API
//! and printed 1-based.

mod bracket;
mod cotangent;
mod field;
pub mod index;
mod random;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{factorial, int, vars, Rational, RealPoly, Vars};

pub use bracket::{bracket_with_field, poisson_bracket};
pub use cotangent::{cotangent_bracket, cotangent_vars, project_to_cotangent};
pub use field::{hamiltonian_field, is_allowable, swap_kernel, Allowability, HamiltonianField};
pub use random::{random_allowable, random_tensorial, RandomSpec};

use index::{increasing, multisets, sort_sign, sorted};

/// Coordinate space `L(R^n)` with variables `q1..qn, pi1_1..pin_n`.
#[derive(Clone, PartialEq, Debug)]
pub struct FrameSpace {
    n: usize,
    vars: Vars,
}

impl FrameSpace {
    /// Rejects `n < 2`, where the frame bundle collapses onto the
    /// cotangent bundle and observables are unrestricted in the momenta.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        let mut names: Vec<String> = (1..=n).map(|a| format!("q{a}")).collect();
        for a in 1..=n {
            for b in 1..=n {
                names.push(format!("pi{a}_{b}"));
            }
        }
        Ok(Self { n, vars: vars(&names) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn q_index(&self, a: usize) -> usize {
        a
    }

    /// Variable index of `pi^a_b`.
    pub fn pi_index(&self, a: usize, b: usize) -> usize {
        self.n + a * self.n + b
    }

    pub fn q(&self, a: usize) -> RealPoly {
        RealPoly::var(&self.vars, self.q_index(a))
    }

    pub fn pi(&self, a: usize, b: usize) -> RealPoly {
        RealPoly::var(&self.vars, self.pi_index(a, b))
    }

    pub fn zero(&self) -> RealPoly {
        RealPoly::zero(&self.vars)
    }

    pub fn constant(&self, c: Rational) -> RealPoly {
        RealPoly::constant(&self.vars, c)
    }

    /// Indices of all momentum variables.
    pub fn pi_indices(&self) -> Vec<usize> {
        (self.n..self.n + self.n * self.n).collect()
    }

    fn check_index(&self, index: usize) -> Result<usize> {
        if index == 0 || index > self.n {
            return Err(Error::IndexOutOfRange { index, n: self.n });
        }
        Ok(index - 1)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Symmetry {
    Sym,
    Antisym,
}

/// The rank-1 generators, with 1-based indices as in the usual notation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Generator {
    /// `pi_k = pi^j_k r_j`.
    PiHat(usize),
    /// `q^i r_i`, no sum.
    QHat(usize),
    /// `q^i r_j`.
    QHatFull(usize, usize),
    /// `r_k`.
    IHat(usize),
}

/// Tensor-valued polynomial observable.
///
/// Symmetric components are stored under nondecreasing index tuples,
/// alternating ones under strictly increasing tuples; absent entries are
/// zero.
#[derive(Clone, PartialEq, Debug)]
pub struct FrameObservable {
    space: FrameSpace,
    rank: usize,
    symmetry: Symmetry,
    components: BTreeMap<Vec<usize>, RealPoly>,
}

impl FrameObservable {
    pub fn zero(space: &FrameSpace, rank: usize, symmetry: Symmetry) -> Self {
        Self {
            space: space.clone(),
            rank,
            symmetry,
            components: BTreeMap::new(),
        }
    }

    /// Builds a rank-1 generator.
    pub fn generator(space: &FrameSpace, kind: Generator) -> Result<Self> {
        let mut f = Self::zero(space, 1, Symmetry::Sym);
        match kind {
            Generator::PiHat(k) => {
                let k = space.check_index(k)?;
                for j in 0..space.n {
                    f.set(&[j], space.pi(j, k))?;
                }
            }
            Generator::QHat(i) => {
                let i = space.check_index(i)?;
                f.set(&[i], space.q(i))?;
            }
            Generator::QHatFull(i, j) => {
                let i = space.check_index(i)?;
                let j = space.check_index(j)?;
                f.set(&[j], space.q(i))?;
            }
            Generator::IHat(k) => {
                let k = space.check_index(k)?;
                f.set(&[k], space.constant(int(1)))?;
            }
        }
        Ok(f)
    }

    pub fn space(&self) -> &FrameSpace {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.space.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    /// Reinterprets a rank-1 observable with the other symmetry tag; rank 1
    /// has no index symmetry to violate.
    pub fn with_symmetry(&self, symmetry: Symmetry) -> Result<Self> {
        if self.rank > 1 && symmetry != self.symmetry {
            return Err(Error::SymmetryMismatch(format!(
                "cannot retag a rank-{} observable",
                self.rank
            )));
        }
        Ok(Self {
            symmetry,
            ..self.clone()
        })
    }

    /// Stored components under their canonical index tuples.
    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &RealPoly)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Component for any index order, with the alternating sign applied.
    pub fn component(&self, idx: &[usize]) -> RealPoly {
        assert_eq!(idx.len(), self.rank, "component index has wrong length");
        match self.symmetry {
            Symmetry::Sym => self.components.get(&sorted(idx)).cloned().unwrap_or_else(|| self.space.zero()),
            Symmetry::Antisym => {
                let sign = sort_sign(idx);
                match (sign, self.components.get(&sorted(idx))) {
                    (0, _) | (_, None) => self.space.zero(),
                    (1, Some(c)) => c.clone(),
                    (_, Some(c)) => -c.clone(),
                }
            }
        }
    }

    /// Sets the component at `idx` (and implicitly its permutations).
    pub fn set(&mut self, idx: &[usize], value: RealPoly) -> Result<()> {
        if idx.len() != self.rank {
            return Err(Error::DimensionMismatch(idx.len(), self.rank));
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.space.n) {
            return Err(Error::IndexOutOfRange {
                index: bad + 1,
                n: self.space.n,
            });
        }
        let key = sorted(idx);
        let value = match self.symmetry {
            Symmetry::Sym => value,
            Symmetry::Antisym => match sort_sign(idx) {
                0 if value.is_zero() => return Ok(()),
                0 => {
                    return Err(Error::SymmetryMismatch(
                        "alternating component with a repeated index must vanish".into(),
                    ))
                }
                1 => value,
                _ => -value,
            },
        };
        if value.is_zero() {
            self.components.remove(&key);
        } else {
            self.components.insert(key, value);
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch(self.n(), other.n()));
        }
        Ok(())
    }

    fn check_like(&self, other: &Self) -> Result<()> {
        self.check_compatible(other)?;
        if self.rank != other.rank || self.symmetry != other.symmetry {
            return Err(Error::SymmetryMismatch(format!(
                "cannot add rank {} {:?} and rank {} {:?}",
                self.rank, self.symmetry, other.rank, other.symmetry
            )));
        }
        Ok(())
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_like(other)?;
        let mut out = self.clone();
        for (k, v) in &other.components {
            let s = &out.component(k) + v;
            out.set(k, s)?;
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.space, self.rank, self.symmetry);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.components {
            out.components.insert(k.clone(), v.scale(c));
        }
        out
    }

    /// Largest total degree in the momenta over all components.
    pub fn pi_degree(&self) -> u32 {
        let pis = self.space.pi_indices();
        self.components.values().map(|c| c.degree_in(&pis)).max().unwrap_or(0)
    }

    /// Whether every term has momentum degree exactly the rank.
    pub fn is_homogeneous(&self) -> bool {
        let pis = self.space.pi_indices();
        self.components.values().all(|c| {
            c.terms()
                .all(|(e, _)| pis.iter().map(|&i| e[i]).sum::<u32>() == self.rank as u32)
        })
    }

    /// Keys of every canonical slot, stored or not.
    pub fn slots(&self) -> Vec<Vec<usize>> {
        match self.symmetry {
            Symmetry::Sym => multisets(self.space.n, self.rank),
            Symmetry::Antisym => increasing(self.space.n, self.rank),
        }
    }

    /// Lines of the form `[1,2]: poly`, one per nonzero component.
    pub fn component_strings(&self) -> Vec<(String, RealPoly)> {
        self.components
            .iter()
            .map(|(k, v)| (index_label(k), v.clone()))
            .collect()
    }
}

/// 1-based printed index tuple such as `[1,2]`.
pub fn index_label(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for FrameObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(k, v)| format!("{}: {}", index_label(k), v))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Symmetric product, normalized as the average over index orderings.
pub fn sym_product(f: &FrameObservable, g: &FrameObservable) -> Result<FrameObservable> {
    f.check_compatible(g)?;
    if f.symmetry != Symmetry::Sym || g.symmetry != Symmetry::Sym {
        return Err(Error::SymmetryMismatch("symmetric product needs symmetric factors".into()));
    }
    let (p, q) = (f.rank, g.rank);
    let mut out = FrameObservable::zero(&f.space, p + q, Symmetry::Sym);
    for whole in multisets(f.n(), p + q) {
        let mut acc = f.space.zero();
        for head in index::sub_multisets(&whole, p) {
            let fh = f.component(&head);
            if fh.is_zero() {
                continue;
            }
            let tail = index::difference(&whole, &head);
            let gt = g.component(&tail);
            if gt.is_zero() {
                continue;
            }
            // Every ordering of the head block carries the same term.
            let w = index::leading_block_weight(&whole, &head) * index::ordering_count(&head);
            acc = &acc + &(&fh * &gt).scale(&w);
        }
        out.set(&whole, acc)?;
    }
    Ok(out)
}

/// Result of an alternating product; `degenerate` marks rank above `n`.
#[derive(Clone, PartialEq, Debug)]
pub struct AntisymProduct {
    pub value: FrameObservable,
    pub degenerate: bool,
}

/// Alternating product, normalized as the signed average over orderings.
/// Rank-1 factors are accepted with either symmetry tag.
pub fn antisym_product(f: &FrameObservable, g: &FrameObservable) -> Result<AntisymProduct> {
    f.check_compatible(g)?;
    for h in [f, g] {
        if h.rank > 1 && h.symmetry != Symmetry::Antisym {
            return Err(Error::SymmetryMismatch("alternating product needs alternating factors".into()));
        }
    }
    let f = f.with_symmetry(Symmetry::Antisym)?;
    let g = g.with_symmetry(Symmetry::Antisym)?;
    let (p, q) = (f.rank, g.rank);
    let mut out = FrameObservable::zero(&f.space, p + q, Symmetry::Antisym);
    if p + q > f.n() {
        return Ok(AntisymProduct {
            value: out,
            degenerate: true,
        });
    }
    let norm = factorial(p as u64) * factorial(q as u64) / factorial((p + q) as u64);
    for whole in increasing(f.n(), p + q) {
        let mut acc = f.space.zero();
        for head in index::sub_multisets(&whole, p) {
            let tail = index::difference(&whole, &head);
            let mut joined = head.clone();
            joined.extend_from_slice(&tail);
            let term = &f.component(&head) * &g.component(&tail);
            acc = &acc + &term.scale(&(norm.clone() * int(sort_sign(&joined) as i64)));
        }
        out.set(&whole, acc)?;
    }
    Ok(AntisymProduct {
        value: out,
        degenerate: false,
    })
}
