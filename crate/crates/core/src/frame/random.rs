//! Seeded generators of allowable symmetric observables.
//!
//! Every observable is a sum of symmetrized terms
//! `A^{a_1..a_r}_{k_{r+1}..k_p}(q) pi^{k_1}_{a_1} ... pi^{k_r}_{a_r}` with
//! `A` symmetric in its upper and in its lower indices, which is the
//! general shape of a solution of the structure equation.

use itertools::Itertools;
use rand::Rng;

use super::index::{multisets, tuples};
use super::{FrameObservable, FrameSpace, Symmetry};
use crate::exact::{factorial, int, RealPoly};

/// Size controls for random observables.
#[derive(Clone, Copy, Debug)]
pub struct RandomSpec {
    /// Number of symmetrized terms.
    pub terms: usize,
    /// Largest total degree of the position coefficients.
    pub max_q_degree: u32,
    /// Coefficients are drawn from `-max_coeff..=max_coeff`.
    pub max_coeff: i64,
}

impl Default for RandomSpec {
    fn default() -> Self {
        Self {
            terms: 2,
            max_q_degree: 2,
            max_coeff: 3,
        }
    }
}

fn random_q_poly<R: Rng>(rng: &mut R, space: &FrameSpace, spec: &RandomSpec) -> RealPoly {
    let mut p = space.zero();
    let n = space.n();
    for _ in 0..2 {
        let mut e = vec![0u32; space.vars().len()];
        let deg = rng.gen_range(0..=spec.max_q_degree);
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = rng.gen_range(-spec.max_coeff..=spec.max_coeff);
        p.add_term(e, int(c));
    }
    p
}

/// One symmetrized term with `r` momenta, upper pattern `ups` (sorted,
/// length `r`) and lower pattern `lows` (sorted, length `p - r`).
fn symmetrized_term(space: &FrameSpace, rank: usize, ups: &[usize], lows: &[usize], coeff: &RealPoly) -> FrameObservable {
    let r = ups.len();
    let up_orders: Vec<Vec<usize>> = ups.iter().copied().permutations(r).unique().collect();
    let mut f = FrameObservable::zero(space, rank, Symmetry::Sym);
    let scale = int(1) / factorial(rank as u64);
    for whole in multisets(space.n(), rank) {
        let mut acc = space.zero();
        for t in whole.iter().copied().permutations(rank) {
            let mut tail = t[r..].to_vec();
            tail.sort_unstable();
            if tail != lows {
                continue;
            }
            for a in &up_orders {
                let mut term = coeff.clone();
                for s in 0..r {
                    term = &term * &space.pi(t[s], a[s]);
                }
                acc = &acc + &term;
            }
        }
        f.set(&whole, acc.scale(&scale)).expect("index in range");
    }
    f
}

/// Random allowable observable of the given rank.
pub fn random_allowable<R: Rng>(rng: &mut R, space: &FrameSpace, rank: usize, spec: &RandomSpec) -> FrameObservable {
    random_with(rng, space, rank, spec, false)
}

/// Random observable homogeneous of degree `rank` in the momenta.
pub fn random_tensorial<R: Rng>(rng: &mut R, space: &FrameSpace, rank: usize, spec: &RandomSpec) -> FrameObservable {
    random_with(rng, space, rank, spec, true)
}

fn random_with<R: Rng>(rng: &mut R, space: &FrameSpace, rank: usize, spec: &RandomSpec, tensorial: bool) -> FrameObservable {
    let n = space.n();
    let mut f = FrameObservable::zero(space, rank, Symmetry::Sym);
    for _ in 0..spec.terms {
        let r = if tensorial { rank } else { rng.gen_range(0..=rank) };
        let pick = |rng: &mut R, len: usize| {
            let all = tuples(n, len);
            let mut v = all[rng.gen_range(0..all.len())].clone();
            v.sort_unstable();
            v
        };
        let ups = pick(rng, r);
        let lows = pick(rng, rank - r);
        let coeff = random_q_poly(rng, space, spec);
        if coeff.is_zero() {
            continue;
        }
        f = f.plus(&symmetrized_term(space, rank, &ups, &lows, &coeff)).expect("same shape");
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::is_allowable;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_observables_are_allowable() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=3 {
            let s = FrameSpace::new(n).unwrap();
            for rank in 1..=3 {
                for _ in 0..4 {
                    let f = random_allowable(&mut rng, &s, rank, &RandomSpec::default());
                    let a = is_allowable(&f);
                    assert!(a.allowable, "{:?}", a.diagnostic);
                    assert!(f.pi_degree() as usize <= rank);
                    let t = random_tensorial(&mut rng, &s, rank, &RandomSpec::default());
                    assert!(t.is_homogeneous());
                    assert!(is_allowable(&t).allowable);
                }
            }
        }
    }
}
