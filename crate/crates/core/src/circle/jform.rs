//! Vector observables for the form
//! `(e^{i phi} dphi∧dw + e^{-i phi} dphi∧dwbar, dw∧dwbar)`.
//!
//! The ansatz is `f1 = sum_m A_m(w, wbar) e^{i m phi}`, `f2 = B(w, wbar)`
//! with `|m| <= max_mode` and total degree at most `max_qdeg`. The structure
//! equation reduces mode by mode to
//!
//! * `dA_{m+1}/dw = dA_{m-1}/dwbar`
//! * `i m A_m = [m = -1] dB/dw - [m = 1] dB/dwbar`
//!
//! and reality asks `A_{-m} = conj(A_m)`, `B` real. The kernel is computed
//! over the rationals on the real and imaginary parts of all coefficients.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exact::linalg::nullspace;
use crate::exact::{int, vars, GaussianRational, Poly, Rational, Vars};

/// One kernel vector, with `A_m` and `B` as polynomials in `w, wbar`.
#[derive(Clone, PartialEq, Debug)]
pub struct JFormSolution {
    pub modes: BTreeMap<i64, Poly<GaussianRational>>,
    pub b: Poly<GaussianRational>,
}

impl JFormSolution {
    /// Whether some `A_m` is nonzero.
    pub fn has_fibre_part(&self) -> bool {
        self.modes.values().any(|p| !p.is_zero())
    }

    /// Whether every `A_m` and `B` is constant.
    pub fn is_constant(&self) -> bool {
        self.modes.values().chain([&self.b]).all(|p| p.degree().unwrap_or(0) == 0)
    }
}

/// Kernel basis of the truncated system.
#[derive(Clone, PartialEq, Debug)]
pub struct JFormKernel {
    pub max_mode: i64,
    pub max_qdeg: u32,
    pub unknowns: usize,
    pub equations: usize,
    pub basis: Vec<JFormSolution>,
}

impl JFormKernel {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn jform_vars() -> Vars {
    vars(&["w", "wbar"])
}

/// Complex unknown `z_u = x_{2u} + i x_{2u+1}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Slot {
    Mode(i64, u32, u32),
    B(u32, u32),
}

/// Complex linear equation `sum_u k_u z_u = 0`.
type Equation = BTreeMap<usize, GaussianRational>;

struct System {
    slots: Vec<Slot>,
    index: BTreeMap<Slot, usize>,
    rows: Vec<Vec<Rational>>,
}

impl System {
    fn slot(&self, s: Slot) -> Option<usize> {
        self.index.get(&s).copied()
    }

    fn push_complex(&mut self, eq: &Equation) {
        let n = 2 * self.slots.len();
        let mut re = vec![Rational::zero(); n];
        let mut im = vec![Rational::zero(); n];
        for (&u, k) in eq {
            re[2 * u] += k.re.clone();
            re[2 * u + 1] -= k.im.clone();
            im[2 * u] += k.im.clone();
            im[2 * u + 1] += k.re.clone();
        }
        self.rows.push(re);
        self.rows.push(im);
    }

    /// `z_u = conj(z_v)`.
    fn push_conjugate(&mut self, u: usize, v: usize) {
        let n = 2 * self.slots.len();
        let mut re = vec![Rational::zero(); n];
        re[2 * u] += Rational::one();
        re[2 * v] -= Rational::one();
        let mut im = vec![Rational::zero(); n];
        im[2 * u + 1] += Rational::one();
        im[2 * v + 1] += Rational::one();
        self.rows.push(re);
        self.rows.push(im);
    }
}

fn add(eq: &mut Equation, u: Option<usize>, k: GaussianRational) {
    if let Some(u) = u {
        let e = eq.entry(u).or_default();
        *e = e.clone() + k;
    }
}

fn real(n: i64) -> GaussianRational {
    GaussianRational::from(int(n))
}

/// Exact kernel of the truncated system.
pub fn jform_kernel(max_mode: i64, max_qdeg: u32) -> JFormKernel {
    let monos: Vec<(u32, u32)> = (0..=max_qdeg)
        .flat_map(|d| (0..=d).map(move |a| (a, d - a)))
        .collect();
    let mut slots = Vec::new();
    for m in -max_mode..=max_mode {
        slots.extend(monos.iter().map(|&(a, b)| Slot::Mode(m, a, b)));
    }
    slots.extend(monos.iter().map(|&(a, b)| Slot::B(a, b)));
    let index = slots.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut sys = System {
        slots,
        index,
        rows: Vec::new(),
    };

    // Coefficient of w^a wbar^b in each equation.
    for m in -max_mode - 1..=max_mode + 1 {
        for a in 0..max_qdeg {
            for b in 0..max_qdeg - a {
                // dA_{m+1}/dw - dA_{m-1}/dwbar
                let mut eq = Equation::new();
                add(&mut eq, sys.slot(Slot::Mode(m + 1, a + 1, b)), real(a as i64 + 1));
                add(&mut eq, sys.slot(Slot::Mode(m - 1, a, b + 1)), real(-(b as i64) - 1));
                sys.push_complex(&eq);
            }
        }
    }
    for m in -max_mode.max(1)..=max_mode.max(1) {
        for &(a, b) in &monos {
            // i m A_m - [m=-1] dB/dw + [m=1] dB/dwbar
            let mut eq = Equation::new();
            add(&mut eq, sys.slot(Slot::Mode(m, a, b)), GaussianRational::imag_int(m));
            if m == -1 {
                add(&mut eq, sys.slot(Slot::B(a + 1, b)), real(-(a as i64) - 1));
            }
            if m == 1 {
                add(&mut eq, sys.slot(Slot::B(a, b + 1)), real(b as i64 + 1));
            }
            sys.push_complex(&eq);
        }
    }
    for m in -max_mode..=max_mode {
        for &(a, b) in &monos {
            let u = sys.slot(Slot::Mode(m, a, b)).expect("slot");
            let v = sys.slot(Slot::Mode(-m, b, a)).expect("slot");
            sys.push_conjugate(u, v);
        }
    }
    for &(a, b) in &monos {
        let u = sys.slot(Slot::B(a, b)).expect("slot");
        let v = sys.slot(Slot::B(b, a)).expect("slot");
        sys.push_conjugate(u, v);
    }

    let ncols = 2 * sys.slots.len();
    let kernel = nullspace(&sys.rows, ncols);
    let jv = jform_vars();
    let basis = kernel
        .iter()
        .map(|vec| {
            let mut modes: BTreeMap<i64, Poly<GaussianRational>> =
                (-max_mode..=max_mode).map(|m| (m, Poly::zero(&jv))).collect();
            let mut b_poly = Poly::zero(&jv);
            for (u, s) in sys.slots.iter().enumerate() {
                let z = GaussianRational::new(vec[2 * u].clone(), vec[2 * u + 1].clone());
                match *s {
                    Slot::Mode(m, a, b) => modes.get_mut(&m).expect("mode").add_term(vec![a, b], z),
                    Slot::B(a, b) => b_poly.add_term(vec![a, b], z),
                }
            }
            JFormSolution { modes, b: b_poly }
        })
        .collect();
    JFormKernel {
        max_mode,
        max_qdeg,
        unknowns: ncols,
        equations: sys.rows.len(),
        basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_truncation_has_only_constants() {
        let k = jform_kernel(1, 2);
        assert!(k.basis.iter().all(JFormSolution::is_constant));
    }
}
