//! Diagonal quantization of the circle family on pairs of Fourier sums.

use std::fmt;

use num_traits::Zero;

use super::{bracket, real_trig_string, CircleObservable};
use crate::exact::{GaussianRational, HPoly, TrigPoly};
use crate::opalg::minus_i_hbar;
use crate::Result;

/// A state: two Fourier sums with `hbar`-polynomial coefficients.
pub type CircleState = [TrigPoly<HPoly>; 2];

/// `-i hbar A(phi) d/dphi` on both components plus multiplication by
/// `(B, C)`.
#[derive(Clone, PartialEq, Debug)]
pub struct CircleOperator {
    a: TrigPoly,
    b: TrigPoly,
    c: TrigPoly,
}

fn to_state_coeffs(t: &TrigPoly) -> TrigPoly<HPoly> {
    t.map_coeffs(|c| HPoly::from(c.clone()))
}

impl CircleOperator {
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn derivative_part(&self) -> &TrigPoly {
        &self.a
    }

    pub fn multipliers(&self) -> [&TrigPoly; 2] {
        [&self.b, &self.c]
    }

    pub fn apply(&self, state: &CircleState) -> CircleState {
        let deriv = to_state_coeffs(&self.a).scale(&minus_i_hbar());
        let mults = [to_state_coeffs(&self.b), to_state_coeffs(&self.c)];
        std::array::from_fn(|k| deriv.clone() * state[k].diff() + mults[k].clone() * state[k].clone())
    }
}

impl fmt::Display for CircleOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "-i*hbar*({})*d/dphi + diag({}, {})",
            real_trig_string(&self.a),
            real_trig_string(&self.b),
            real_trig_string(&self.c)
        )
    }
}

pub fn quantize(f: &CircleObservable) -> CircleOperator {
    CircleOperator {
        a: f.a().clone(),
        b: f.b().clone(),
        c: f.c().clone(),
    }
}

/// Result of comparing `[Q(f), Q(g)]` with `-i hbar Q({f, g})`.
#[derive(Clone, PartialEq, Debug)]
pub struct CircleDiracOutcome {
    pub holds: bool,
    /// Nonzero residuals as `(component, mode, residual)`.
    pub residuals: Vec<(usize, i64, TrigPoly<HPoly>)>,
}

/// Modes on which the two sides are compared. Both sides are differential
/// operators of order at most two in `phi`, so their action on
/// `e^{i m phi}` is quadratic in `m`; three modes already determine them.
pub const TEST_MODES: std::ops::RangeInclusive<i64> = -2..=2;

pub fn dirac_check_circle(f: &CircleObservable, g: &CircleObservable) -> Result<CircleDiracOutcome> {
    let (qf, qg) = (quantize(f), quantize(g));
    let qb = quantize(&bracket(f, g)?);
    let mut residuals = Vec::new();
    for comp in 0..2 {
        for m in TEST_MODES {
            let mut state: CircleState = [TrigPoly::zero(), TrigPoly::zero()];
            state[comp] = TrigPoly::mode(m, HPoly::from(GaussianRational::from(crate::exact::int(1))));
            let fg = qf.apply(&qg.apply(&state));
            let gf = qg.apply(&qf.apply(&state));
            let rhs = qb.apply(&state);
            for k in 0..2 {
                let r = fg[k].clone() - gf[k].clone() - rhs[k].scale(&minus_i_hbar());
                if !r.is_zero() {
                    residuals.push((comp, m, r));
                }
            }
        }
    }
    Ok(CircleDiracOutcome {
        holds: residuals.is_empty(),
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::generators;

    fn hp(t: TrigPoly) -> TrigPoly<HPoly> {
        to_state_coeffs(&t)
    }

    #[test]
    fn momentum_on_exponential() {
        let (x, _, p) = generators();
        let out = quantize(&p).apply(&[hp(TrigPoly::exp(1)), TrigPoly::zero()]);
        assert_eq!(out[0], TrigPoly::mode(1, HPoly::hbar()));
        assert!(out[1].is_zero());
        let one = hp(TrigPoly::constant(GaussianRational::from(crate::exact::int(1))));
        let out = quantize(&x).apply(&[one.clone(), one]);
        assert_eq!(out, [hp(TrigPoly::cos(1)), hp(-TrigPoly::sin(1))]);
        assert!(quantize(&CircleObservable::zero()).is_zero());
    }

    #[test]
    fn generator_pairs_pass() {
        let (x, y, p) = generators();
        let gens = [x, y, p];
        for f in &gens {
            for g in &gens {
                assert!(dirac_check_circle(f, g).unwrap().holds);
            }
        }
    }
}
