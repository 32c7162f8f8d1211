//! The reduced potential as an exterior form, its contact property and its
//! behaviour under the fibre rotation.

use std::fmt;

use num_traits::Zero;

use super::{diff_phi, plane_vars, AnglePoly};
use crate::cartan::{ext_d, wedge, CoordFn, PolyForm};
use crate::exact::{GaussianRational, TrigPoly};
use crate::Result;

/// Function of `(phi, q1, q2)`; coordinate 0 is `phi`.
#[derive(Clone, PartialEq, Debug)]
pub struct CircleFn(pub AnglePoly);

impl CircleFn {
    pub fn trig(t: TrigPoly) -> Self {
        Self(AnglePoly::constant(&plane_vars(), t))
    }
}

impl fmt::Display for CircleFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl CoordFn for CircleFn {
    fn zero_like(&self) -> Self {
        Self(AnglePoly::zero(self.0.vars()))
    }
    fn vanishes(&self) -> bool {
        self.0.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }
    fn times(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }
    fn negated(&self) -> Self {
        Self(-self.0.clone())
    }
    fn partial(&self, coord: usize) -> Self {
        match coord {
            0 => Self(diff_phi(&self.0)),
            k => Self(self.0.diff(k - 1)),
        }
    }
}

/// Coefficients of `dq1, dq2` in the two potential components.
fn potential_coefficients() -> [[TrigPoly; 2]; 2] {
    [
        [TrigPoly::cos(1), TrigPoly::sin(1)],
        [-TrigPoly::sin(1), TrigPoly::cos(1)],
    ]
}

/// `(theta^1, theta^2)` as 1-forms on `(phi, q1, q2)`.
pub fn potential() -> [PolyForm<CircleFn>; 2] {
    potential_coefficients().map(|row| {
        let mut form = PolyForm::zero(3, 1);
        for (k, t) in row.into_iter().enumerate() {
            form.add_term(vec![k + 1], CircleFn::trig(t));
        }
        form
    })
}

/// `theta^i ∧ d theta^i` for both components.
pub fn contact_forms() -> Result<[PolyForm<CircleFn>; 2]> {
    let [t1, t2] = potential();
    Ok([wedge(&t1, &ext_d(&t1)?)?, wedge(&t2, &ext_d(&t2)?)?])
}

/// Both sides of `theta(phi + alpha) = R(alpha) theta(phi)`, coefficient by
/// coefficient, as functions of `(phi, alpha)`; the outer Fourier variable
/// is `phi` and the inner one `alpha`.
#[derive(Clone, PartialEq, Debug)]
pub struct EquivarianceOutcome {
    pub holds: bool,
    pub shifted: [[TrigPoly<TrigPoly>; 2]; 2],
    pub rotated: [[TrigPoly<TrigPoly>; 2]; 2],
}

fn shift(t: &TrigPoly) -> TrigPoly<TrigPoly> {
    let mut out = TrigPoly::<TrigPoly>::zero();
    for (m, c) in t.iter() {
        out.add_mode(m, TrigPoly::mode(m, c.clone()));
    }
    out
}

fn lift(t: &TrigPoly) -> TrigPoly<TrigPoly> {
    t.map_coeffs(|c| TrigPoly::constant(c.clone()))
}

fn in_alpha(t: TrigPoly) -> TrigPoly<TrigPoly> {
    TrigPoly::constant(t)
}

/// Checks the rotation law with `R(alpha) = [[cos, sin], [-sin, cos]]`.
pub fn equivariance_check() -> EquivarianceOutcome {
    let theta = potential_coefficients();
    let rot = [
        [in_alpha(TrigPoly::cos(1)), in_alpha(TrigPoly::sin(1))],
        [in_alpha(-TrigPoly::sin(1)), in_alpha(TrigPoly::cos(1))],
    ];
    let shifted = theta.clone().map(|row| row.map(|t| shift(&t)));
    let rotated: [[TrigPoly<TrigPoly>; 2]; 2] = std::array::from_fn(|i| {
        std::array::from_fn(|k| {
            rot[i][0].clone() * lift(&theta[0][k]) + rot[i][1].clone() * lift(&theta[1][k])
        })
    });
    EquivarianceOutcome {
        holds: shifted == rotated,
        shifted,
        rotated,
    }
}

/// `-d phi ∧ dq1 ∧ dq2`, the expected value of each contact form.
pub fn expected_contact_volume() -> PolyForm<CircleFn> {
    PolyForm::basis(3, &[0, 1, 2], CircleFn::trig(TrigPoly::constant(GaussianRational::from(crate::exact::int(-1)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{contract, PolyField};
    use crate::circle::{generators, hamiltonian_field, CircleObservable};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn contact_forms_are_volume_forms() {
        for form in contact_forms().unwrap() {
            assert_eq!(form, expected_contact_volume());
        }
    }

    #[test]
    fn rotation_law() {
        assert!(equivariance_check().holds);
    }

    #[test]
    fn structure_equation_through_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (x, y, p) = generators();
        let mut samples = vec![x, y, p];
        samples.extend((0..5).map(|_| CircleObservable::random(&mut rng, 3, 3)));
        let theta = potential();
        for f in samples {
            let field = hamiltonian_field(&f).unwrap();
            let x = PolyField::new(vec![CircleFn(field.x_phi), CircleFn(field.x1), CircleFn(field.x2)]);
            let comps = f.components();
            for (fi, th) in [comps.f1, comps.f2].into_iter().zip(&theta) {
                let df = ext_d(&PolyForm::function(3, CircleFn(fi))).unwrap();
                let rhs = contract(&x, &ext_d(th).unwrap()).unwrap();
                assert!(df.plus(&rhs).unwrap().is_zero());
            }
        }
    }
}
