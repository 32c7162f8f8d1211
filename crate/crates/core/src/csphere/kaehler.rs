//! The three Kähler forms of `C^2`, the holomorphic symplectic forms, the
//! 2-symplectic structure `(omega^2, omega^3)` and the embedding of the
//! circle bundle.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use super::{holo_monomials, holo_vars, real_vars, split_to_vector, HoloPoly, RealField};
use crate::cartan::{wedge, PolyField, PolyForm};
use crate::circle::{AnglePoly, CircleFn};
use crate::exact::linalg::{determinant, inverse, nullspace, rank};
use crate::exact::{int, GaussianRational, Rational, RealPoly, TrigPoly};

/// Constant complex 2-form `sum_{j<k} m[j][k] dq^j∧dq^k` on `R^4`, stored as
/// a full antisymmetric matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct ConstForm {
    pub matrix: [[GaussianRational; 4]; 4],
}

type Covector = [GaussianRational; 4];

impl ConstForm {
    pub fn zero() -> Self {
        Self {
            matrix: Default::default(),
        }
    }

    pub fn wedge(a: &Covector, b: &Covector) -> Self {
        Self {
            matrix: std::array::from_fn(|j| {
                std::array::from_fn(|k| a[j].clone() * b[k].clone() - a[k].clone() * b[j].clone())
            }),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self {
            matrix: std::array::from_fn(|j| {
                std::array::from_fn(|k| self.matrix[j][k].clone() + other.matrix[j][k].clone())
            }),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self {
            matrix: self.matrix.clone().map(|row| row.map(|v| v * c.clone())),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Zero::is_zero)
    }

    /// `omega(e_j, e_k)` on coordinate vectors.
    pub fn eval(&self, j: usize, k: usize) -> GaussianRational {
        self.matrix[j][k].clone()
    }

    pub fn determinant(&self) -> GaussianRational {
        let rows: Vec<Vec<GaussianRational>> = self.matrix.iter().map(|r| r.to_vec()).collect();
        determinant(&rows)
    }

    fn real_matrix(&self) -> Option<Vec<Vec<Rational>>> {
        self.matrix
            .iter()
            .map(|row| row.iter().map(|c| c.is_real().then(|| c.re.clone())).collect())
            .collect()
    }
}

impl fmt::Display for ConstForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for j in 0..4 {
            for k in j + 1..4 {
                let c = &self.matrix[j][k];
                if !c.is_zero() {
                    terms.push(crate::exact::term_string(c, &format!("dq{}^dq{}", j + 1, k + 1)));
                }
            }
        }
        write!(f, "{}", crate::exact::join_terms(&terms))
    }
}

fn covector(parts: [(i64, i64); 4]) -> Covector {
    parts.map(|(re, im)| GaussianRational::new(int(re), int(im)))
}

/// `dz, dzbar, dw, dwbar` in real coordinates.
pub fn complex_differentials() -> [Covector; 4] {
    [
        covector([(1, 0), (0, 1), (0, 0), (0, 0)]),
        covector([(1, 0), (0, -1), (0, 0), (0, 0)]),
        covector([(0, 0), (0, 0), (1, 0), (0, 1)]),
        covector([(0, 0), (0, 0), (1, 0), (0, -1)]),
    ]
}

#[derive(Clone, PartialEq, Debug)]
pub struct KaehlerSuite {
    pub omega1: ConstForm,
    pub omega2: ConstForm,
    pub omega3: ConstForm,
    pub plus: ConstForm,
    pub minus: ConstForm,
}

/// `omega1 = dz∧dzbar + dw∧dwbar`, `omega2 = dz∧dw + dzbar∧dwbar`,
/// `omega3 = -i dz∧dw + i dzbar∧dwbar` and `omega± = omega2 ± i omega3`.
pub fn kaehler_suite() -> KaehlerSuite {
    let [dz, dzb, dw, dwb] = complex_differentials();
    let i = GaussianRational::i();
    let omega1 = ConstForm::wedge(&dz, &dzb).plus(&ConstForm::wedge(&dw, &dwb));
    let omega2 = ConstForm::wedge(&dz, &dw).plus(&ConstForm::wedge(&dzb, &dwb));
    let omega3 = ConstForm::wedge(&dz, &dw)
        .scale(&-i.clone())
        .plus(&ConstForm::wedge(&dzb, &dwb).scale(&i));
    let plus = omega2.plus(&omega3.scale(&i));
    let minus = omega2.plus(&omega3.scale(&-i));
    KaehlerSuite {
        omega1,
        omega2,
        omega3,
        plus,
        minus,
    }
}

/// Pulls a constant form back along `(q1, q2, phi) -> (q1 + i q2, e^{i m phi})`
/// with `m = w_mode`; the result lives on the circle bundle coordinates
/// `(phi, q1, q2)`.
pub fn pullback_to_circle_bundle(form: &ConstForm, w_mode: i64) -> PolyForm<CircleFn> {
    let m = GaussianRational::from(int(w_mode));
    let one = CircleFn::trig(TrigPoly::one());
    let dx: [PolyForm<CircleFn>; 4] = [
        PolyForm::basis(3, &[1], one.clone()),
        PolyForm::basis(3, &[2], one),
        PolyForm::basis(3, &[0], CircleFn::trig(-TrigPoly::sin(w_mode).scale(&m))),
        PolyForm::basis(3, &[0], CircleFn::trig(TrigPoly::cos(w_mode).scale(&m))),
    ];
    let mut out = PolyForm::zero(3, 2);
    for j in 0..4 {
        for k in j + 1..4 {
            let c = &form.matrix[j][k];
            if c.is_zero() {
                continue;
            }
            let piece = wedge(&dx[j], &dx[k]).expect("dimensions agree");
            out = out
                .plus(&piece.scaled(&CircleFn::trig(TrigPoly::constant(c.clone()))))
                .expect("same degree");
        }
    }
    out
}

/// Real or imaginary part of a form on the circle bundle.
pub fn form_part(w: &PolyForm<CircleFn>, imaginary: bool) -> PolyForm<CircleFn> {
    w.map(|f| {
        let p: AnglePoly = f.0.map_coeffs(|t| if imaginary { t.imag_part() } else { t.real_part() });
        CircleFn(p)
    })
}

/// Field `X` with `X ⌟ omega^2 = -df1`.
pub fn c2_structure_field(f1: &RealPoly) -> RealField {
    let m = kaehler_suite().omega2.real_matrix().expect("omega2 is real");
    // (X ⌟ omega)_k = sum_j X^j m[j][k], so X = -(m^T)^{-1} grad f1.
    let mt: Vec<Vec<Rational>> = (0..4).map(|k| (0..4).map(|j| m[j][k].clone()).collect()).collect();
    let inv = inverse(&mt).expect("omega2 is nondegenerate");
    let grad: Vec<RealPoly> = (0..4).map(|k| f1.diff(k)).collect();
    let comps = (0..4)
        .map(|j| {
            let mut acc = RealPoly::zero(&real_vars());
            for k in 0..4 {
                acc = &acc - &grad[k].scale(&inv[j][k]);
            }
            acc
        })
        .collect();
    PolyField::new(comps)
}

/// `df2 + X_f ⌟ omega^3`, whose vanishing completes the structure equation.
fn residual(f: &(RealPoly, RealPoly)) -> Vec<RealPoly> {
    let m3 = kaehler_suite().omega3.real_matrix().expect("omega3 is real");
    let x = c2_structure_field(&f.0);
    (0..4)
        .map(|k| {
            let mut acc = f.1.diff(k);
            for j in 0..4 {
                acc = &acc + &x.component(j).scale(&m3[j][k]);
            }
            acc
        })
        .collect()
}

/// `{f, g} = X_f(g)` componentwise.
pub fn induced_bracket(f: &(RealPoly, RealPoly), g: &(RealPoly, RealPoly)) -> (RealPoly, RealPoly) {
    let x = c2_structure_field(&f.0);
    (x.apply(&g.0), x.apply(&g.1))
}

/// A real family of pairs given by a basis.
#[derive(Clone, PartialEq, Debug)]
pub struct C2Family {
    pub max_deg: u32,
    pub basis: Vec<(RealPoly, RealPoly)>,
}

fn real_monomials(max_deg: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in 0..=max_deg {
        for b in 0..=max_deg - a {
            for c in 0..=max_deg - a - b {
                for d in 0..=max_deg - a - b - c {
                    out.push(vec![a, b, c, d]);
                }
            }
        }
    }
    out
}

fn pair_coords(monos: &[Vec<u32>], p: &(RealPoly, RealPoly)) -> Vec<Rational> {
    monos.iter().map(|e| p.0.coeff(e)).chain(monos.iter().map(|e| p.1.coeff(e))).collect()
}

impl C2Family {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Whether both families span the same real space.
    pub fn same_span(&self, other: &Self) -> bool {
        let deg = self.max_deg.max(other.max_deg);
        let monos = real_monomials(deg);
        let a: Vec<Vec<Rational>> = self.basis.iter().map(|p| pair_coords(&monos, p)).collect();
        let b: Vec<Vec<Rational>> = other.basis.iter().map(|p| pair_coords(&monos, p)).collect();
        let both: Vec<Vec<Rational>> = a.iter().chain(&b).cloned().collect();
        let n = 2 * monos.len();
        let r = rank(&both, n);
        r == rank(&a, n) && r == rank(&b, n)
    }
}

/// Every real pair of degree at most `max_deg` solving the structure
/// equation for `(omega^2, omega^3)`.
pub fn c2_family(max_deg: u32) -> C2Family {
    let s = real_vars();
    let monos = real_monomials(max_deg);
    let n = monos.len();
    let unknown = |u: usize| -> (RealPoly, RealPoly) {
        let mono = RealPoly::monomial(&s, monos[u % n].clone(), Rational::one());
        if u < n {
            (mono, RealPoly::zero(&s))
        } else {
            (RealPoly::zero(&s), mono)
        }
    };
    let images: Vec<Vec<RealPoly>> = (0..2 * n).map(|u| residual(&unknown(u))).collect();
    let keys: BTreeSet<(usize, Vec<u32>)> = images
        .iter()
        .flat_map(|img| img.iter().enumerate().flat_map(|(k, p)| p.terms().map(move |(e, _)| (k, e.clone()))))
        .collect();
    let rows: Vec<Vec<Rational>> = keys
        .iter()
        .map(|(k, e)| images.iter().map(|img| img[*k].coeff(e)).collect())
        .collect();
    let basis = nullspace(&rows, 2 * n)
        .into_iter()
        .map(|v| {
            let mut f1 = RealPoly::zero(&s);
            let mut f2 = RealPoly::zero(&s);
            for (u, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if u < n {
                    f1.add_term(monos[u].clone(), c.clone());
                } else {
                    f2.add_term(monos[u - n].clone(), c.clone());
                }
            }
            (f1, f2)
        })
        .collect();
    C2Family { max_deg, basis }
}

/// Real and imaginary splittings of `z^a w^b` and `i z^a w^b`.
pub fn split_family(max_deg: u32) -> C2Family {
    let hv = holo_vars();
    let basis = holo_monomials(max_deg)
        .into_iter()
        .flat_map(|e| {
            [GaussianRational::from(int(1)), GaussianRational::i()]
                .map(|c| split_to_vector(&HoloPoly::monomial(&hv, e.to_vec(), c)))
        })
        .collect();
    C2Family { max_deg, basis }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_values() {
        let k = kaehler_suite();
        assert_eq!(k.omega2.eval(0, 2), GaussianRational::from(int(2)));
        assert_eq!(k.omega2.eval(1, 3), GaussianRational::from(int(-2)));
        assert_eq!(k.omega3.eval(0, 3), GaussianRational::from(int(2)));
        assert_eq!(k.omega1.eval(0, 1), GaussianRational::imag_int(-2));
        let [dz, _, dw, _] = complex_differentials();
        assert_eq!(k.plus, ConstForm::wedge(&dz, &dw).scale(&GaussianRational::from(int(2))));
        for w in [&k.omega1, &k.omega2, &k.omega3] {
            assert!(!w.determinant().is_zero());
        }
    }

    #[test]
    fn small_family_matches_splits() {
        let fam = c2_family(2);
        assert!(fam.same_span(&split_family(2)));
        assert_eq!(fam.dimension(), 12);
    }
}
