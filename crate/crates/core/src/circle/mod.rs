//! Vector observables on the circle bundle `R^2 x S^1` with the reduced
//! 2-symplectic potential
//! `theta = (cos phi dq1 + sin phi dq2, -sin phi dq1 + cos phi dq2)`.
//!
//! Every observable has the form `F = f1 + i f2 = i A w e^{-i phi} + B + i C`
//! with `w = q1 + i q2` and real Fourier sums `A`, `B`, `C` in `phi`.

mod geometry;
mod jform;
mod quantum;

use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use crate::exact::{vars, Coeff, GaussianRational, Poly, Rational, TrigPoly, Vars};
use crate::{Error, Result};

pub use geometry::{contact_forms, equivariance_check, expected_contact_volume, potential, CircleFn, EquivarianceOutcome};
pub use jform::{jform_kernel, JFormKernel, JFormSolution};
pub use quantum::{dirac_check_circle, quantize, CircleDiracOutcome, CircleOperator, CircleState};

/// Polynomial in `q1, q2` with Fourier-sum coefficients in `phi`.
pub type AnglePoly = Poly<TrigPoly>;

/// The base variables `q1, q2`.
pub fn plane_vars() -> Vars {
    vars(&["q1", "q2"])
}

/// The single holomorphic variable `w`.
pub fn w_vars() -> Vars {
    vars(&["w"])
}

fn trig_const(t: TrigPoly) -> AnglePoly {
    AnglePoly::constant(&plane_vars(), t)
}

fn i_unit() -> TrigPoly {
    TrigPoly::constant(GaussianRational::i())
}

/// Prints a real Fourier sum with `cos` and `sin`.
pub fn real_trig_string(t: &TrigPoly) -> String {
    let mut terms = Vec::new();
    let c0 = t.coeff(0);
    if !c0.is_zero() {
        terms.push(c0.to_string());
    }
    for m in 1..=t.max_abs_mode() {
        let c = t.coeff(m);
        let two = Rational::from_integer(2.into());
        let (cos_c, sin_c) = (c.re.clone() * two.clone(), -(c.im.clone() * two));
        let angle = if m == 1 { "phi".to_string() } else { format!("{m}*phi") };
        for (k, name) in [(cos_c, "cos"), (sin_c, "sin")] {
            if k.is_zero() {
                continue;
            }
            let body = format!("{name}({angle})");
            terms.push(if k.is_one() {
                body
            } else if (-k.clone()).is_one() {
                format!("-{body}")
            } else {
                format!("{k}*{body}")
            });
        }
    }
    crate::exact::join_terms(&terms)
}

/// Observable `(A, B, C)` of the affine family.
#[derive(Clone, PartialEq, Debug)]
pub struct CircleObservable {
    a: TrigPoly,
    b: TrigPoly,
    c: TrigPoly,
}

impl CircleObservable {
    pub fn new(a: TrigPoly, b: TrigPoly, c: TrigPoly) -> Result<Self> {
        for (name, t) in [("A", &a), ("B", &b), ("C", &c)] {
            if !t.is_real() {
                return Err(Error::NotReal(format!("{name} = {t}")));
            }
        }
        Ok(Self { a, b, c })
    }

    pub fn zero() -> Self {
        Self {
            a: TrigPoly::zero(),
            b: TrigPoly::zero(),
            c: TrigPoly::zero(),
        }
    }

    pub fn a(&self) -> &TrigPoly {
        &self.a
    }

    pub fn b(&self) -> &TrigPoly {
        &self.b
    }

    pub fn c(&self) -> &TrigPoly {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self {
            a: self.a.clone() + other.a.clone(),
            b: self.b.clone() + other.b.clone(),
            c: self.c.clone() + other.c.clone(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let g = GaussianRational::real(k.clone());
        Self {
            a: self.a.scale(&g),
            b: self.b.scale(&g),
            c: self.c.scale(&g),
        }
    }

    /// `(f1, f2)` as functions of `phi, q1, q2`.
    pub fn components(&self) -> GeneralFunctionPair {
        let s = plane_vars();
        let (q1, q2) = (AnglePoly::var(&s, 0), AnglePoly::var(&s, 1));
        let (sin, cos) = (TrigPoly::sin(1), TrigPoly::cos(1));
        let a = trig_const(self.a.clone());
        let f1 = &a * &(&q1.scale(&sin) - &q2.scale(&cos)) + trig_const(self.b.clone());
        let f2 = &a * &(&q1.scale(&cos) + &q2.scale(&sin)) + trig_const(self.c.clone());
        GeneralFunctionPair { f1, f2 }
    }

    /// `F = i A w e^{-i phi} + B + i C` as a polynomial in `w`.
    pub fn complex_form(&self) -> Poly<TrigPoly> {
        let w = w_vars();
        let lin = i_unit() * self.a.clone() * TrigPoly::exp(-1);
        let mut out = Poly::constant(&w, self.b.clone() + i_unit() * self.c.clone());
        out.add_term(vec![1], lin);
        out
    }

    /// Inverse of [`Self::complex_form`]; fails when `big_f` is not affine in
    /// `w` or the implied `A` is not real.
    pub fn from_complex(big_f: &Poly<TrigPoly>) -> Result<Self> {
        if big_f.degree_in(&[0]) > 1 {
            return Err(Error::FamilyViolation(format!("F = {big_f} is not affine in w")));
        }
        let c1 = big_f.coeff(&[1]);
        let c0 = big_f.coeff(&[0]);
        let a = TrigPoly::constant(GaussianRational::imag_int(-1)) * TrigPoly::exp(1) * c1;
        if !a.is_real() {
            return Err(Error::FamilyViolation(format!("coefficient of w gives non-real A = {a}")));
        }
        Self::new(a, c0.real_part(), c0.imag_part())
    }

    /// Random member with modes up to `max_mode` and integer Fourier data of
    /// size at most `max_coeff`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_mode: i64, max_coeff: i64) -> Self {
        let mut real = || {
            let mut t = TrigPoly::constant(GaussianRational::from_int(rng.gen_range(-max_coeff..=max_coeff)));
            for m in 1..=max_mode {
                let c = GaussianRational::new(
                    Rational::from_integer(rng.gen_range(-max_coeff..=max_coeff).into()),
                    Rational::from_integer(rng.gen_range(-max_coeff..=max_coeff).into()),
                );
                t.add_mode(-m, c.conj());
                t.add_mode(m, c);
            }
            t
        };
        let (a, b, c) = (real(), real(), real());
        Self { a, b, c }
    }
}

impl fmt::Display for CircleObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A = {}; B = {}; C = {}",
            real_trig_string(&self.a),
            real_trig_string(&self.b),
            real_trig_string(&self.c)
        )
    }
}

/// Candidate pair `(f1, f2)` of functions of `phi, q1, q2`.
#[derive(Clone, PartialEq, Debug)]
pub struct GeneralFunctionPair {
    pub f1: AnglePoly,
    pub f2: AnglePoly,
}

impl GeneralFunctionPair {
    pub fn new(f1: AnglePoly, f2: AnglePoly) -> Result<Self> {
        for f in [&f1, &f2] {
            if f.vars() != &plane_vars() {
                return Err(Error::VariableMismatch {
                    left: f.vars().to_vec(),
                    right: plane_vars().to_vec(),
                });
            }
            if let Some((_, c)) = f.terms().find(|(_, c)| !c.is_real()) {
                return Err(Error::NotReal(format!("coefficient {c}")));
            }
        }
        Ok(Self { f1, f2 })
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self {
            f1: &self.f1 + &other.f1,
            f2: &self.f2 + &other.f2,
        }
    }
}

impl fmt::Display for GeneralFunctionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f1, self.f2)
    }
}

/// Derivative in `phi` of a function of `phi, q1, q2`.
pub fn diff_phi(f: &AnglePoly) -> AnglePoly {
    f.map_coeffs(|t| t.diff())
}

/// Hamiltonian vector field `X^phi d_phi + X^1 d_q1 + X^2 d_q2`.
#[derive(Clone, PartialEq, Debug)]
pub struct CircleField {
    pub x_phi: AnglePoly,
    pub x1: AnglePoly,
    pub x2: AnglePoly,
}

impl CircleField {
    /// Directional derivative of `g`.
    pub fn apply(&self, g: &AnglePoly) -> AnglePoly {
        &(&self.x_phi * &diff_phi(g)) + &(&(&self.x1 * &g.diff(0)) + &(&self.x2 * &g.diff(1)))
    }
}

/// Accepted observable with its field.
#[derive(Clone, PartialEq, Debug)]
pub struct StructureSolution {
    pub observable: CircleObservable,
    pub field: CircleField,
}

/// Solves `df^i = -X_f ⌟ d theta^i` for `f`, checking the six component
/// equations in order:
///
/// 1. `sin phi X^phi = d f1/d q1`
/// 2. `sin phi X^phi = d f2/d q2`
/// 3. `cos phi X^phi = -d f1/d q2`
/// 4. `cos phi X^phi = d f2/d q1`
/// 5. `d f1/d phi = cos phi X^2 - sin phi X^1`
/// 6. `d f2/d phi = -cos phi X^1 - sin phi X^2`
pub fn solve_structure(f: &GeneralFunctionPair) -> Result<StructureSolution> {
    let (sin, cos) = (TrigPoly::sin(1), TrigPoly::cos(1));
    let (f1, f2) = (&f.f1, &f.f2);
    let f1_phi = diff_phi(f1);
    let f2_phi = diff_phi(f2);
    let x_phi = &f1.diff(0).scale(&sin) - &f1.diff(1).scale(&cos);
    let x1 = -(&f1_phi.scale(&sin) + &f2_phi.scale(&cos));
    let x2 = &f1_phi.scale(&cos) - &f2_phi.scale(&sin);
    let s_x = x_phi.scale(&sin);
    let c_x = x_phi.scale(&cos);
    let checks = [
        (&s_x - &f1.diff(0), "sin(phi) X^phi = df1/dq1"),
        (&s_x - &f2.diff(1), "sin(phi) X^phi = df2/dq2"),
        (&c_x + &f1.diff(1), "cos(phi) X^phi = -df1/dq2"),
        (&c_x - &f2.diff(0), "cos(phi) X^phi = df2/dq1"),
        (&f1_phi - &(&x2.scale(&cos) - &x1.scale(&sin)), "df1/dphi = cos(phi) X^2 - sin(phi) X^1"),
        (&f2_phi + &(&x1.scale(&cos) + &x2.scale(&sin)), "df2/dphi = -cos(phi) X^1 - sin(phi) X^2"),
    ];
    for (k, (residual, label)) in checks.iter().enumerate() {
        if !residual.is_zero() {
            return Err(Error::StructureRejected {
                equation: k + 1,
                detail: format!("{label} fails with residual {residual}"),
            });
        }
    }
    let big_f = &f.f1 + &f.f2.scale(&i_unit());
    let observable = decompose(&big_f)?;
    Ok(StructureSolution {
        observable,
        field: CircleField { x_phi, x1, x2 },
    })
}

/// Reads `(A, B, C)` off `F(q1, q2)` once it is known to be holomorphic.
fn decompose(big_f: &AnglePoly) -> Result<CircleObservable> {
    if big_f.degree().unwrap_or(0) > 1 {
        return Err(Error::FamilyViolation(format!("F = {big_f} is not affine")));
    }
    let c1 = big_f.coeff(&[1, 0]);
    let c2 = big_f.coeff(&[0, 1]);
    if c2 != i_unit() * c1.clone() {
        return Err(Error::FamilyViolation(format!("F = {big_f} is not holomorphic in w")));
    }
    let mut complex = Poly::constant(&w_vars(), big_f.coeff(&[0, 0]));
    complex.add_term(vec![1], c1);
    CircleObservable::from_complex(&complex)
}

/// Field of an observable of the family.
pub fn hamiltonian_field(f: &CircleObservable) -> Result<CircleField> {
    Ok(solve_structure(&f.components())?.field)
}

/// `{F, G} = -i e^{i phi} F_w G_phi + i e^{i phi} F_phi G_w` on the complex
/// forms, decomposed back into the family.
pub fn bracket(f: &CircleObservable, g: &CircleObservable) -> Result<CircleObservable> {
    let (big_f, big_g) = (f.complex_form(), g.complex_form());
    let phase = Poly::constant(&w_vars(), i_unit() * TrigPoly::exp(1));
    let dphi = |p: &Poly<TrigPoly>| p.map_coeffs(|t| t.diff());
    let first = &(&big_f.diff(0) * &dphi(&big_g)) * &phase;
    let second = &(&dphi(&big_f) * &big_g.diff(0)) * &phase;
    CircleObservable::from_complex(&(&second - &first))
}

/// `{f, g} = X_f(g)`, a second route through the Hamiltonian field.
pub fn bracket_via_field(f: &CircleObservable, g: &CircleObservable) -> Result<CircleObservable> {
    let x = hamiltonian_field(f)?;
    let gc = g.components();
    let image = GeneralFunctionPair {
        f1: x.apply(&gc.f1),
        f2: x.apply(&gc.f2),
    };
    Ok(solve_structure(&image)?.observable)
}

/// The generators `x = e^{-i phi}`, `y = i e^{-i phi}` and `p = i w e^{-i phi}`.
pub fn generators() -> (CircleObservable, CircleObservable, CircleObservable) {
    let zero = TrigPoly::zero;
    let x = CircleObservable {
        a: zero(),
        b: TrigPoly::cos(1),
        c: -TrigPoly::sin(1),
    };
    let y = CircleObservable {
        a: zero(),
        b: TrigPoly::sin(1),
        c: TrigPoly::cos(1),
    };
    let p = CircleObservable {
        a: TrigPoly::one(),
        b: zero(),
        c: zero(),
    };
    (x, y, p)
}
