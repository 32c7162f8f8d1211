//! Evaluation of parsed expressions in each space.

use num_traits::Zero;

use super::parse::{Atom, Expr, Literal, Scalar, TrigFn};
use super::Space;
use crate::circle::{self, AnglePoly, CircleObservable, GeneralFunctionPair};
use crate::csphere::{self, HoloPoly, S3Observable};
use crate::exact::{int, GaussianRational, Rational, RealPoly, TrigPoly};
use crate::frame::{self, FrameObservable, FrameSpace, Generator};
use crate::opalg::{self, OpGen, OpPoly};
use crate::{Error, Result};

/// Value of an expression.
#[derive(Clone, PartialEq, Debug)]
pub enum Value {
    Frame(FrameObservable),
    Circle(CircleObservable),
    Holo(HoloPoly),
    Sphere(S3Observable),
}

fn unsupported(what: impl std::fmt::Display, space: Space) -> Error {
    Error::Unsupported(format!("{what} is not available in space {space}"))
}

fn real_literal(l: &Literal) -> Result<Rational> {
    match l {
        Literal::Real(r) => Ok(r.clone()),
        Literal::Imag(r) => Err(Error::NotReal(format!("{r}i"))),
    }
}

fn gaussian(l: &Literal) -> GaussianRational {
    match l {
        Literal::Real(r) => GaussianRational::real(r.clone()),
        Literal::Imag(r) => GaussianRational::new(Rational::zero(), r.clone()),
    }
}

fn real_scalar(s: &Scalar, space: Space) -> Result<Rational> {
    match s {
        Scalar::Lit(l) => real_literal(l),
        Scalar::Hbar => Err(unsupported("`hbar`", space).with_hint("hbar only scales quantized operators")),
    }
}

trait Hint {
    fn with_hint(self, hint: &str) -> Self;
}

impl Hint for Error {
    fn with_hint(self, hint: &str) -> Self {
        match self {
            Error::Unsupported(m) => Error::Unsupported(format!("{m}; {hint}")),
            other => other,
        }
    }
}

pub fn eval(e: &Expr, space: Space) -> Result<Value> {
    match space {
        Space::Frame(n) => Ok(Value::Frame(eval_frame(e, &FrameSpace::new(n)?, space)?)),
        Space::Circle => Ok(Value::Circle(eval_circle(e, space)?)),
        Space::C2 => Ok(Value::Holo(eval_holo(e, space)?)),
        Space::S3 => Ok(Value::Sphere(eval_sphere(e, space)?)),
    }
}

fn eval_frame(e: &Expr, s: &FrameSpace, space: Space) -> Result<FrameObservable> {
    let rec = |x: &Expr| eval_frame(x, s, space);
    match e {
        Expr::Atom(a) => {
            let g = match *a {
                Atom::Pi(k) => Generator::PiHat(k),
                Atom::Q(k) => Generator::QHat(k),
                Atom::QFull(i, j) => Generator::QHatFull(i, j),
                Atom::Unit(k) => Generator::IHat(k),
                other => return Err(unsupported(format!("`{other}`"), space)),
            };
            FrameObservable::generator(s, g)
        }
        Expr::Neg(x) => Ok(rec(x)?.scale(&int(-1))),
        Expr::Scaled(c, x) => Ok(rec(x)?.scale(&real_scalar(c, space)?)),
        Expr::Add(a, b) => rec(a)?.plus(&rec(b)?),
        Expr::Sub(a, b) => rec(a)?.minus(&rec(b)?),
        Expr::Sym(a, b) => frame::sym_product(&rec(a)?, &rec(b)?),
        Expr::Wedge(a, b) => Ok(frame::antisym_product(&rec(a)?, &rec(b)?)?.value),
        Expr::Bracket(a, b) => frame::poisson_bracket(&rec(a)?, &rec(b)?),
        Expr::Lit(_) => Err(unsupported("a bare scalar", space).with_hint("observables have rank at least 1")),
        Expr::Trig(..) => Err(unsupported("a trigonometric factor", space)),
        Expr::Components(_) => Err(unsupported("component input", space).with_hint("use the circle space")),
    }
}

fn eval_circle(e: &Expr, space: Space) -> Result<CircleObservable> {
    let rec = |x: &Expr| eval_circle(x, space);
    let (x, y, p) = circle::generators();
    match e {
        Expr::Atom(Atom::X) => Ok(x),
        Expr::Atom(Atom::Y) => Ok(y),
        Expr::Atom(Atom::P) => Ok(p),
        Expr::Atom(other) => Err(unsupported(format!("`{other}`"), space)),
        Expr::Neg(a) => Ok(rec(a)?.scale(&int(-1))),
        Expr::Scaled(c, a) => Ok(rec(a)?.scale(&real_scalar(c, space)?)),
        Expr::Add(a, b) => Ok(rec(a)?.plus(&rec(b)?)),
        Expr::Sub(a, b) => Ok(rec(a)?.plus(&rec(b)?.scale(&int(-1)))),
        Expr::Bracket(a, b) => circle::bracket(&rec(a)?, &rec(b)?),
        Expr::Components(items) => {
            let [f1, f2] = items.as_slice() else {
                return Err(Error::DimensionMismatch(items.len(), 2));
            };
            let pair = GeneralFunctionPair::new(angle_poly(f1, space)?, angle_poly(f2, space)?)?;
            Ok(circle::solve_structure(&pair)?.observable)
        }
        Expr::Sym(..) | Expr::Wedge(..) => {
            Err(unsupported("a product of observables", space).with_hint("products leave the affine family"))
        }
        Expr::Lit(_) | Expr::Trig(..) => Err(unsupported("a scalar outside component input", space)),
    }
}

/// Scalar function of `phi, q1, q2` inside component input.
fn angle_poly(e: &Expr, space: Space) -> Result<AnglePoly> {
    let s = circle::plane_vars();
    let rec = |x: &Expr| angle_poly(x, space);
    let constant = |t: TrigPoly| AnglePoly::constant(&s, t);
    match e {
        Expr::Atom(Atom::Q(k @ 1..=2)) => Ok(AnglePoly::var(&s, k - 1)),
        Expr::Atom(Atom::Q(k)) => Err(Error::IndexOutOfRange { index: *k, n: 2 }),
        Expr::Lit(l) => Ok(constant(TrigPoly::constant(gaussian(l)))),
        Expr::Trig(TrigFn::Cos, m) => Ok(constant(TrigPoly::cos(i64::from(*m)))),
        Expr::Trig(TrigFn::Sin, m) => Ok(constant(TrigPoly::sin(i64::from(*m)))),
        Expr::Neg(a) => Ok(-rec(a)?),
        Expr::Scaled(Scalar::Lit(l), a) => Ok(rec(a)?.scale(&TrigPoly::constant(gaussian(l)))),
        Expr::Add(a, b) => Ok(&rec(a)? + &rec(b)?),
        Expr::Sub(a, b) => Ok(&rec(a)? - &rec(b)?),
        Expr::Sym(a, b) => Ok(&rec(a)? * &rec(b)?),
        other => Err(unsupported(format!("`{other}` inside component input"), space)),
    }
}

fn eval_holo(e: &Expr, space: Space) -> Result<HoloPoly> {
    let v = csphere::holo_vars();
    let rec = |x: &Expr| eval_holo(x, space);
    match e {
        Expr::Atom(Atom::Spin(k)) => Ok(csphere::spin_x()[k - 1].clone()),
        Expr::Atom(Atom::Z) => Ok(HoloPoly::var(&v, 0)),
        Expr::Atom(Atom::W) => Ok(HoloPoly::var(&v, 1)),
        Expr::Atom(other) => Err(unsupported(format!("`{other}`"), space)),
        Expr::Lit(l) => Ok(HoloPoly::constant(&v, gaussian(l))),
        Expr::Neg(a) => Ok(-rec(a)?),
        Expr::Scaled(Scalar::Lit(l), a) => Ok(rec(a)?.scale(&gaussian(l))),
        Expr::Scaled(Scalar::Hbar, _) => Err(unsupported("`hbar`", space)),
        Expr::Add(a, b) => Ok(&rec(a)? + &rec(b)?),
        Expr::Sub(a, b) => Ok(&rec(a)? - &rec(b)?),
        Expr::Sym(a, b) => Ok(&rec(a)? * &rec(b)?),
        Expr::Bracket(a, b) => Ok(csphere::holo_bracket(&rec(a)?, &rec(b)?)),
        Expr::Wedge(..) | Expr::Trig(..) | Expr::Components(_) => Err(unsupported(format!("`{e}`"), space)),
    }
}

/// Observable of the right-translation field `w^k`, signed so that its
/// first component is `y^k`.
pub fn sphere_spin(k: usize) -> Result<S3Observable> {
    let frames = csphere::quaternion_frames();
    let sol = csphere::solve_s3_structure(&frames.right[k - 1])?;
    let y = csphere::spin_y();
    if sol.components[0] == y[k - 1] {
        Ok(sol)
    } else {
        csphere::s3_observable(sol.components.map(|c| -c))
    }
}

fn combine(a: &S3Observable, b: &S3Observable, sign: i64) -> Result<S3Observable> {
    let comps: [RealPoly; 3] = std::array::from_fn(|i| &a.components[i] + &b.components[i].scale(&int(sign)));
    csphere::s3_observable(comps)
}

fn eval_sphere(e: &Expr, space: Space) -> Result<S3Observable> {
    let rec = |x: &Expr| eval_sphere(x, space);
    match e {
        Expr::Atom(Atom::SphereSpin(k)) => sphere_spin(*k),
        Expr::Atom(other) => Err(unsupported(format!("`{other}`"), space)),
        Expr::Neg(a) => {
            let v = rec(a)?;
            csphere::s3_observable(v.components.map(|c| -c))
        }
        Expr::Scaled(c, a) => {
            let k = real_scalar(c, space)?;
            csphere::s3_observable(rec(a)?.components.map(|p| p.scale(&k)))
        }
        Expr::Add(a, b) => combine(&rec(a)?, &rec(b)?, 1),
        Expr::Sub(a, b) => combine(&rec(a)?, &rec(b)?, -1),
        Expr::Bracket(a, b) => csphere::s3_observable(csphere::s3_bracket(&rec(a)?, &rec(b)?)),
        _ => Err(unsupported(format!("`{e}`"), space)),
    }
}

/// Which product joins the factors of a quantized word.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Ordering {
    Sym,
    Antisym,
}

/// Linear combination of generator words with operator-valued
/// coefficients (to carry `hbar`).
type WordSum = Vec<(OpPoly, Vec<OpGen>)>;

fn op_gen(a: Atom, n: usize) -> Result<OpGen> {
    let check = |k: usize| {
        if k == 0 || k > n {
            Err(Error::IndexOutOfRange { index: k, n })
        } else {
            Ok(k - 1)
        }
    };
    match a {
        Atom::Pi(k) => Ok(OpGen::P(check(k)?)),
        Atom::Q(k) => Ok(OpGen::X(check(k)?)),
        Atom::Unit(k) => Ok(OpGen::I(check(k)?)),
        other => Err(Error::Unsupported(format!("`{other}` has no single-index operator"))),
    }
}

fn words(e: &Expr, n: usize, mode: Ordering) -> Result<WordSum> {
    let rec = |x: &Expr| words(x, n, mode);
    let scale = |ws: WordSum, c: &OpPoly| ws.into_iter().map(|(k, w)| (k.mul(c), w)).collect::<WordSum>();
    match e {
        Expr::Atom(Atom::Hbar) => Ok(vec![(OpPoly::scalar(crate::exact::HPoly::hbar()), vec![])]),
        Expr::Atom(a) => Ok(vec![(OpPoly::one(), vec![op_gen(*a, n)?])]),
        Expr::Lit(l) => Ok(vec![(OpPoly::scalar(gaussian(l).into()), vec![])]),
        Expr::Neg(a) => Ok(scale(rec(a)?, &OpPoly::scalar(GaussianRational::from(int(-1)).into()))),
        Expr::Scaled(Scalar::Lit(l), a) => Ok(scale(rec(a)?, &OpPoly::scalar(gaussian(l).into()))),
        Expr::Scaled(Scalar::Hbar, a) => Ok(scale(rec(a)?, &OpPoly::scalar(crate::exact::HPoly::hbar()))),
        Expr::Add(a, b) => Ok([rec(a)?, rec(b)?].concat()),
        Expr::Sub(a, b) => {
            let minus = OpPoly::scalar(GaussianRational::from(int(-1)).into());
            Ok([rec(a)?, scale(rec(b)?, &minus)].concat())
        }
        Expr::Sym(a, b) | Expr::Wedge(a, b) => {
            let wanted = matches!(e, Expr::Sym(..)) == (mode == Ordering::Sym);
            if !wanted {
                return Err(Error::Unsupported(format!(
                    "`{e}` mixes products; mode {} expects `{}`",
                    if mode == Ordering::Sym { "sym" } else { "antisym" },
                    if mode == Ordering::Sym { "(*)" } else { "(^)" }
                )));
            }
            let (left, right) = (rec(a)?, rec(b)?);
            let mut out = Vec::new();
            for (ca, wa) in &left {
                for (cb, wb) in &right {
                    out.push((ca.mul(cb), [wa.clone(), wb.clone()].concat()));
                }
            }
            Ok(out)
        }
        Expr::Bracket(..) | Expr::Trig(..) | Expr::Components(_) => {
            Err(Error::Unsupported(format!("`{e}` cannot be quantized as a word")))
        }
    }
}

/// Quantized operator and the words that entered it.
pub fn quantize_words(e: &Expr, n: usize, mode: Ordering) -> Result<(OpPoly, Vec<Vec<OpGen>>)> {
    let ws = words(e, n, mode)?;
    let mut total = OpPoly::zero();
    for (c, w) in &ws {
        let q = match mode {
            Ordering::Sym => opalg::quantize_sym(w),
            Ordering::Antisym => opalg::quantize_antisym(w),
        };
        total = total.plus(&c.mul(&q));
    }
    Ok((total, ws.into_iter().map(|(_, w)| w).collect()))
}
