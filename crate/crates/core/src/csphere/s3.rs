//! The 3-symplectic structure `omega^i = -d theta^i` built from the left
//! translation frame, and its vector-valued observables on `R^4`.


use super::{quaternion_frames, real_vars, RealField};
use crate::cartan::{contract, ext_d, PolyForm};
use crate::exact::linalg::inverse;
use crate::exact::{rat, Rational, RealPoly};
use crate::{Error, Result};

/// `theta^i = v^i_flat / 2`, so that `d theta^1 = dq1∧dq2 + dq3∧dq4` and
/// cyclically.
pub fn contact_forms() -> [PolyForm<RealPoly>; 3] {
    let frames = quaternion_frames();
    frames.left.map(|v| {
        let mut form = PolyForm::zero(4, 1);
        for (k, c) in v.components().iter().enumerate() {
            form.add_term(vec![k], c.scale(&rat(1, 2)));
        }
        form
    })
}

/// Observable with its Hamiltonian field.
#[derive(Clone, PartialEq, Debug)]
pub struct S3Observable {
    pub field: RealField,
    pub components: [RealPoly; 3],
}

/// Polynomial antiderivative of a closed 1-form along rays from the origin.
fn integrate(alpha: &PolyForm<RealPoly>) -> RealPoly {
    let s = real_vars();
    let mut out = RealPoly::zero(&s);
    for j in 0..4 {
        let Some(c) = alpha.get(&[j]) else { continue };
        for (e, k) in c.terms() {
            let mut e = e.clone();
            let deg: u32 = e.iter().sum();
            e[j] += 1;
            out.add_term(e, k.clone() / Rational::from_integer((deg + 1).into()));
        }
    }
    out
}

/// Solves `df^i = X ⌟ d theta^i` for each `i`, normalized with zero
/// constant term.
pub fn solve_s3_structure(x: &RealField) -> Result<S3Observable> {
    let thetas = contact_forms();
    let mut comps = Vec::with_capacity(3);
    for (i, theta) in thetas.iter().enumerate() {
        let alpha = contract(x, &ext_d(theta)?)?;
        let curl = ext_d(&alpha)?;
        if !curl.is_zero() {
            return Err(Error::NotHamiltonian(format!(
                "X ⌟ dtheta^{} is not closed: d of it is {}",
                i + 1,
                form_string(&curl)
            )));
        }
        let f = integrate(&alpha);
        debug_assert_eq!(ext_d(&PolyForm::function(4, f.clone()))?, alpha);
        comps.push(f);
    }
    let components: [RealPoly; 3] = comps.try_into().expect("three components");
    Ok(S3Observable {
        field: x.clone(),
        components,
    })
}

/// Observable with the given components, its field read off from
/// `df^1 = X ⌟ d theta^1` and checked against the other two equations.
pub fn s3_observable(components: [RealPoly; 3]) -> Result<S3Observable> {
    let s = real_vars();
    let thetas = contact_forms();
    let d1 = ext_d(&thetas[0])?;
    let m = d1.matrix(&RealPoly::zero(&s));
    // (X ⌟ w)_k = sum_j X^j m[j][k]
    let mt: Vec<Vec<Rational>> = (0..4).map(|k| (0..4).map(|j| m[j][k].constant_term()).collect()).collect();
    let inv = inverse(&mt).expect("d theta^1 is nondegenerate");
    let grad: Vec<RealPoly> = (0..4).map(|k| components[0].diff(k)).collect();
    let field = RealField::new(
        (0..4)
            .map(|j| (0..4).fold(RealPoly::zero(&s), |acc, k| &acc + &grad[k].scale(&inv[j][k])))
            .collect(),
    );
    for (i, theta) in thetas.iter().enumerate() {
        let lhs = ext_d(&PolyForm::function(4, components[i].clone()))?;
        let rhs = contract(&field, &ext_d(theta)?)?;
        if lhs != rhs {
            return Err(Error::NotHamiltonian(format!(
                "components do not share one field: equation {} fails",
                i + 1
            )));
        }
    }
    Ok(S3Observable { field, components })
}

/// `{f, g}^i = X_f(g^i)`.
pub fn s3_bracket(f: &S3Observable, g: &S3Observable) -> [RealPoly; 3] {
    g.components.clone().map(|c| f.field.apply(&c))
}

/// `y1 = ((q1)^2 + (q2)^2 - (q3)^2 - (q4)^2) / 2`, `y2 = q2 q3 - q1 q4`,
/// `y3 = q1 q3 + q2 q4`.
pub fn spin_y() -> [RealPoly; 3] {
    let s = real_vars();
    let q = |k| RealPoly::var(&s, k);
    let sq = |k| &q(k) * &q(k);
    let y1 = (&(&sq(0) + &sq(1)) - &(&sq(2) + &sq(3))).scale(&rat(1, 2));
    let y2 = &(&q(1) * &q(2)) - &(&q(0) * &q(3));
    let y3 = &(&q(0) * &q(2)) + &(&q(1) * &q(3));
    [y1, y2, y3]
}

pub(crate) fn form_string(w: &PolyForm<RealPoly>) -> String {
    let terms: Vec<String> = w
        .terms()
        .map(|(idx, c)| {
            let basis: Vec<String> = idx.iter().map(|k| format!("dq{}", k + 1)).collect();
            format!("({c})*{}", basis.join("^"))
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
