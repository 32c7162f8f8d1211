//! Complex 2-space with holomorphic coordinates `z = q1 + i q2`,
//! `w = q3 + i q4`, and the spin observables of the 3-sphere.

mod kaehler;
mod quaternion;
mod s3;

use std::fmt;

use num_traits::{One, Zero};

use crate::cartan::PolyField;
use crate::exact::linalg::{nullspace, rank, rref};
use crate::exact::{rat, vars, GaussianRational, Poly, Rational, RealPoly, Vars};
use crate::{Error, Result};

pub use kaehler::{
    c2_family, c2_structure_field, complex_differentials, form_part, induced_bracket, kaehler_suite,
    pullback_to_circle_bundle, split_family,
    C2Family, ConstForm, KaehlerSuite,
};
pub use quaternion::{position, quaternion_frames, unit, Quaternion, QuaternionFrames};
pub use s3::{contact_forms, s3_bracket, s3_observable, solve_s3_structure, spin_y, S3Observable};

/// Polynomial in `z, w` with Gaussian rational coefficients.
pub type HoloPoly = Poly<GaussianRational>;

/// Polynomial in the real coordinates `q1..q4` with complex coefficients.
pub type ComplexPoly = Poly<GaussianRational>;

/// Vector field on `R^4` with real polynomial components.
pub type RealField = PolyField<RealPoly>;

pub fn holo_vars() -> Vars {
    vars(&["z", "w"])
}

pub fn real_vars() -> Vars {
    vars(&["q1", "q2", "q3", "q4"])
}

fn g(re: Rational, im: Rational) -> GaussianRational {
    GaussianRational::new(re, im)
}

/// `{f, g} = f_z g_w - f_w g_z`.
pub fn holo_bracket(f: &HoloPoly, h: &HoloPoly) -> HoloPoly {
    &(&f.diff(0) * &h.diff(1)) - &(&f.diff(1) * &h.diff(0))
}

/// `f` in real coordinates.
pub fn expand(f: &HoloPoly) -> ComplexPoly {
    let s = real_vars();
    let i = g(Rational::zero(), Rational::one());
    let var = |k| ComplexPoly::var(&s, k);
    let z = &var(0) + &var(1).scale(&i);
    let w = &var(2) + &var(3).scale(&i);
    f.substitute(&s, &[z, w], |c| c.clone())
}

/// Real and imaginary parts of a complex polynomial in real variables.
pub fn re_im(p: &ComplexPoly) -> (RealPoly, RealPoly) {
    (p.map_coeffs(|c| c.re.clone()), p.map_coeffs(|c| c.im.clone()))
}

/// `(Re f, Im f)` on `R^4`.
pub fn split_to_vector(f: &HoloPoly) -> (RealPoly, RealPoly) {
    re_im(&expand(f))
}

/// `X` with `2X = -f_w d_z + f_z d_w - conj(f)_wbar d_zbar + conj(f)_zbar d_wbar`,
/// written in real coordinates.
pub fn c2_hamiltonian_field(f: &HoloPoly) -> RealField {
    let half = g(rat(1, 2), Rational::zero());
    let (fz, fw) = (expand(&f.diff(0)).scale(&half), expand(&f.diff(1)).scale(&half));
    let (fz_re, fz_im) = re_im(&fz);
    let (fw_re, fw_im) = re_im(&fw);
    PolyField::new(vec![-fw_re, -fw_im, fz_re, fz_im])
}

/// `wbar f_z - zbar f_w + w conj(f)_zbar - z conj(f)_wbar` as a real
/// polynomial.
pub fn tangency_residual(f: &HoloPoly) -> RealPoly {
    let s = real_vars();
    let i = g(Rational::zero(), Rational::one());
    let var = |k| ComplexPoly::var(&s, k);
    let zbar = &var(0) - &var(1).scale(&i);
    let wbar = &var(2) - &var(3).scale(&i);
    let h = &(&wbar * &expand(&f.diff(0))) - &(&zbar * &expand(&f.diff(1)));
    let total = &h + &h.map_coeffs(|c| c.conj());
    let (re, im) = re_im(&total);
    debug_assert!(im.is_zero());
    re
}

/// The spin variables `x1 = -i z w`, `x2 = i (z^2 - w^2) / 2`,
/// `x3 = (z^2 + w^2) / 2`.
pub fn spin_x() -> [HoloPoly; 3] {
    let s = holo_vars();
    let m = |a, b, c| HoloPoly::monomial(&s, vec![a, b], c);
    let half = rat(1, 2);
    let x1 = m(1, 1, g(Rational::zero(), -Rational::one()));
    let x2 = &m(2, 0, g(Rational::zero(), half.clone())) + &m(0, 2, g(Rational::zero(), -half.clone()));
    let x3 = &m(2, 0, g(half.clone(), Rational::zero())) + &m(0, 2, g(half, Rational::zero()));
    [x1, x2, x3]
}

/// `C_i x^i` with real `C_i`.
#[derive(Clone, PartialEq, Debug)]
pub struct SpinObservable {
    pub coeffs: [Rational; 3],
}

impl SpinObservable {
    pub fn basis(i: usize) -> Self {
        let mut coeffs = [Rational::zero(), Rational::zero(), Rational::zero()];
        coeffs[i] = Rational::one();
        Self { coeffs }
    }

    pub fn to_holo(&self) -> HoloPoly {
        let x = spin_x();
        let mut out = HoloPoly::zero(&holo_vars());
        for (c, xi) in self.coeffs.iter().zip(&x) {
            out = &out + &xi.scale(&GaussianRational::real(c.clone()));
        }
        out
    }

    /// Reads the `C_i` back; fails when `f` is not a real combination of the
    /// spin variables.
    pub fn from_holo(f: &HoloPoly) -> Result<Self> {
        let x = spin_x();
        // x1 owns z w, x2 and x3 share z^2 and w^2.
        let c1 = f.coeff(&[1, 1]) / x[0].coeff(&[1, 1]);
        let zz = f.coeff(&[2, 0]);
        let c3 = GaussianRational::real(zz.re.clone() * Rational::from_integer(2.into()));
        let c2 = GaussianRational::real(zz.im.clone() * Rational::from_integer(2.into()));
        let parts = [c1, c2, c3];
        if parts.iter().any(|c| !c.is_real()) {
            return Err(Error::FamilyViolation(format!("{f} has complex spin coefficients")));
        }
        let out = Self {
            coeffs: parts.map(|c| c.re),
        };
        if out.to_holo() != *f {
            return Err(Error::FamilyViolation(format!("{f} is not a combination of spin variables")));
        }
        Ok(out)
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        Self::from_holo(&holo_bracket(&self.to_holo(), &other.to_holo()))
    }
}

impl fmt::Display for SpinObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| crate::exact::term_string(c, &format!("x{}", i + 1)))
            .collect();
        write!(f, "{}", crate::exact::join_terms(&terms))
    }
}

/// Kernel of the tangency constraint on holomorphic polynomials, over real
/// coefficient vectors.
#[derive(Clone, PartialEq, Debug)]
pub struct SpinKernel {
    pub max_deg: u32,
    /// Complex constants, which satisfy the constraint trivially.
    pub constants: Vec<HoloPoly>,
    /// Basis of the kernel modulo constants.
    pub spin: Vec<HoloPoly>,
}

impl SpinKernel {
    pub fn spin_dimension(&self) -> usize {
        self.spin.len()
    }

    pub fn dimension(&self) -> usize {
        self.constants.len() + self.spin.len()
    }
}

fn holo_monomials(max_deg: u32) -> Vec<[u32; 2]> {
    (0..=max_deg).flat_map(|d| (0..=d).map(move |a| [a, d - a])).collect()
}

/// Real coordinates of a holomorphic ansatz: `Re` then `Im` of each
/// monomial coefficient.
fn ansatz_element(monos: &[[u32; 2]], slot: usize) -> HoloPoly {
    let c = if slot.is_multiple_of(2) {
        GaussianRational::real(Rational::one())
    } else {
        GaussianRational::i()
    };
    HoloPoly::monomial(&holo_vars(), monos[slot / 2].to_vec(), c)
}

fn combine(monos: &[[u32; 2]], v: &[Rational]) -> HoloPoly {
    let mut out = HoloPoly::zero(&holo_vars());
    for (slot, x) in v.iter().enumerate() {
        if !x.is_zero() {
            out = &out + &ansatz_element(monos, slot).scale(&GaussianRational::real(x.clone()));
        }
    }
    out
}

/// Matrix of a real-linear map from the holomorphic ansatz to real
/// polynomials, one row per output monomial.
fn linear_map_rows(images: &[RealPoly]) -> Vec<Vec<Rational>> {
    let mut monos: Vec<Vec<u32>> = images.iter().flat_map(|p| p.terms().map(|(e, _)| e.clone())).collect();
    monos.sort();
    monos.dedup();
    monos
        .iter()
        .map(|e| images.iter().map(|p| p.coeff(e)).collect())
        .collect()
}

pub fn spin_kernel(max_deg: u32) -> SpinKernel {
    let monos = holo_monomials(max_deg);
    let n = 2 * monos.len();
    let images: Vec<RealPoly> = (0..n).map(|s| tangency_residual(&ansatz_element(&monos, s))).collect();
    let kernel = nullspace(&linear_map_rows(&images), n);
    // Slots 0 and 1 are the real and imaginary constants.
    let mut reduced: Vec<Vec<Rational>> = kernel
        .into_iter()
        .map(|mut v| {
            v[0] = Rational::zero();
            v[1] = Rational::zero();
            v
        })
        .collect();
    rref(&mut reduced, n);
    let spin = reduced.iter().map(|v| combine(&monos, v)).collect();
    let constants = vec![ansatz_element(&monos, 0), ansatz_element(&monos, 1)];
    SpinKernel {
        max_deg,
        constants,
        spin,
    }
}

/// Whether two families of holomorphic polynomials span the same real
/// subspace.
pub fn same_real_span(a: &[HoloPoly], b: &[HoloPoly]) -> bool {
    let deg = a.iter().chain(b).filter_map(|p| p.degree()).max().unwrap_or(0);
    let monos = holo_monomials(deg);
    let coords = |p: &HoloPoly| -> Vec<Rational> {
        monos
            .iter()
            .flat_map(|m| {
                let c = p.coeff(m);
                [c.re, c.im]
            })
            .collect()
    };
    let ra: Vec<Vec<Rational>> = a.iter().map(coords).collect();
    let rb: Vec<Vec<Rational>> = b.iter().map(coords).collect();
    let both: Vec<Vec<Rational>> = ra.iter().chain(&rb).cloned().collect();
    let n = 2 * monos.len();
    let r = rank(&both, n);
    r == rank(&ra, n) && r == rank(&rb, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn z() -> HoloPoly {
        HoloPoly::var(&holo_vars(), 0)
    }
    fn w() -> HoloPoly {
        HoloPoly::var(&holo_vars(), 1)
    }

    #[test]
    fn canonical_pair() {
        assert!(holo_bracket(&z(), &w()).is_one());
        let x = spin_x();
        assert!(holo_bracket(&x[0], &x[0]).is_zero());
    }

    #[test]
    fn splits() {
        let s = real_vars();
        assert_eq!(split_to_vector(&z()), (RealPoly::var(&s, 0), RealPoly::var(&s, 1)));
        let i = HoloPoly::constant(&holo_vars(), GaussianRational::i());
        assert_eq!(split_to_vector(&i), (RealPoly::zero(&s), RealPoly::one(&s)));
        let q = |k| RealPoly::var(&s, k);
        let expect = (&(&(&(&q(0) * &q(0)) - &(&q(1) * &q(1))) + &(&q(2) * &q(2))) - &(&q(3) * &q(3))).scale(&rat(1, 2));
        assert_eq!(split_to_vector(&spin_x()[2]).0, expect);
    }

    #[test]
    fn fields() {
        let s = real_vars();
        let f = c2_hamiltonian_field(&z());
        let half = RealPoly::constant(&s, rat(1, 2));
        assert_eq!(f.components(), &[RealPoly::zero(&s), RealPoly::zero(&s), half, RealPoly::zero(&s)]);
        assert!(c2_hamiltonian_field(&HoloPoly::constant(&holo_vars(), GaussianRational::i())).is_zero());
    }

    #[test]
    fn residuals() {
        for x in spin_x() {
            assert!(tangency_residual(&x).is_zero());
        }
        assert!(!tangency_residual(&z()).is_zero());
        assert!(tangency_residual(&HoloPoly::one(&holo_vars())).is_zero());
    }

    #[test]
    fn residual_is_four_times_radial_component() {
        let s = real_vars();
        let f = &(&z() * &w()) + &(&z() * &z()).scale(&GaussianRational::new(int(2), int(-1)));
        let x = c2_hamiltonian_field(&f);
        let mut radial = RealPoly::zero(&s);
        for k in 0..4 {
            radial = &radial + &(&RealPoly::var(&s, k) * x.component(k));
        }
        assert_eq!(tangency_residual(&f), radial.scale(&int(4)));
    }

    #[test]
    fn kernels() {
        let k1 = spin_kernel(1);
        assert_eq!(k1.spin_dimension(), 0);
        let k2 = spin_kernel(2);
        assert_eq!(k2.spin_dimension(), 3);
        assert!(same_real_span(&k2.spin, &spin_x()));
    }

    #[test]
    fn spin_round_trip() {
        let o = SpinObservable {
            coeffs: [int(1), rat(-2, 3), int(5)],
        };
        assert_eq!(SpinObservable::from_holo(&o.to_holo()).unwrap(), o);
        assert!(SpinObservable::from_holo(&z()).is_err());
    }
}
