//! Quaternions over any commutative ring, and the frames on `R^4` obtained
//! from left and right multiplication by the imaginary units.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{real_vars, RealField};
use crate::cartan::PolyField;
use crate::exact::{Rational, RealPoly};

/// `a + b i + c j + d k`.
#[derive(Clone, PartialEq, Debug)]
pub struct Quaternion<T = Rational> {
    pub parts: [T; 4],
}

impl<T> Quaternion<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Self { parts: [a, b, c, d] }
    }
}

impl<T> Mul for Quaternion<T>
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let [a1, b1, c1, d1] = self.parts;
        let [a2, b2, c2, d2] = rhs.parts;
        let m = |x: &T, y: &T| x.clone() * y.clone();
        Self::new(
            m(&a1, &a2) - m(&b1, &b2) - m(&c1, &c2) - m(&d1, &d2),
            m(&a1, &b2) + m(&b1, &a2) + m(&c1, &d2) - m(&d1, &c2),
            m(&a1, &c2) - m(&b1, &d2) + m(&c1, &a2) + m(&d1, &b2),
            m(&a1, &d2) + m(&b1, &c2) - m(&c1, &b2) + m(&d1, &a2),
        )
    }
}

impl<T: Neg<Output = T>> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        let [a, b, c, d] = self.parts;
        Self::new(-a, -b, -c, -d)
    }
}

impl<T: fmt::Display> fmt::Display for Quaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.parts;
        write!(f, "({a}) + ({b})i + ({c})j + ({d})k")
    }
}

/// The unit `1, i, j, k` with index `0..4`, with coefficients in `T`.
pub fn unit<T: Clone>(index: usize, zero: &T, one: &T) -> Quaternion<T> {
    let mut parts = [zero.clone(), zero.clone(), zero.clone(), zero.clone()];
    parts[index] = one.clone();
    Quaternion { parts }
}

/// `q1 + i q2 + j q3 + k q4` over the polynomial ring.
pub fn position() -> Quaternion<RealPoly> {
    let s = real_vars();
    Quaternion {
        parts: std::array::from_fn(|k| RealPoly::var(&s, k)),
    }
}

fn as_field(q: Quaternion<RealPoly>) -> RealField {
    PolyField::new(q.parts.to_vec())
}

/// Radial field and the six translation fields.
#[derive(Clone, PartialEq, Debug)]
pub struct QuaternionFrames {
    pub radial: RealField,
    /// Left multiplication by `i, j, k`.
    pub left: [RealField; 3],
    /// Right multiplication by `i, j, k`.
    pub right: [RealField; 3],
}

pub fn quaternion_frames() -> QuaternionFrames {
    let s = real_vars();
    let (zero, one) = (RealPoly::zero(&s), RealPoly::one(&s));
    let q = position();
    let left = std::array::from_fn(|k| as_field(unit(k + 1, &zero, &one) * q.clone()));
    let right = std::array::from_fn(|k| as_field(q.clone() * unit(k + 1, &zero, &one)));
    QuaternionFrames {
        radial: as_field(q),
        left,
        right,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn u(k: usize) -> Quaternion {
        unit(k, &Rational::zero(), &Rational::one())
    }

    #[test]
    fn unit_relations() {
        let minus_one = -u(0);
        for k in 1..4 {
            assert_eq!(u(k) * u(k), minus_one);
        }
        assert_eq!(u(1) * u(2) * u(3), minus_one);
        assert_eq!(u(1) * u(2), u(3));
    }

    fn arb() -> impl Strategy<Value = Quaternion> {
        proptest::array::uniform4(-5i64..5).prop_map(|p| Quaternion { parts: p.map(int) })
    }

    proptest! {
        #[test]
        fn associative(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a * (b * c));
        }
    }
}
