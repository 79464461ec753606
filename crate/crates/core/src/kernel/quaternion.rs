//! Scalar quaternion arithmetic.
//!
//! Quaternions double as the entry type for all matrix algebras: real and
//! complex scalars are the subfields with vanishing `x,y,z` (resp. `y,z`)
//! components, so a single matrix kernel serves all three rings.

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// A quaternion `w + x·i + y·j + z·k` with `i² = j² = k² = −1`, `ij = k`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const Q_ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
pub const Q_ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
pub const Q_I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
pub const Q_J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
pub const Q_K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

impl Quaternion {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(self, t: f64) -> Self {
        Quaternion::new(self.w * t, self.x * t, self.y * t, self.z * t)
    }

    /// Euclidean dot product of the four real components.
    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn max_abs(self) -> f64 {
        self.w.abs().max(self.x.abs()).max(self.y.abs()).max(self.z.abs())
    }

    pub fn is_zero_within(self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    /// Inverse of a nonzero quaternion.
    pub fn inverse(self) -> Self {
        let n = self.norm_sq();
        self.conj().scale(1.0 / n)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unit_table() {
        assert_eq!(Q_I * Q_J, Q_K);
        assert_eq!(Q_J * Q_K, Q_I);
        assert_eq!(Q_K * Q_I, Q_J);
        assert_eq!(Q_I * Q_I, -Q_ONE);
        assert_eq!(Q_J * Q_J, -Q_ONE);
        assert_eq!(Q_K * Q_K, -Q_ONE);
    }

    fn arb_quat() -> impl Strategy<Value = Quaternion> {
        (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64)
            .prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
    }

    proptest! {
        #[test]
        fn norm_multiplicative(p in arb_quat(), q in arb_quat()) {
            let lhs = (p * q).norm();
            let rhs = p.norm() * q.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs));
        }

        #[test]
        fn conj_reverses_products(p in arb_quat(), q in arb_quat()) {
            let lhs = (p * q).conj();
            let rhs = q.conj() * p.conj();
            prop_assert!((lhs - rhs).max_abs() <= 1e-12 * (1.0 + lhs.max_abs()));
        }

        #[test]
        fn associative(p in arb_quat(), q in arb_quat(), r in arb_quat()) {
            let lhs = (p * q) * r;
            let rhs = p * (q * r);
            prop_assert!((lhs - rhs).max_abs() <= 1e-12 * (1.0 + lhs.max_abs()));
        }
    }
}
