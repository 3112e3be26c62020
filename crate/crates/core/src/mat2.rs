//! 2×2 complex matrices: transformation matrices and evolution operators.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::spinor::{CVec3, Spinor};

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Row-major `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::scalar(C64::new(1.0, 0.0))
    }

    pub fn scalar(s: C64) -> Self {
        Mat2::new(s, C64::new(0.0, 0.0), C64::new(0.0, 0.0), s)
    }

    /// Pauli matrix `σ_k`, `k ∈ {1, 2, 3}`.
    pub fn sigma(k: usize) -> Self {
        let (o, z) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        match k {
            1 => Mat2::new(z, o, o, z),
            2 => Mat2::new(z, -I, I, z),
            3 => Mat2::new(o, z, z, -o),
            _ => panic!("Pauli index must be 1, 2 or 3, got {k}"),
        }
    }

    /// `σ·p`.
    pub fn sigma_dot(p: &CVec3) -> Self {
        Mat2::new(p.z, p.x - I * p.y, p.x + I * p.y, -p.z)
    }

    /// `a0·I - i σ·a`.
    pub fn from_quaternion(a0: C64, a: &CVec3) -> Self {
        Mat2::scalar(a0) - Mat2::sigma_dot(a).scale(I)
    }

    /// Decomposition `M = a0·I - i σ·a`, inverse of [`Mat2::from_quaternion`].
    pub fn to_quaternion(&self) -> (C64, CVec3) {
        let a0 = 0.5 * (self.a + self.d);
        // σ·a = i(M - a0)
        let s = (*self - Mat2::scalar(a0)).scale(I);
        let ax = 0.5 * (s.b + s.c);
        let ay = 0.5 * I * (s.b - s.c);
        let az = 0.5 * (s.a - s.d);
        (a0, CVec3::new(ax, ay, az))
    }

    /// Outer product `V U⁺`.
    pub fn outer(v: &Spinor, u: &Spinor) -> Self {
        Mat2::new(
            v.v1 * u.v1.conj(),
            v.v1 * u.v2.conj(),
            v.v2 * u.v1.conj(),
            v.v2 * u.v2.conj(),
        )
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> C64 {
        self.a + self.d
    }

    pub fn dagger(&self) -> Self {
        Mat2::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    pub fn scale(&self, k: C64) -> Self {
        Mat2::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }

    pub fn apply(&self, v: &Spinor) -> Spinor {
        Spinor::new(self.a * v.v1 + self.b * v.v2, self.c * v.v1 + self.d * v.v2)
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.norm() == 0.0 {
            return None;
        }
        Some(Mat2::new(self.d, -self.b, -self.c, self.a).scale(det.inv()))
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr()).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    pub(crate) fn to_array(self) -> [f64; 8] {
        [
            self.a.re, self.a.im, self.b.re, self.b.im, self.c.re, self.c.im, self.d.re, self.d.im,
        ]
    }

    pub(crate) fn from_array(x: &[f64; 8]) -> Self {
        Mat2::new(
            C64::new(x[0], x[1]),
            C64::new(x[2], x[3]),
            C64::new(x[4], x[5]),
            C64::new(x[6], x[7]),
        )
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, k: f64) -> Mat2 {
        Mat2::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }
}

impl Mul<Spinor> for Mat2 {
    type Output = Spinor;
    fn mul(self, v: Spinor) -> Spinor {
        self.apply(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinor::{inner, l_vector, sigma_apply};

    #[test]
    fn pauli_algebra() {
        let (s1, s2, s3) = (Mat2::sigma(1), Mat2::sigma(2), Mat2::sigma(3));
        assert_eq!(s1 * s1, Mat2::identity());
        assert_eq!(s1 * s2, s3.scale(I));
        assert_eq!(s2 * s3, s1.scale(I));
        assert_eq!(s1.det(), C64::new(-1.0, 0.0));
    }

    #[test]
    fn sigma_dot_matches_sigma_apply() {
        let p = CVec3::new(C64::new(0.3, 1.0), C64::new(-2.0, 0.1), C64::new(0.7, -0.4));
        let v = Spinor::new(C64::new(1.0, -0.5), C64::new(0.25, 2.0));
        assert!((Mat2::sigma_dot(&p).apply(&v) - sigma_apply(&p, &v)).norm() < 1e-15);
        // det(σ·a) = -a²
        assert!((Mat2::sigma_dot(&p).det() + p.square()).norm() < 1e-14);
    }

    #[test]
    fn quaternion_round_trip() {
        let a0 = C64::new(0.2, -0.3);
        let a = CVec3::new(C64::new(1.0, 0.5), C64::new(-0.1, 0.0), C64::new(0.0, 2.0));
        let (b0, b) = Mat2::from_quaternion(a0, &a).to_quaternion();
        assert!((b0 - a0).norm() < 1e-15 && (b - a).norm() < 1e-15);
        // det = a0² + a²
        let m = Mat2::from_quaternion(a0, &a);
        assert!((m.det() - (a0 * a0 + a.square())).norm() < 1e-14);
    }

    #[test]
    fn l_matrix_identity() {
        // σ·L^{u,v} = 2 V U⁺ - (U,V) I
        let u = Spinor::new(C64::new(0.4, 1.2), C64::new(-0.7, 0.3));
        let v = Spinor::new(C64::new(1.5, -0.2), C64::new(0.1, 0.9));
        let lhs = Mat2::sigma_dot(&l_vector(&u, &v));
        let rhs = Mat2::outer(&v, &u).scale(C64::new(2.0, 0.0)) - Mat2::scalar(inner(&u, &v));
        assert!((lhs - rhs).norm() < 1e-14);
    }
}
