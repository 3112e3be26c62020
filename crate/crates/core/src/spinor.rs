//! Two-component spinors and the vectors built from them.
//!
//! Conventions: the inner product is antilinear in its first argument,
//! `(U, V) = u1* v1 + u2* v2`; the anticonjugate of `V = (v1, v2)` is
//! `V̄ = (-v2*, v1*)`; the bilinear vector `L^{u,v}` has components
//! `(U, σ_k V)`. Dot and cross products of [`CVec3`] are bilinear (no
//! complex conjugation), matching how field vectors enter `σ·F`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Spinor {
    pub v1: C64,
    pub v2: C64,
}

impl Spinor {
    pub const fn new(v1: C64, v2: C64) -> Self {
        Spinor { v1, v2 }
    }

    pub fn from_real(v1: f64, v2: f64) -> Self {
        Spinor::new(C64::new(v1, 0.0), C64::new(v2, 0.0))
    }

    pub fn zero() -> Self {
        Spinor::default()
    }

    /// `(V, V) = |v1|² + |v2|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.v1.norm_sqr() + self.v2.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: C64) -> Spinor {
        Spinor::new(self.v1 * k, self.v2 * k)
    }

    pub fn anticonjugate(&self) -> Spinor {
        anticonjugate(self)
    }

    pub fn is_finite(&self) -> bool {
        self.v1.is_finite() && self.v2.is_finite()
    }

    pub(crate) fn to_array(self) -> [f64; 4] {
        [self.v1.re, self.v1.im, self.v2.re, self.v2.im]
    }

    pub(crate) fn from_array(a: &[f64; 4]) -> Self {
        Spinor::new(C64::new(a[0], a[1]), C64::new(a[2], a[3]))
    }
}

impl Add for Spinor {
    type Output = Spinor;
    fn add(self, o: Spinor) -> Spinor {
        Spinor::new(self.v1 + o.v1, self.v2 + o.v2)
    }
}

impl Sub for Spinor {
    type Output = Spinor;
    fn sub(self, o: Spinor) -> Spinor {
        Spinor::new(self.v1 - o.v1, self.v2 - o.v2)
    }
}

impl Neg for Spinor {
    type Output = Spinor;
    fn neg(self) -> Spinor {
        Spinor::new(-self.v1, -self.v2)
    }
}

impl Mul<C64> for Spinor {
    type Output = Spinor;
    fn mul(self, k: C64) -> Spinor {
        self.scale(k)
    }
}

impl Mul<f64> for Spinor {
    type Output = Spinor;
    fn mul(self, k: f64) -> Spinor {
        Spinor::new(self.v1 * k, self.v2 * k)
    }
}

/// Complex 3-vector: an external field `F` or one of the `L` vectors.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct CVec3 {
    pub x: C64,
    pub y: C64,
    pub z: C64,
}

impl CVec3 {
    pub const fn new(x: C64, y: C64, z: C64) -> Self {
        CVec3 { x, y, z }
    }

    pub fn from_real(v: [f64; 3]) -> Self {
        CVec3::new(v[0].into(), v[1].into(), v[2].into())
    }

    pub fn zero() -> Self {
        CVec3::default()
    }

    pub fn components(&self) -> [C64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_components(c: [C64; 3]) -> Self {
        CVec3::new(c[0], c[1], c[2])
    }

    /// Bilinear dot product `a·b = Σ a_k b_k`.
    pub fn dot(&self, o: &CVec3) -> C64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    /// `a² = a·a` (complex in general, may vanish for nonzero `a`).
    pub fn square(&self) -> C64 {
        self.dot(self)
    }

    pub fn cross(&self, o: &CVec3) -> CVec3 {
        CVec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn conj(&self) -> CVec3 {
        CVec3::new(self.x.conj(), self.y.conj(), self.z.conj())
    }

    pub fn scale(&self, k: C64) -> CVec3 {
        CVec3::new(self.x * k, self.y * k, self.z * k)
    }

    /// Hermitian length `sqrt(Σ |a_k|²)`.
    pub fn norm(&self) -> f64 {
        (self.x.norm_sqr() + self.y.norm_sqr() + self.z.norm_sqr()).sqrt()
    }

    pub fn re(&self) -> [f64; 3] {
        [self.x.re, self.y.re, self.z.re]
    }

    pub fn im(&self) -> [f64; 3] {
        [self.x.im, self.y.im, self.z.im]
    }

    pub fn max_imag(&self) -> f64 {
        self.x.im.abs().max(self.y.im.abs()).max(self.z.im.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for CVec3 {
    type Output = CVec3;
    fn add(self, o: CVec3) -> CVec3 {
        CVec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for CVec3 {
    type Output = CVec3;
    fn sub(self, o: CVec3) -> CVec3 {
        CVec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for CVec3 {
    type Output = CVec3;
    fn neg(self) -> CVec3 {
        CVec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<C64> for CVec3 {
    type Output = CVec3;
    fn mul(self, k: C64) -> CVec3 {
        self.scale(k)
    }
}

impl Mul<f64> for CVec3 {
    type Output = CVec3;
    fn mul(self, k: f64) -> CVec3 {
        CVec3::new(self.x * k, self.y * k, self.z * k)
    }
}

/// `(U, V) = u1* v1 + u2* v2`.
pub fn inner(u: &Spinor, v: &Spinor) -> C64 {
    u.v1.conj() * v.v1 + u.v2.conj() * v.v2
}

/// `V̄ = -iσ₂V* = (-v2*, v1*)`.
pub fn anticonjugate(v: &Spinor) -> Spinor {
    Spinor::new(-v.v2.conj(), v.v1.conj())
}

/// `L^{u,v} = (U, σV)`.
pub fn l_vector(u: &Spinor, v: &Spinor) -> CVec3 {
    let (u1, u2) = (u.v1.conj(), u.v2.conj());
    CVec3::new(
        u1 * v.v2 + u2 * v.v1,
        I * (u2 * v.v1 - u1 * v.v2),
        u1 * v.v1 - u2 * v.v2,
    )
}

/// `(σ·p)V` by direct matrix multiplication.
pub fn sigma_apply(p: &CVec3, v: &Spinor) -> Spinor {
    Spinor::new(
        p.z * v.v1 + (p.x - I * p.y) * v.v2,
        (p.x + I * p.y) * v.v1 - p.z * v.v2,
    )
}

/// `(σ·p)V` through the decomposition in the basis `{V, V̄}`:
/// `(σp)V = (V,V)⁻¹[(L^{v,v}·p)V + (L^{v̄,v}·p)V̄]`.
pub fn sigma_apply_decomposed(p: &CVec3, v: &Spinor) -> Result<Spinor> {
    let nn = v.norm_sqr();
    if nn == 0.0 {
        return Err(Error::domain("sigma_apply_decomposed: zero spinor"));
    }
    let vb = anticonjugate(v);
    let lvv = l_vector(v, v);
    let lbv = l_vector(&vb, v);
    Ok((v.scale(lvv.dot(p)) + vb.scale(lbv.dot(p))) * (1.0 / nn))
}

/// Coefficients `(c_v, c_v̄)` with `U = c_v V + c_v̄ V̄`.
pub fn decompose(u: &Spinor, v: &Spinor) -> Result<(C64, C64)> {
    let nn = v.norm_sqr();
    if nn == 0.0 {
        return Err(Error::domain("decompose: basis spinor is zero"));
    }
    let vb = anticonjugate(v);
    Ok((inner(v, u) / nn, inner(&vb, u) / nn))
}

/// Orthonormal triad attached to a spinor. `n` is the Bloch direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub e1: CVec3,
    pub e2: CVec3,
    pub n: CVec3,
}

impl Frame {
    /// Real parts of `(e1, e2, n)`.
    pub fn real(&self) -> ([f64; 3], [f64; 3], [f64; 3]) {
        (self.e1.re(), self.e2.re(), self.n.re())
    }
}

pub fn frame(v: &Spinor) -> Result<Frame> {
    let nn = v.norm_sqr();
    if nn == 0.0 {
        return Err(Error::domain("frame: zero spinor"));
    }
    let vb = anticonjugate(v);
    let l_vvb = l_vector(v, &vb);
    let l_vbv = l_vector(&vb, v);
    let k = C64::new(0.5 / nn, 0.0);
    Ok(Frame {
        e1: (l_vvb + l_vbv) * k,
        e2: (l_vvb - l_vbv) * (I * k),
        n: l_vector(v, v) * (1.0 / nn),
    })
}

/// Polar form `V = N e^{iα/2} (e^{-iφ/2} cos θ/2, e^{iφ/2} sin θ/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleRep {
    pub norm: f64,
    pub alpha: f64,
    pub theta: f64,
    pub phi: f64,
}

/// At the poles (`v1 = 0` or `v2 = 0`) the azimuth is fixed to `φ = 0` and
/// `α` carries the whole phase.
pub fn to_angles(v: &Spinor) -> Result<AngleRep> {
    let norm = v.norm();
    if norm == 0.0 {
        return Err(Error::domain("to_angles: zero spinor"));
    }
    let theta = 2.0 * v.v2.norm().atan2(v.v1.norm());
    let (alpha, phi) = if v.v2 == C64::new(0.0, 0.0) {
        (2.0 * v.v1.arg(), 0.0)
    } else if v.v1 == C64::new(0.0, 0.0) {
        (2.0 * v.v2.arg(), 0.0)
    } else {
        let (a1, a2) = (v.v1.arg(), v.v2.arg());
        (a1 + a2, a2 - a1)
    };
    Ok(AngleRep { norm, alpha, theta, phi })
}

pub fn from_angles(a: &AngleRep) -> Spinor {
    let (s, c) = (0.5 * a.theta).sin_cos();
    let g = C64::from_polar(a.norm, 0.5 * a.alpha);
    Spinor::new(
        g * C64::from_polar(c, -0.5 * a.phi),
        g * C64::from_polar(s, 0.5 * a.phi),
    )
}

/// Spherical basis `(e_θ, e_φ, n)` at angles `(θ, φ)`.
///
/// `e_φ = (-sin φ, cos φ, 0)`, so that `e_θ × e_φ = n`.
pub fn spherical_basis(theta: f64, phi: f64) -> ([f64; 3], [f64; 3], [f64; 3]) {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    (
        [ct * cp, ct * sp, -st],
        [-sp, cp, 0.0],
        [st * cp, st * sp, ct],
    )
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenPair {
    pub lambda: C64,
    pub vector: Spinor,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigen {
    pub pairs: Vec<EigenPair>,
    /// Set when `a = 0`: every spinor is an eigenvector with `λ = 0`.
    pub degenerate: bool,
}

/// Relative threshold below which `a²` is treated as zero.
const NULL_SQUARE_TOL: f64 = 1e-14;

/// Eigenpairs of `σ·a`, largest-real-part eigenvalue first.
///
/// For `a² ≠ 0` the eigenvalues are `±√(a²)` on the principal branch. For a
/// null vector (`a² = 0`, `a ≠ 0`) a single pair with `λ = 0` is returned.
/// Eigenvectors have unit norm and their first nonzero component is real
/// and positive.
pub fn eigenpairs(a: &CVec3) -> Eigen {
    let scale = a.norm();
    if scale == 0.0 {
        let pairs = vec![
            EigenPair { lambda: C64::new(0.0, 0.0), vector: Spinor::from_real(1.0, 0.0) },
            EigenPair { lambda: C64::new(0.0, 0.0), vector: Spinor::from_real(0.0, 1.0) },
        ];
        return Eigen { pairs, degenerate: true };
    }
    let a2 = a.square();
    if a2.norm() <= NULL_SQUARE_TOL * scale * scale {
        let v = eigenvector(a, C64::new(0.0, 0.0));
        return Eigen {
            pairs: vec![EigenPair { lambda: C64::new(0.0, 0.0), vector: v }],
            degenerate: false,
        };
    }
    let s = a2.sqrt();
    Eigen {
        pairs: vec![
            EigenPair { lambda: s, vector: eigenvector(a, s) },
            EigenPair { lambda: -s, vector: eigenvector(a, -s) },
        ],
        degenerate: false,
    }
}

/// Null vector of `σ·a - λ`: the larger of the two row-derived candidates
/// `(a3 + λ, a1 + i a2)` and `(a1 - i a2, λ - a3)`.
fn eigenvector(a: &CVec3, lambda: C64) -> Spinor {
    let c1 = Spinor::new(a.z + lambda, a.x + I * a.y);
    let c2 = Spinor::new(a.x - I * a.y, lambda - a.z);
    let v = if c1.norm_sqr() >= c2.norm_sqr() { c1 } else { c2 };
    normalize_phase(&v)
}

/// Unit norm with the first nonzero component real and positive.
pub fn normalize_phase(v: &Spinor) -> Spinor {
    let n = v.norm();
    if n == 0.0 {
        return *v;
    }
    let lead = if v.v1.norm() > 1e-14 * n { v.v1 } else { v.v2 };
    let phase = lead.conj() / lead.norm();
    v.scale(phase / n)
}

/// The vector `L^{ū,v}` whose `σ`-matrix has `V` and `U` as eigenvectors
/// with eigenvalues `(Ū,V)` and `-(Ū,V)`.
pub fn vector_from_eigenvectors(u: &Spinor, v: &Spinor) -> Result<CVec3> {
    let wedge = u.v1 * v.v2 - u.v2 * v.v1;
    if wedge.norm() <= 1e-12 * u.norm() * v.norm() {
        return Err(Error::domain("vector_from_eigenvectors: spinors are linearly dependent"));
    }
    Ok(l_vector(&anticonjugate(u), v))
}
