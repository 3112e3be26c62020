//! Numerical building blocks: an adaptive Dormand–Prince integrator, finite
//! difference stencils and quadrature.

pub mod diff;
pub mod ode;
pub mod quad;

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64 as C64;

use crate::mat2::Mat2;
use crate::spinor::{CVec3, Spinor};

/// Values that can be differenced and integrated: a real vector space with a
/// norm.
pub trait Linear: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl Linear for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Linear for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Linear for Spinor {
    fn zero() -> Self {
        Spinor::zero()
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Linear for CVec3 {
    fn zero() -> Self {
        CVec3::zero()
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Linear for Mat2 {
    fn zero() -> Self {
        Mat2::default()
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Lagrange interpolation through the six samples nearest `t` on a strictly
/// increasing grid. `None` outside `[ts[0], ts[n-1]]`.
pub fn interpolate<T: Linear>(ts: &[f64], ys: &[T], t: f64) -> Option<T> {
    assert_eq!(ts.len(), ys.len());
    let n = ts.len();
    if n == 0 || t < ts[0] || t > ts[n - 1] {
        return None;
    }
    let width = n.min(6);
    let k = ts.partition_point(|&x| x <= t);
    let lo = k.saturating_sub(width / 2).min(n - width);
    Some(quad::lagrange(&ts[lo..lo + width], &ys[lo..lo + width], t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_is_exact_for_quintics_and_bounded() {
        let ts: Vec<f64> = (0..9).map(|k| 0.25 * k as f64).collect();
        let f = |t: f64| 1.0 - 2.0 * t + t.powi(5);
        let ys: Vec<f64> = ts.iter().map(|&t| f(t)).collect();
        for t in [0.0, 0.1, 0.9, 1.33, 1.99, 2.0] {
            assert!((interpolate(&ts, &ys, t).unwrap() - f(t)).abs() < 1e-12);
        }
        assert!(interpolate(&ts, &ys, 2.01).is_none());
    }
}
