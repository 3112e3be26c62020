//! Special functions with complex parameters: Gauss ₂F₁, Kummer Φ (₁F₁),
//! parabolic cylinder `D_p` and Γ.
//!
//! Series stop once three consecutive terms fall below `1e-16·|sum|`, with a
//! hard cap of [`MAX_TERMS`]; hitting the cap is an error.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub const MAX_TERMS: usize = 20_000;
const REL_TOL: f64 = 1e-16;
const CONSECUTIVE: usize = 3;
/// Radius inside which the ₂F₁ Maclaurin series is summed directly.
const DIRECT_RADIUS: f64 = 0.75;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesResult {
    pub value: C64,
    pub terms_used: usize,
    /// Magnitude of the last term relative to the sum.
    pub truncation_estimate: f64,
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn is_nonpositive_integer(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Sums `Σ t_n` where `t_{n+1} = t_n · ratio(n)`, `t_0 = 1`.
fn sum_series(what: &str, mut ratio: impl FnMut(usize) -> C64) -> Result<SeriesResult> {
    let mut sum = c(1.0);
    let mut term = c(1.0);
    let mut small = 0;
    for n in 0..MAX_TERMS {
        term *= ratio(n);
        sum += term;
        let rel = if sum.norm() > 0.0 { term.norm() / sum.norm() } else { term.norm() };
        if !sum.is_finite() {
            return Err(Error::Accuracy(format!("{what}: series overflow after {n} terms")));
        }
        if rel < REL_TOL || term.norm() == 0.0 {
            small += 1;
            if small >= CONSECUTIVE {
                return Ok(SeriesResult { value: sum, terms_used: n + 2, truncation_estimate: rel });
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Accuracy(format!("{what}: no convergence within {MAX_TERMS} terms")))
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(z), Lanczos approximation with reflection for `Re z < 0.5`.
pub fn complex_gamma(z: C64) -> Result<C64> {
    if is_nonpositive_integer(z) {
        return Err(Error::domain(format!("gamma: pole at z = {}", z.re)));
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: C64) -> C64 {
    if z.re < 0.5 {
        return c(PI) / ((z * PI).sin() * gamma_unchecked(c(1.0) - z));
    }
    let z = z - 1.0;
    let mut x = c(LANCZOS[0]);
    for (k, &coef) in LANCZOS.iter().enumerate().skip(1) {
        x += coef / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    ((z + 0.5) * t.ln() - t).exp() * x * (2.0 * PI).sqrt()
}

/// 1/Γ(z); zero at the poles of Γ.
pub fn rgamma(z: C64) -> C64 {
    if is_nonpositive_integer(z) {
        c(0.0)
    } else {
        gamma_unchecked(z).inv()
    }
}

/// Raw Maclaurin series of ₁F₁(α; γ; z), no transformations.
pub fn hyp1f1_series(alpha: C64, gamma: C64, z: C64) -> Result<SeriesResult> {
    if is_nonpositive_integer(gamma) {
        return Err(Error::domain("kummer_phi: gamma is a non-positive integer"));
    }
    sum_series("kummer_phi", |n| {
        let k = n as f64;
        (alpha + k) / ((gamma + k) * (k + 1.0)) * z
    })
}

/// Kummer's confluent function Φ(α, γ; z) = ₁F₁(α; γ; z).
///
/// For `Re z < 0` the series is summed for `Φ(γ−α, γ; −z)` and multiplied by
/// `e^z`, which avoids cancellation between large alternating terms.
pub fn kummer_phi(alpha: C64, gamma: C64, z: C64) -> Result<C64> {
    if z.re < 0.0 {
        Ok(z.exp() * hyp1f1_series(gamma - alpha, gamma, -z)?.value)
    } else {
        Ok(hyp1f1_series(alpha, gamma, z)?.value)
    }
}

/// Raw Maclaurin series of ₂F₁(α, β; γ; z). Requires `|z| < 1`.
pub fn hyp2f1_series(a: C64, b: C64, g: C64, z: C64) -> Result<SeriesResult> {
    if is_nonpositive_integer(g) {
        return Err(Error::domain("gauss_2f1: gamma is a non-positive integer"));
    }
    if z.norm() >= 1.0 {
        return Err(Error::domain(format!("gauss_2f1: series needs |z| < 1, got |z| = {}", z.norm())));
    }
    sum_series("gauss_2f1", |n| {
        let k = n as f64;
        (a + k) * (b + k) / ((g + k) * (k + 1.0)) * z
    })
}

/// Gauss hypergeometric function ₂F₁(α, β; γ; z), principal branch with the
/// cut along `[1, ∞)`.
///
/// * `|z| ≤ 0.75`: direct series.
/// * `Re z < 0.5` and `|z/(z−1)| ≤ 0.75`: Pfaff transformation.
/// * otherwise: Taylor re-expansion of the hypergeometric ODE along the ray
///   from `0.5·z/|z|` to `z`.
///
/// `z = 1` is accepted when `Re(γ−α−β) > 0` (Gauss summation); other real
/// `z ≥ 1` lie on the cut and are rejected.
pub fn gauss_2f1(a: C64, b: C64, g: C64, z: C64) -> Result<C64> {
    if is_nonpositive_integer(g) {
        return Err(Error::domain("gauss_2f1: gamma is a non-positive integer"));
    }
    if !z.is_finite() {
        return Err(Error::domain("gauss_2f1: non-finite argument"));
    }
    if z.im == 0.0 && z.re >= 1.0 {
        let s = g - a - b;
        if z.re == 1.0 && s.re > 0.0 {
            return Ok(gamma_unchecked(g) * gamma_unchecked(s) * rgamma(g - a) * rgamma(g - b));
        }
        return Err(Error::domain(format!("gauss_2f1: z = {} lies on the branch cut", z.re)));
    }
    if z.norm() <= DIRECT_RADIUS {
        return Ok(hyp2f1_series(a, b, g, z)?.value);
    }
    let w = z / (z - 1.0);
    if z.re < 0.5 && w.norm() <= DIRECT_RADIUS {
        return Ok((c(1.0) - z).powc(-a) * hyp2f1_series(a, g - b, g, w)?.value);
    }
    continue_along_ray(a, b, g, z)
}

fn continue_along_ray(a: C64, b: C64, g: C64, z: C64) -> Result<C64> {
    let dir = z / z.norm();
    let mut x = dir * 0.5;
    let mut f = hyp2f1_series(a, b, g, x)?.value;
    let mut df = a * b / g * hyp2f1_series(a + 1.0, b + 1.0, g + 1.0, x)?.value;
    let ab = a * b;
    let s1 = a + b + 1.0;
    for _ in 0..10_000 {
        let remaining = z - x;
        if remaining.norm() <= 1e-15 * z.norm() {
            return Ok(f);
        }
        let radius = x.norm().min((c(1.0) - x).norm());
        let max_step = 0.5 * radius;
        let h = if remaining.norm() <= max_step { remaining } else { dir * max_step };
        let (p0, p1, p2) = (x * (c(1.0) - x), c(1.0) - x * 2.0, c(-1.0));
        let (q0, q1) = (g - s1 * x, -s1);
        // Taylor coefficients of w(x + h) from the ODE
        // x(1−x)w'' + [γ − (α+β+1)x]w' − αβ w = 0.
        let (mut cm, mut cn) = (f, df); // c_n, c_{n+1}
        let mut val = f + df * h;
        let mut der = df;
        let mut hp = h; // h^{n+1}
        let mut small = 0;
        let mut converged = false;
        for n in 0..MAX_TERMS {
            let k = n as f64;
            let rhs = ab * cm - p1 * (k + 1.0) * k * cn - p2 * k * (k - 1.0) * cm
                - q0 * (k + 1.0) * cn
                - q1 * k * cm;
            let cnext = rhs / (p0 * (k + 2.0) * (k + 1.0));
            der += cnext * hp * (k + 2.0);
            hp *= h;
            let term = cnext * hp;
            val += term;
            if term.norm() < REL_TOL * val.norm() || term.norm() == 0.0 {
                small += 1;
                if small >= CONSECUTIVE {
                    converged = true;
                    break;
                }
            } else {
                small = 0;
            }
            cm = cn;
            cn = cnext;
        }
        if !converged || !val.is_finite() {
            return Err(Error::Accuracy("gauss_2f1: analytic continuation did not converge".into()));
        }
        f = val;
        df = der;
        x += h;
    }
    Err(Error::Accuracy("gauss_2f1: too many continuation steps".into()))
}

/// Parabolic cylinder function `D_p(z)` from two Kummer functions:
///
/// `D_p(z) = 2^{p/2} e^{−z²/4} [ √π/Γ((1−p)/2) Φ(−p/2, 1/2; z²/2)
///           − √(2π) z/Γ(−p/2) Φ((1−p)/2, 3/2; z²/2) ]`.
pub fn parabolic_d(p: C64, z: C64) -> Result<C64> {
    let z2 = z * z * 0.5;
    let even = PI.sqrt() * rgamma((c(1.0) - p) * 0.5) * kummer_phi(-p * 0.5, c(0.5), z2)?;
    let odd = (2.0 * PI).sqrt() * z * rgamma(-p * 0.5) * kummer_phi((c(1.0) - p) * 0.5, c(1.5), z2)?;
    let v = c(2.0).powc(p * 0.5) * (-z * z * 0.25).exp() * (even - odd);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Accuracy(format!("parabolic_d: non-finite value at p = {p}, z = {z}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64, rel: f64) -> bool {
        (a - b).norm() <= rel * b.norm().max(1.0)
    }

    #[test]
    fn gamma_values() {
        assert!(close(complex_gamma(c(1.0)).unwrap(), c(1.0), 1e-14));
        assert!(close(complex_gamma(c(0.5)).unwrap(), c(PI.sqrt()), 1e-14));
        let g = complex_gamma(C64::new(1.0, 1.0)).unwrap();
        assert!((g.norm() - (PI / PI.sinh()).sqrt()).abs() < 1e-13);
        assert!((g.re - 0.498_015_7).abs() < 1e-7);
        assert!(complex_gamma(c(0.0)).is_err());
        assert!(complex_gamma(c(-3.0)).is_err());
        assert_eq!(rgamma(c(-2.0)), c(0.0));
        assert!(close(complex_gamma(c(6.0)).unwrap(), c(120.0), 1e-13));
    }

    #[test]
    fn gamma_recurrence() {
        for &z in &[C64::new(0.3, 2.0), C64::new(-1.7, 0.4), C64::new(4.2, -3.1)] {
            let lhs = complex_gamma(z + 1.0).unwrap();
            let rhs = z * complex_gamma(z).unwrap();
            assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm(), "z = {z}");
        }
    }

    #[test]
    fn gauss_closed_forms() {
        let (a, b, g) = (C64::new(0.3, 1.0), C64::new(-0.2, 0.5), C64::new(1.1, -0.4));
        assert_eq!(gauss_2f1(a, b, g, c(0.0)).unwrap(), c(1.0));
        let v = gauss_2f1(c(1.0), c(1.0), c(2.0), c(0.5)).unwrap();
        assert!(close(v, c(-(0.5f64).ln() / 0.5), 1e-14));
        assert!((v.re - 1.386_294_4).abs() < 1e-7);
        let v = gauss_2f1(c(2.0), b, b, c(0.25)).unwrap();
        assert!(close(v, c(0.75f64.powi(-2)), 1e-14));
        assert!(gauss_2f1(a, b, c(-2.0), c(0.1)).is_err());
    }

    #[test]
    fn gauss_outside_direct_disk() {
        // log closed form on and beyond the unit circle, principal branch
        for &z in &[
            C64::new(-0.9, 0.0),
            C64::from_polar(1.0, 2.5),
            C64::from_polar(1.0, 0.4),
            C64::new(0.95, 0.0),
            C64::new(3.0, 2.0),
            C64::new(-5.0, -0.5),
        ] {
            let got = gauss_2f1(c(1.0), c(1.0), c(2.0), z).unwrap();
            let want = -(c(1.0) - z).ln() / z;
            assert!((got - want).norm() <= 1e-12 * want.norm(), "z = {z}: {got} vs {want}");
        }
    }

    #[test]
    fn gauss_branch_cut_and_unit_point() {
        assert!(gauss_2f1(c(1.0), c(1.0), c(2.0), c(2.0)).is_err());
        assert!(gauss_2f1(c(1.0), c(1.0), c(2.0), c(1.0)).is_err());
        // Gauss summation: F(a,b;c;1) = Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b))
        let v = gauss_2f1(c(0.5), c(0.25), c(2.0), c(1.0)).unwrap();
        let g = |x: f64| complex_gamma(c(x)).unwrap();
        assert!(close(v, g(2.0) * g(1.25) / (g(1.5) * g(1.75)), 1e-13));
    }

    #[test]
    fn kummer_values() {
        let (a, g) = (C64::new(1.0, 1.0), c(2.5));
        assert_eq!(kummer_phi(a, g, c(0.0)).unwrap(), c(1.0));
        assert!(close(kummer_phi(g, g, c(1.0)).unwrap(), c(std::f64::consts::E), 1e-14));
        let z = C64::new(0.0, 3.0);
        let lhs = hyp1f1_series(a, g, z).unwrap().value;
        let rhs = z.exp() * hyp1f1_series(g - a, g, -z).unwrap().value;
        assert!((lhs - rhs).norm() < 1e-12 * lhs.norm());
        assert!(kummer_phi(a, c(-1.0), z).is_err());
        // large negative argument goes through the transform
        let v = kummer_phi(c(2.0), c(2.0), c(-30.0)).unwrap();
        assert!(close(v, c((-30.0f64).exp()), 1e-12));
    }

    #[test]
    fn parabolic_cylinder_values() {
        let d0 = parabolic_d(c(0.0), c(2.0)).unwrap();
        assert!(close(d0, c((-1.0f64).exp()), 1e-13));
        let d1 = parabolic_d(c(1.0), c(1.0)).unwrap();
        assert!(close(d1, c((-0.25f64).exp()), 1e-13));
        let (p, z) = (C64::new(0.5, 0.3), C64::new(1.0, 1.0));
        let r = parabolic_d(p + 1.0, z).unwrap() - z * parabolic_d(p, z).unwrap()
            + p * parabolic_d(p - 1.0, z).unwrap();
        assert!(r.norm() < 1e-10);
    }

    #[test]
    fn series_result_metadata() {
        let r = hyp2f1_series(c(1.0), c(1.0), c(2.0), c(0.5)).unwrap();
        assert!(r.terms_used > 10 && r.truncation_estimate < 1e-16);
        assert!(hyp2f1_series(c(1.0), c(1.0), c(2.0), c(1.5)).is_err());
    }
}
