//! The Bloch-vector form of the equation and the Hamiltonian form of its
//! real-field reduction.

use std::cell::Cell;

use super::{check_tol, uniform_grid};
use crate::error::{Error, Result};
use crate::field::{split_kg, Field};
use crate::numeric::ode::{self, OdeOptions, OdeSolution};
use crate::numeric::{diff, quad};

/// Samples used by [`bloch_propagate`]; dense enough for the phase and norm
/// quadratures.
pub const BLOCH_SAMPLES: usize = 401;
/// `sin²θ` below this leaves the azimuth, and hence the phase, undefined.
const POLE_GUARD: f64 = 1e-20;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochState {
    /// Unit direction `L^{v,v}/(V,V)`.
    pub n: [f64; 3],
    /// Overall phase.
    pub alpha: f64,
    /// `√(V,V)`, positive.
    pub norm: f64,
}

impl BlochState {
    pub fn from_spinor(v: &crate::spinor::Spinor) -> Result<Self> {
        let a = crate::spinor::to_angles(v)?;
        let (st, ct) = a.theta.sin_cos();
        let (sp, cp) = a.phi.sin_cos();
        Ok(BlochState { n: [st * cp, st * sp, ct], alpha: a.alpha, norm: a.norm })
    }
}

#[derive(Clone, Debug)]
pub struct BlochPath {
    pub times: Vec<f64>,
    pub n: Vec<[f64; 3]>,
    /// Phase by quadrature; `None` when the path touches a pole, where the
    /// azimuth is undefined.
    pub alpha: Option<Vec<f64>>,
    pub norm: Vec<f64>,
    /// Largest `| |n| − 1 |` before renormalization.
    pub drift: f64,
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// `dn/dt = 2[G − (G·n)n] + 2 K×n` with `F = K + iG`.
pub fn bloch_rhs(field: &dyn Field, t: f64, n: &[f64; 3]) -> Result<[f64; 3]> {
    let (k, g) = split_kg(&field.eval(t)?);
    let gn = dot(&g, n);
    let kx = cross(&k, n);
    Ok(std::array::from_fn(|j| 2.0 * (g[j] - gn * n[j]) + 2.0 * kx[j]))
}

pub fn bloch_propagate(field: &dyn Field, state0: BlochState, window: (f64, f64), tol: f64) -> Result<BlochPath> {
    check_tol(tol)?;
    if !(window.0.is_finite() && window.1.is_finite() && window.0 != window.1) {
        return Err(Error::Invalid("empty window".into()));
    }
    let n0 = state0.n;
    if (dot(&n0, &n0).sqrt() - 1.0).abs() > 1e-10 {
        return Err(Error::Invalid("initial Bloch vector must have unit length".into()));
    }
    if !(state0.norm > 0.0) {
        return Err(Error::Invalid("initial norm must be positive".into()));
    }
    let times = uniform_grid(window.0, window.1, BLOCH_SAMPLES);
    let sol = ode::integrate(|t, n: &[f64; 3]| bloch_rhs(field, t, n), window.0, n0, &times, &OdeOptions::with_tol(tol))?;
    let mut drift = 0.0f64;
    let n: Vec<[f64; 3]> = sol
        .y_out
        .iter()
        .map(|m| {
            let len = dot(m, m).sqrt();
            drift = drift.max((len - 1.0).abs());
            m.map(|x| x / len)
        })
        .collect();

    let mut phase_rate = Vec::with_capacity(n.len());
    let mut log_norm_rate = Vec::with_capacity(n.len());
    let mut at_pole = false;
    for (&t, m) in times.iter().zip(&n) {
        let (k, g) = split_kg(&field.eval(t)?);
        log_norm_rate.push(dot(&g, m));
        let s2 = m[0] * m[0] + m[1] * m[1];
        if s2 < POLE_GUARD {
            at_pole = true;
            continue;
        }
        let dn = bloch_rhs(field, t, m)?;
        let phi_rate = (m[0] * dn[1] - m[1] * dn[0]) / s2;
        phase_rate.push(phi_rate * m[2] - 2.0 * dot(&k, m));
    }
    let alpha = (!at_pole).then(|| quad::cumulative(&times, &phase_rate).into_iter().map(|a| state0.alpha + a).collect());
    let norm = quad::cumulative(&times, &log_norm_rate).into_iter().map(|l| state0.norm * l.exp()).collect();
    Ok(BlochPath { times: sol.t_out, n, alpha, norm, drift })
}

/// Result of integrating the canonical pair `(q, p)` alongside the angle
/// pair `(θ, Φ)`.
#[derive(Clone, Debug)]
pub struct HamiltonianReport {
    pub times: Vec<f64>,
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub theta: Vec<f64>,
    pub big_phi: Vec<f64>,
    /// Hamiltonian along the `(q, p)` path.
    pub energy: Vec<f64>,
    /// `max(|q − cos θ|, |p + Φ|)`.
    pub max_deviation: f64,
    /// Largest residual of the second-order equation for `θ` at interior
    /// samples where `g ≠ 0`.
    pub theta_equation_residual: f64,
    /// Set when `|q|` approached 1 and the window was cut short there.
    pub truncated_at: Option<f64>,
}

/// Output grid of [`hamiltonian_check`], fine enough for 5-point second
/// differences at the 1e-5 level.
pub const HAMILTONIAN_SAMPLES: usize = 1001;

/// `|q|` closer to 1 than this stops the integration.
const EDGE_GUARD: f64 = 1e-9;

/// `H = 2g√(1−q²) cos p + 2qf`.
pub fn hamiltonian(f: f64, g: f64, q: f64, p: f64) -> f64 {
    2.0 * g * (1.0 - q * q).sqrt() * p.cos() + 2.0 * q * f
}

/// Integrates Hamilton's equations for `H(q, p)` and, independently, the
/// angle equations `θ̇ = −2g sin Φ`, `Φ̇ sin θ = 2f sin θ − 2g cos Φ cos θ`,
/// and compares them under `q = cos θ`, `p = −Φ`.
pub fn hamiltonian_check(
    f: impl Fn(f64) -> f64,
    g: impl Fn(f64) -> f64,
    q0: f64,
    p0: f64,
    window: (f64, f64),
    tol: f64,
) -> Result<HamiltonianReport> {
    check_tol(tol)?;
    if !(q0.abs() < 1.0) {
        return Err(Error::Invalid(format!("|q0| must be below 1, got {q0}")));
    }
    let (t0, t1) = window;
    if !(t1 > t0) {
        return Err(Error::Invalid("window must be increasing".into()));
    }
    let opts = OdeOptions::with_tol(tol);
    let edge = Cell::new(f64::NAN);
    let canon = |t: f64, y: &[f64; 2]| {
        let (q, p) = (y[0], y[1]);
        if q.abs() >= 1.0 - EDGE_GUARD {
            edge.set(t);
            return Err(Error::domain("coordinate singularity |q| = 1"));
        }
        let s = (1.0 - q * q).sqrt();
        let (fv, gv) = (f(t), g(t));
        Ok([-2.0 * gv * s * p.sin(), 2.0 * gv * q / s * p.cos() - 2.0 * fv])
    };
    let angles = |t: f64, y: &[f64; 2]| {
        let (th, ph) = (y[0], y[1]);
        let st = th.sin();
        if st.abs() <= EDGE_GUARD {
            edge.set(t);
            return Err(Error::domain("coordinate singularity sin θ = 0"));
        }
        let (fv, gv) = (f(t), g(t));
        Ok([-2.0 * gv * ph.sin(), 2.0 * fv - 2.0 * gv * ph.cos() * th.cos() / st])
    };
    let mut times = uniform_grid(t0, t1, HAMILTONIAN_SAMPLES);
    let y_can = [q0, p0];
    let y_ang = [q0.acos(), -p0];
    let run = |times: &[f64]| -> Result<(OdeSolution<2>, OdeSolution<2>)> {
        Ok((ode::integrate(canon, t0, y_can, times, &opts)?, ode::integrate(angles, t0, y_ang, times, &opts)?))
    };
    let mut truncated_at = None;
    let (can, ang) = match run(&times) {
        Ok(r) => r,
        Err(e) => {
            let te = edge.get();
            if te.is_nan() {
                return Err(e);
            }
            // keep a margin of a few percent before the edge
            let cut = t0 + 0.95 * (te - t0);
            times.retain(|&t| t <= cut);
            if times.len() < 5 {
                return Err(Error::Integration { t: te, msg: "|q| reaches 1 immediately".into() });
            }
            truncated_at = Some(te);
            run(&times)?
        }
    };

    let (q, p): (Vec<f64>, Vec<f64>) = can.y_out.iter().map(|y| (y[0], y[1])).unzip();
    let (theta, big_phi): (Vec<f64>, Vec<f64>) = ang.y_out.iter().map(|y| (y[0], y[1])).unzip();
    let max_deviation = (0..q.len())
        .map(|k| (q[k] - theta[k].cos()).abs().max((p[k] + big_phi[k]).abs()))
        .fold(0.0, f64::max);
    let energy = (0..q.len()).map(|k| hamiltonian(f(times[k]), g(times[k]), q[k], p[k])).collect();

    // θ̈ from 5-point stencils on the output grid; the root √(4g² − θ̇²)
    // carries the sign of 2g cos Φ.
    let mut theta_equation_residual = 0.0f64;
    let n = times.len();
    for k in 2..n.saturating_sub(2) {
        let t = times[k];
        let gv = g(t);
        if gv.abs() < 1e-12 {
            continue;
        }
        let w = diff::fornberg_weights(t, &times[k - 2..k + 3], 2);
        let th_dd: f64 = w.iter().zip(&theta[k - 2..k + 3]).map(|(w, y)| w * y).sum();
        let g_rate = diff::derivative(|s| Ok(g(s)), t, diff::default_step(t))?;
        let (th, ph) = (theta[k], big_phi[k]);
        let th_d = -2.0 * gv * ph.sin();
        let root = 2.0 * gv * ph.cos();
        let r = th_dd - g_rate / gv * th_d + 2.0 * f(t) * root - (4.0 * gv * gv - th_d * th_d) * th.cos() / th.sin();
        theta_equation_residual = theta_equation_residual.max(r.abs());
    }
    Ok(HamiltonianReport {
        times: can.t_out,
        q,
        p,
        theta,
        big_phi,
        energy,
        max_deviation,
        theta_equation_residual,
        truncated_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::propagate;
    use crate::spinor::{CVec3, Spinor};
    use num_complex::Complex64 as C64;

    #[test]
    fn constant_axis_rotation() {
        let f = 0.6;
        let field = CVec3::from_real([0.0, 0.0, f]);
        let s0 = BlochState { n: [1.0, 0.0, 0.0], alpha: 0.0, norm: 1.0 };
        let path = bloch_propagate(&field, s0, (0.0, 3.0), 1e-12).unwrap();
        for (t, n) in path.times.iter().zip(&path.n) {
            assert!((n[0] - (2.0 * f * t).cos()).abs() < 1e-9 && (n[1] - (2.0 * f * t).sin()).abs() < 1e-9);
        }
        assert!(path.drift < 1e-10);
    }

    #[test]
    fn damping_along_n_is_stationary() {
        let field = CVec3::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.5));
        let s0 = BlochState { n: [0.0, 0.0, 1.0], alpha: 0.0, norm: 1.0 };
        let path = bloch_propagate(&field, s0, (0.0, 2.0), 1e-12).unwrap();
        assert!(path.n.iter().all(|n| (n[2] - 1.0).abs() < 1e-12));
        assert!(path.alpha.is_none());
        let t_end = *path.times.last().unwrap();
        assert!((path.norm.last().unwrap() - (0.5 * t_end).exp()).abs() < 1e-9);
    }

    #[test]
    fn matches_spinor_propagation() {
        let field = crate::field::FnField(|t: f64| {
            Ok(CVec3::new(C64::new(t.cos(), 0.2), C64::new(0.3, -0.1 * t), C64::new(0.5, 0.1 * t.sin())))
        });
        let v0 = Spinor::new(C64::new(0.6, 0.1), C64::new(0.3, -0.5));
        let tr = propagate(&field, v0, (0.0, 2.0), 1e-12).unwrap();
        let path = bloch_propagate(&field, BlochState::from_spinor(&v0).unwrap(), (0.0, 2.0), 1e-12).unwrap();
        let alpha = path.alpha.as_ref().unwrap();
        for (k, (t, v)) in tr.times.iter().zip(&tr.states).enumerate() {
            let j = 2 * k;
            assert!((path.times[j] - t).abs() < 1e-12);
            let b = BlochState::from_spinor(v).unwrap();
            for c in 0..3 {
                assert!((path.n[j][c] - b.n[c]).abs() < 1e-8);
            }
            assert!((path.norm[j] - b.norm).abs() < 1e-8 * b.norm);
            let dphase = C64::from_polar(1.0, alpha[j] - b.alpha) - 1.0;
            assert!(dphase.norm() < 1e-7, "t = {t}");
        }
    }

    #[test]
    fn hamiltonian_examples() {
        let r = hamiltonian_check(|_| 0.7, |_| 0.0, 0.3, 0.2, (0.0, 2.0), 1e-12).unwrap();
        for (k, t) in r.times.iter().enumerate() {
            assert!((r.q[k] - 0.3).abs() < 1e-12);
            assert!((r.p[k] - (0.2 - 1.4 * t)).abs() < 1e-10);
        }
        let r = hamiltonian_check(|_| 0.4, |_| 0.9, 0.2, 0.5, (0.0, 5.0), 1e-12).unwrap();
        let e0 = r.energy[0];
        assert!(r.energy.iter().all(|e| (e - e0).abs() < 1e-8));
        assert!(r.max_deviation < 1e-6, "{}", r.max_deviation);
        assert!(r.theta_equation_residual < 1e-5, "{}", r.theta_equation_residual);
        assert!(r.truncated_at.is_none());

        let r = hamiltonian_check(|t| 0.5 + 0.3 * t.cos(), |t| 0.6 + 0.1 * t, 0.2, 0.4, (0.0, 3.0), 1e-12).unwrap();
        assert!(r.max_deviation < 1e-6 && r.theta_equation_residual < 1e-5, "{} {} {:?}", r.max_deviation, r.theta_equation_residual, r.truncated_at);
        assert!(hamiltonian_check(|_| 0.0, |_| 1.0, 1.0, 0.0, (0.0, 1.0), 1e-10).is_err());
    }
}
