//! Adaptive Dormand–Prince 5(4) integrator over fixed-size real state
//! vectors.
//!
//! Error control is mixed absolute/relative with `atol = rtol = tol` and an
//! RMS norm. Steps are shortened to land exactly on every requested output
//! time; between accepted steps the solution is available through cubic
//! Hermite interpolation.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[derive(Clone, Copy, Debug)]
pub struct OdeOptions {
    /// Absolute and relative tolerance.
    pub tol: f64,
    /// First trial step; chosen automatically when `None`.
    pub h_init: Option<f64>,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions { tol: 1e-10, h_init: None, max_steps: 1_000_000 }
    }
}

impl OdeOptions {
    pub fn with_tol(tol: f64) -> Self {
        OdeOptions { tol, ..Default::default() }
    }
}

/// Accepted steps plus the values at the requested output times.
#[derive(Clone, Debug)]
pub struct OdeSolution<const N: usize> {
    pub t_out: Vec<f64>,
    pub y_out: Vec<[f64; N]>,
    /// Every accepted node with its derivative, for dense output.
    pub nodes: Vec<(f64, [f64; N], [f64; N])>,
    /// Largest weighted local error estimate among accepted steps, times `tol`.
    pub est_error: f64,
    pub rejected: usize,
}

impl<const N: usize> OdeSolution<N> {
    /// Cubic Hermite interpolant between accepted nodes.
    pub fn dense(&self, t: f64) -> Option<[f64; N]> {
        let nodes = &self.nodes;
        let (first, last) = (nodes.first()?.0, nodes.last()?.0);
        let forward = last >= first;
        let (lo, hi) = if forward { (first, last) } else { (last, first) };
        if t < lo || t > hi {
            return None;
        }
        let k = nodes.partition_point(|n| if forward { n.0 <= t } else { n.0 >= t });
        let i = k.saturating_sub(1).min(nodes.len().saturating_sub(2));
        if nodes.len() == 1 {
            return Some(nodes[0].1);
        }
        let (t0, y0, f0) = &nodes[i];
        let (t1, y1, f1) = &nodes[i + 1];
        let h = t1 - t0;
        let s = (t - t0) / h;
        let (h00, h10) = ((1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s), s * (1.0 - s) * (1.0 - s));
        let (h01, h11) = (s * s * (3.0 - 2.0 * s), s * s * (s - 1.0));
        let mut y = [0.0; N];
        for j in 0..N {
            y[j] = h00 * y0[j] + h10 * h * f0[j] + h01 * y1[j] + h11 * h * f1[j];
        }
        Some(y)
    }
}

/// Integrates `y' = f(t, y)` from `(t0, y0)` through the monotone list of
/// output times `t_out` (increasing or decreasing away from `t0`).
pub fn integrate<const N: usize, F>(
    mut f: F,
    t0: f64,
    y0: [f64; N],
    t_out: &[f64],
    opts: &OdeOptions,
) -> Result<OdeSolution<N>>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
{
    let tol = opts.tol;
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Invalid(format!("integrator tolerance must be positive, got {tol}")));
    }
    let t_end = match t_out.last() {
        Some(&t) => t,
        None => {
            return Ok(OdeSolution {
                t_out: vec![],
                y_out: vec![],
                nodes: vec![],
                est_error: 0.0,
                rejected: 0,
            })
        }
    };
    let dir = if t_end >= t0 { 1.0 } else { -1.0 };
    for w in t_out.windows(2) {
        if (w[1] - w[0]) * dir < 0.0 {
            return Err(Error::Invalid("output times must be monotone".into()));
        }
    }
    if t_out.first().is_some_and(|&t| (t - t0) * dir < 0.0) {
        return Err(Error::Invalid("output times must not precede the initial time".into()));
    }

    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y)?;
    check_finite(t, &k1)?;
    let mut h = match opts.h_init {
        Some(h) => h.abs(),
        None => initial_step(&mut f, t, &y, &k1, tol, (t_end - t0).abs())?,
    };
    let mut sol = OdeSolution {
        t_out: Vec::with_capacity(t_out.len()),
        y_out: Vec::with_capacity(t_out.len()),
        nodes: vec![(t, y, k1)],
        est_error: 0.0,
        rejected: 0,
    };
    let mut next = 0;
    while next < t_out.len() && t_out[next] == t {
        sol.t_out.push(t);
        sol.y_out.push(y);
        next += 1;
    }
    let mut steps = 0;
    while next < t_out.len() {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::Integration { t, msg: "maximum number of steps exceeded".into() });
        }
        let target = t_out[next];
        let to_target = (target - t).abs();
        let h_prop = h;
        let hit = h >= to_target;
        if hit {
            h = to_target;
        }
        let hmin = 1e-14 * t.abs().max(1.0);
        if h < hmin && !hit {
            return Err(Error::Integration { t, msg: "step size underflow".into() });
        }
        let hs = h * dir;
        let (y_new, k7, err) = step(&mut f, t, &y, &k1, hs, tol)?;
        if err <= 1.0 {
            t = if hit { target } else { t + hs };
            y = y_new;
            k1 = k7;
            sol.nodes.push((t, y, k1));
            sol.est_error = sol.est_error.max(err * tol);
            while next < t_out.len() && t_out[next] == t {
                sol.t_out.push(t);
                sol.y_out.push(y);
                next += 1;
            }
            h *= (0.9 * err.max(1e-10).powf(-0.2)).clamp(0.2, 5.0);
            if hit {
                // a step shortened to land on an output time says nothing
                // about the admissible step size
                h = h.max(h_prop);
            }
        } else {
            sol.rejected += 1;
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
        }
    }
    Ok(sol)
}

fn check_finite<const N: usize>(t: f64, y: &[f64; N]) -> Result<()> {
    if y.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Integration { t, msg: "non-finite derivative".into() })
    }
}

fn rms_err<const N: usize>(err: &[f64; N], y0: &[f64; N], y1: &[f64; N], tol: f64) -> f64 {
    let s: f64 = (0..N)
        .map(|j| {
            let sc = tol + tol * y0[j].abs().max(y1[j].abs());
            (err[j] / sc).powi(2)
        })
        .sum();
    (s / N as f64).sqrt()
}

fn initial_step<const N: usize, F>(
    f: &mut F,
    t: f64,
    y: &[f64; N],
    k1: &[f64; N],
    tol: f64,
    span: f64,
) -> Result<f64>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
{
    let scale: [f64; N] = std::array::from_fn(|j| tol + tol * y[j].abs());
    let norm = |v: &[f64; N]| ((0..N).map(|j| (v[j] / scale[j]).powi(2)).sum::<f64>() / N as f64).sqrt();
    let (d0, d1) = (norm(y), norm(k1));
    let mut h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h0 = h0.min(span.max(1e-12));
    let y1: [f64; N] = std::array::from_fn(|j| y[j] + h0 * k1[j]);
    let k2 = f(t + h0, &y1)?;
    let diff: [f64; N] = std::array::from_fn(|j| k2[j] - k1[j]);
    let d2 = norm(&diff) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    Ok((100.0 * h0).min(h1).min(span.max(1e-12)))
}

type StepOut<const N: usize> = ([f64; N], [f64; N], f64);

fn step<const N: usize, F>(f: &mut F, t: f64, y: &[f64; N], k1: &[f64; N], h: f64, tol: f64) -> Result<StepOut<N>>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
{
    let stage = |coef: &[(f64, &[f64; N])]| -> [f64; N] {
        std::array::from_fn(|j| y[j] + h * coef.iter().map(|(a, k)| a * k[j]).sum::<f64>())
    };
    let k2 = f(t + C2 * h, &stage(&[(A21, k1)]))?;
    let k3 = f(t + C3 * h, &stage(&[(A31, k1), (A32, &k2)]))?;
    let k4 = f(t + C4 * h, &stage(&[(A41, k1), (A42, &k2), (A43, &k3)]))?;
    let k5 = f(t + C5 * h, &stage(&[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]))?;
    let k6 = f(t + h, &stage(&[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]))?;
    let y_new = stage(&[(A71, k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
    let k7 = f(t + h, &y_new)?;
    check_finite(t + h, &k7)?;
    let err: [f64; N] = std::array::from_fn(|j| {
        h * (E1 * k1[j] + E3 * k3[j] + E4 * k4[j] + E5 * k5[j] + E6 * k6[j] + E7 * k7[j])
    });
    let e = rms_err(&err, y, &y_new, tol);
    if !e.is_finite() {
        // treat as a rejection with maximal shrink
        return Ok((y_new, k7, 1e10));
    }
    Ok((y_new, k7, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        let ts: Vec<f64> = (0..=20).map(|k| 0.5 * k as f64).collect();
        let sol = integrate(|_, y: &[f64; 2]| Ok([y[1], -y[0]]), 0.0, [1.0, 0.0], &ts, &OdeOptions::with_tol(1e-12))
            .unwrap();
        assert_eq!(sol.t_out, ts);
        for (t, y) in sol.t_out.iter().zip(&sol.y_out) {
            assert!((y[0] - t.cos()).abs() < 1e-10 && (y[1] + t.sin()).abs() < 1e-10);
        }
        assert!(sol.est_error <= 1e-12);
        let d = sol.dense(3.3).unwrap();
        assert!((d[0] - 3.3f64.cos()).abs() < 1e-5);
    }

    #[test]
    fn backward_integration() {
        let sol = integrate(|_, y: &[f64; 1]| Ok([y[0]]), 1.0, [1.0f64.exp()], &[0.5, 0.0], &OdeOptions::with_tol(1e-12))
            .unwrap();
        assert!((sol.y_out[1][0] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn blow_up_reports_location() {
        // y' = y², y(0) = 1 blows up at t = 1
        let err = integrate(|_, y: &[f64; 1]| Ok([y[0] * y[0]]), 0.0, [1.0], &[2.0], &OdeOptions::with_tol(1e-10))
            .unwrap_err();
        match err {
            Error::Integration { t, .. } => assert!((t - 1.0).abs() < 1e-3, "t = {t}"),
            e => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn rhs_errors_propagate() {
        let r = integrate(
            |t, _: &[f64; 1]| if t > 0.5 { Err(Error::singular(t, "test")) } else { Ok([1.0]) },
            0.0,
            [0.0],
            &[1.0],
            &OdeOptions::default(),
        );
        assert!(matches!(r, Err(Error::Singularity { .. })));
    }
}
