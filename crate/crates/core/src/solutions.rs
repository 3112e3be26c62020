//! A second solution from a first, and the inverse problem: recovering a
//! field from a spinor path.
//!
//! For a real field the recovered field is unique once `(V,V)` is constant.
//! In general a free gauge function `c(t)` remains, multiplying `L^{v̄,v}`.

use num_complex::Complex64 as C64;

use crate::dynamics::trajectory::with_fields;
use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::field::{split_kg, Field};
use crate::numeric::quad;
use crate::spinor::{anticonjugate, inner, l_vector, spherical_basis, to_angles, CVec3, Spinor};

const I: C64 = C64 { re: 0.0, im: 1.0 };
/// Relative variation of `(V,V)` tolerated by the real-field inversion.
pub const CONSTANT_NORM_TOL: f64 = 1e-8;

fn norm_sqr_checked(v: &Spinor, t: f64) -> Result<f64> {
    let n = v.norm_sqr();
    if !(n > 0.0) {
        return Err(Error::domain(format!("spinor vanishes at t = {t}")));
    }
    Ok(n)
}

/// `Y = [α₀ + 2β₀ ∫ (V,V)⁻² L^{v,v̄}·G dt] V + β₀ (V,V)⁻¹ V̄`, with the
/// integral taken from the first node and `G = Im F` from `field`.
pub fn general_solution(base: &Trajectory, field: &dyn Field, alpha0: C64, beta0: C64) -> Result<Trajectory> {
    let mut integrand = Vec::with_capacity(base.len());
    let mut fields = Vec::with_capacity(base.len());
    for (&t, v) in base.times.iter().zip(&base.states) {
        let nn = norm_sqr_checked(v, t)?;
        let f = field.eval(t)?;
        let (_, g) = split_kg(&f);
        let g = CVec3::from_real(g);
        integrand.push(l_vector(v, &anticonjugate(v)).dot(&g) / (nn * nn));
        fields.push(f);
    }
    let acc = quad::cumulative(&base.times, &integrand);
    let states = base
        .states
        .iter()
        .zip(&acc)
        .map(|(v, a)| {
            let coef = alpha0 + beta0 * a * 2.0;
            *v * coef + anticonjugate(v) * (beta0 / v.norm_sqr())
        })
        .collect();
    Trajectory::new(base.times.clone(), states, fields, base.est_error)
}

/// The field whose equation `V` solves at one instant, given `dV/dt`:
/// `F = i/(2(V,V)²) [2(V,V̇) L^{v,v} + (V̄,V̇) L^{v,v̄}] + c L^{v̄,v}`.
pub fn recover_field(v: &Spinor, vdot: &Spinor, c: C64) -> Result<CVec3> {
    let nn = v.norm_sqr();
    if !(nn > 0.0) {
        return Err(Error::domain("spinor vanishes"));
    }
    let vb = anticonjugate(v);
    let lead = l_vector(v, v) * (inner(v, vdot) * 2.0) + l_vector(v, &vb) * inner(&vb, vdot);
    Ok(lead * (I / (2.0 * nn * nn)) + l_vector(&vb, v) * c)
}

/// The gauge value reproducing a known field `F`:
/// `c = F·L^{v,v̄} / (2(V,V)²)`.
pub fn gauge_of(v: &Spinor, f: &CVec3) -> Result<C64> {
    let nn = v.norm_sqr();
    if !(nn > 0.0) {
        return Err(Error::domain("spinor vanishes"));
    }
    Ok(f.dot(&l_vector(v, &anticonjugate(v))) / (2.0 * nn * nn))
}

/// Field recovered along a trajectory with gauge `c(t)`; `dV/dt` comes from
/// grid differences. The result shares the trajectory schema.
pub fn invert_field(traj: &Trajectory, c: impl Fn(f64) -> C64) -> Result<Trajectory> {
    let dv = traj.derivative()?;
    let fields = traj
        .times
        .iter()
        .zip(traj.states.iter().zip(&dv))
        .map(|(&t, (v, d))| {
            norm_sqr_checked(v, t)?;
            recover_field(v, d, c(t))
        })
        .collect::<Result<Vec<_>>>()?;
    with_fields(traj, fields)
}

/// The unique real field for a path of constant norm:
/// `F = i/(2(V,V)) (L^{v,v̇} − L^{v̇,v})`.
pub fn recover_real_field(v: &Spinor, vdot: &Spinor) -> Result<CVec3> {
    let nn = v.norm_sqr();
    if !(nn > 0.0) {
        return Err(Error::domain("spinor vanishes"));
    }
    Ok((l_vector(v, vdot) - l_vector(vdot, v)) * (I / (2.0 * nn)))
}

fn check_constant_norm(traj: &Trajectory) -> Result<()> {
    let ns = traj.norms_sqr();
    let n0 = ns.first().copied().unwrap_or(0.0);
    if !(n0 > 0.0) {
        return Err(Error::domain("spinor vanishes"));
    }
    let dev = ns.iter().map(|n| (n - n0).abs() / n0).fold(0.0, f64::max);
    if dev > CONSTANT_NORM_TOL {
        return Err(Error::Precondition(format!(
            "real-field inversion needs (V,V) constant; relative variation is {dev:e}"
        )));
    }
    Ok(())
}

pub fn invert_field_selfadjoint(traj: &Trajectory) -> Result<Trajectory> {
    check_constant_norm(traj)?;
    let dv = traj.derivative()?;
    let fields =
        traj.states.iter().zip(&dv).map(|(v, d)| recover_real_field(v, d)).collect::<Result<Vec<_>>>()?;
    with_fields(traj, fields)
}

/// Rates of the polar parameters `(θ, φ, α)` of a spinor path.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleRates {
    pub theta: f64,
    pub phi: f64,
    pub alpha: f64,
}

/// `F = ½[(φ̇ cos θ − α̇) n − φ̇ sin θ e_θ + θ̇ e_φ]`.
pub fn field_from_angle_rates(theta: f64, phi: f64, r: &AngleRates) -> [f64; 3] {
    let (e_theta, e_phi, n) = spherical_basis(theta, phi);
    let (s, c) = theta.sin_cos();
    std::array::from_fn(|j| 0.5 * ((r.phi * c - r.alpha) * n[j] - r.phi * s * e_theta[j] + r.theta * e_phi[j]))
}

/// `F² = ¼(θ̇² + φ̇² + α̇² − 2α̇φ̇ cos θ)`.
pub fn field_square_from_angle_rates(theta: f64, r: &AngleRates) -> f64 {
    0.25 * (r.theta * r.theta + r.phi * r.phi + r.alpha * r.alpha - 2.0 * r.alpha * r.phi * theta.cos())
}

/// The real field of a constant-norm path from the rates of its polar
/// parameters. Requires the path to stay off the poles `θ ∈ {0, π}`.
pub fn invert_field_angles(traj: &Trajectory) -> Result<Vec<([f64; 3], f64)>> {
    check_constant_norm(traj)?;
    let reps = traj.states.iter().map(to_angles).collect::<Result<Vec<_>>>()?;
    if reps.iter().any(|a| a.theta.sin().abs() < 1e-8) {
        return Err(Error::domain("angle route needs the path to avoid the poles"));
    }
    let dv = traj.derivative()?;
    Ok(reps
        .iter()
        .zip(traj.states.iter().zip(&dv))
        .map(|(a, (v, d))| {
            let r = angle_rates(v, d);
            (field_from_angle_rates(a.theta, a.phi, &r), field_square_from_angle_rates(a.theta, &r))
        })
        .collect())
}

/// Rates of `(θ, φ, α)` from `V` and `V̇` by the chain rule. Both components
/// of `V` must be nonzero. Differentiating sampled angles instead loses
/// accuracy where `φ` turns quickly near the poles.
pub fn angle_rates(v: &Spinor, vdot: &Spinor) -> AngleRates {
    let (m1, m2) = (v.v1.norm(), v.v2.norm());
    let dm1 = (vdot.v1 * v.v1.conj()).re / m1;
    let dm2 = (vdot.v2 * v.v2.conj()).re / m2;
    let (w1, w2) = ((vdot.v1 / v.v1).im, (vdot.v2 / v.v2).im);
    AngleRates { theta: 2.0 * (m1 * dm2 - m2 * dm1) / (m1 * m1 + m2 * m2), phi: w2 - w1, alpha: w1 + w2 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{propagate, propagate_at};
    use crate::field::FnField;

    fn grid(n: usize, t1: f64) -> Vec<f64> {
        (0..n).map(|k| t1 * k as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn general_solution_examples() {
        let f = 0.9;
        let field = CVec3::from_real([0.0, 0.0, f]);
        let ts = grid(101, 2.0);
        let base = Trajectory::from_fn(&ts, |t| Ok(Spinor::new((-I * f * t).exp(), C64::new(0.0, 0.0))), None).unwrap();
        let y = general_solution(&base, &field, C64::new(1.0, 0.0), C64::new(0.0, 0.0)).unwrap();
        assert_eq!(y.states, base.states);
        let y = general_solution(&base, &field, C64::new(0.0, 0.0), C64::new(1.0, 0.0)).unwrap();
        for (t, v) in ts.iter().zip(&y.states) {
            assert!((*v - Spinor::new(C64::new(0.0, 0.0), (I * f * t).exp())).norm() < 1e-15);
        }
    }

    #[test]
    fn general_solution_for_complex_field() {
        let field = FnField(|t: f64| Ok(CVec3::new(C64::new(0.5, 0.2 * t), C64::new(0.1, 0.0), C64::new(0.0, 1.0))));
        let tr = propagate(&field, Spinor::from_real(0.6, 0.8), (0.0, 2.0), 1e-12).unwrap();
        let y = general_solution(&tr, &field, C64::new(0.3, 0.0), C64::new(0.0, 1.2)).unwrap();
        let r = y.max_interior_residual(None).unwrap();
        assert!(r < 1e-6, "{r}");
        // independent of the base solution
        let w = (0..y.len())
            .map(|k| {
                let (a, b) = (tr.states[k], y.states[k]);
                (a.v1 * b.v2 - a.v2 * b.v1).norm()
            })
            .fold(f64::INFINITY, f64::min);
        assert!(w > 1e-3);
    }

    #[test]
    fn inversion_examples() {
        let (f, w) = (0.7, 1.1);
        let ts = grid(201, 3.0);
        let north = Trajectory::from_fn(&ts, |t| Ok(Spinor::new((-I * f * t).exp(), C64::new(0.0, 0.0))), None).unwrap();
        let rec = invert_field(&north, |_| C64::new(0.0, 0.0)).unwrap();
        let e = rec.fields.iter().map(|x| (*x - CVec3::from_real([0.0, 0.0, f])).norm()).fold(0.0, f64::max);
        assert!(e < 1e-6, "{e:e}");
        let real = invert_field_selfadjoint(&north).unwrap();
        assert!(real.fields.iter().all(|x| (*x - CVec3::from_real([0.0, 0.0, f])).norm() < 1e-6));

        let rot = Trajectory::from_fn(&ts, |t| Ok(Spinor::from_real((w * t).cos(), (w * t).sin())), None).unwrap();
        let truth = CVec3::from_real([0.0, w, 0.0]);
        let rec = invert_field(&rot, |t| {
            gauge_of(&Spinor::from_real((w * t).cos(), (w * t).sin()), &truth).unwrap()
        })
        .unwrap();
        assert!(rec.fields[2..199].iter().all(|x| (*x - truth).norm() < 1e-6));
        assert!(rec.max_interior_residual(None).unwrap() < 1e-5);
        let gauge = invert_field(&rot, |_| C64::new(1.0, 0.0)).unwrap();
        assert!((gauge.fields[50] - rec.fields[50]).norm() > 0.1);
        assert!(gauge.max_interior_residual(None).unwrap() < 1e-5);

        let growing = Trajectory::from_fn(&ts, |t| Ok(Spinor::from_real(1.0 + t, 0.0)), None).unwrap();
        assert!(matches!(invert_field_selfadjoint(&growing), Err(Error::Precondition(_))));
    }

    #[test]
    fn gauge_reproduces_true_field() {
        let f = CVec3::new(C64::new(0.3, -0.2), C64::new(1.1, 0.4), C64::new(-0.5, 0.7));
        let v = Spinor::new(C64::new(0.2, 0.9), C64::new(-0.4, 0.3));
        let vdot = crate::spinor::sigma_apply(&f, &v) * (-I);
        let got = recover_field(&v, &vdot, gauge_of(&v, &f).unwrap()).unwrap();
        assert!((got - f).norm() < 1e-13);
    }

    #[test]
    fn angle_route_agrees_and_is_gauge_invariant() {
        // precession about a tilted axis keeps the path clear of the poles
        let field = FnField(|t: f64| Ok(CVec3::from_real([0.1 * t.cos(), 0.2, 0.9 + 0.1 * t])));
        let v0 = Spinor::new(C64::new(0.7, 0.1), C64::new(0.6, -0.2));
        let tr = propagate_at(&field, v0, 0.0, &grid(401, 2.0), 1e-13).unwrap();
        let direct = invert_field_selfadjoint(&tr).unwrap();
        let angles = invert_field_angles(&tr).unwrap();
        for k in 2..tr.len() - 2 {
            let truth = field.eval(tr.times[k]).unwrap();
            let (fa, f2) = angles[k];
            assert!((direct.fields[k] - truth).norm() < 1e-6);
            let e = (CVec3::from_real(fa) - direct.fields[k]).norm();
            assert!(e < 1e-6, "k={k} {e:e}");
            assert!((f2 - fa.iter().map(|x| x * x).sum::<f64>()).abs() < 1e-8);
        }
        let (a, b) = (C64::new(0.3, -1.0), C64::new(0.8, 0.1));
        let mixed = tr.map(|_, v| Ok(*v * a + anticonjugate(v) * b), None).unwrap();
        let again = invert_field_selfadjoint(&mixed).unwrap();
        for k in 2..tr.len() - 2 {
            assert!((again.fields[k] - direct.fields[k]).norm() < 1e-6);
        }
    }
}
