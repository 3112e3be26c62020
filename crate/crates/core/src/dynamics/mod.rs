//! Numerical propagation of the spin equation and the objects built on it:
//! trajectories, evolution operators, the Bloch-vector equation and the
//! Hamiltonian form of the real-field case.

mod bloch;
mod operators;
pub(crate) mod trajectory;

pub use bloch::{
    bloch_propagate, bloch_rhs, hamiltonian, hamiltonian_check, BlochPath, BlochState, HamiltonianReport, BLOCH_SAMPLES,
    HAMILTONIAN_SAMPLES,
};
pub use operators::{
    evolution_constant_direction, evolution_from_q, field_from_q, propagate_operator, stationary_solutions,
    transformation_matrix, QBranch, QField, StationaryMode,
};
pub use trajectory::{Trajectory, CSV_HEADER};

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::numeric::ode::{self, OdeOptions};
use crate::spinor::{sigma_apply, CVec3, Spinor};

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Smallest accepted integrator tolerance.
pub const MIN_TOL: f64 = 1e-13;
/// Output points used by [`propagate`].
pub const DEFAULT_SAMPLES: usize = 201;

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if !(tol >= MIN_TOL && tol.is_finite()) {
        return Err(Error::Invalid(format!("tolerance must be at least {MIN_TOL:e}, got {tol:e}")));
    }
    Ok(())
}

pub(crate) fn uniform_grid(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n).map(|k| if k == n - 1 { t1 } else { t0 + (t1 - t0) * k as f64 / (n - 1) as f64 }).collect()
}

fn check_window(t0: f64, t1: f64) -> Result<()> {
    if !(t0.is_finite() && t1.is_finite() && t0 != t1) {
        return Err(Error::Invalid(format!("window [{t0}, {t1}] is empty or not finite")));
    }
    Ok(())
}

/// `dV/dt = -i (σ·F) V`.
pub fn spin_rhs(field: &dyn Field, t: f64, v: &Spinor) -> Result<Spinor> {
    Ok(sigma_apply(&field.eval(t)?, v) * (-I))
}

/// Propagates `V(t0) = v0` to `DEFAULT_SAMPLES` equispaced times of
/// `[t0, t1]` (`t1 < t0` integrates backwards).
pub fn propagate(field: &dyn Field, v0: Spinor, window: (f64, f64), tol: f64) -> Result<Trajectory> {
    check_window(window.0, window.1)?;
    propagate_at(field, v0, window.0, &uniform_grid(window.0, window.1, DEFAULT_SAMPLES), tol)
}

/// Propagates `V(t0) = v0` and reports it at the monotone `times`.
pub fn propagate_at(field: &dyn Field, v0: Spinor, t0: f64, times: &[f64], tol: f64) -> Result<Trajectory> {
    check_tol(tol)?;
    if !v0.is_finite() {
        return Err(Error::Invalid("initial spinor is not finite".into()));
    }
    let rhs = |t: f64, y: &[f64; 4]| Ok(spin_rhs(field, t, &Spinor::from_array(y))?.to_array());
    let sol = ode::integrate(rhs, t0, v0.to_array(), times, &OdeOptions::with_tol(tol))?;
    let states: Vec<Spinor> = sol.y_out.iter().map(Spinor::from_array).collect();
    let fields = sol.t_out.iter().map(|&t| field.eval(t)).collect::<Result<Vec<CVec3>>>()?;
    Trajectory::new(sol.t_out, states, fields, sol.est_error)
}

/// Independent propagations run concurrently; results keep the input order.
pub fn propagate_batch(jobs: &[(&dyn Field, Spinor, (f64, f64))], tol: f64) -> Vec<Result<Trajectory>> {
    jobs.par_iter().map(|(f, v0, w)| propagate(*f, *v0, *w, tol)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FnField;

    #[test]
    fn zero_and_diagonal_fields() {
        let v0 = Spinor::new(C64::new(0.6, 0.2), C64::new(-0.1, 0.77));
        let tr = propagate(&CVec3::zero(), v0, (0.0, 5.0), 1e-10).unwrap();
        assert!(tr.states.iter().all(|v| (*v - v0).norm() < 1e-14));

        let f = 1.3;
        let tr = propagate(&CVec3::from_real([0.0, 0.0, f]), v0, (0.0, 5.0), 1e-12).unwrap();
        for (t, v) in tr.times.iter().zip(&tr.states) {
            let want = Spinor::new(v0.v1 * (-I * f * t).exp(), v0.v2 * (I * f * t).exp());
            assert!((*v - want).norm() < 1e-10, "t = {t}");
        }
    }

    #[test]
    fn real_field_conserves_norm_and_runs_backwards() {
        let field = FnField(|t: f64| Ok(CVec3::from_real([t.cos(), 0.3 * t, 1.0 / (1.0 + t * t)])));
        let v0 = Spinor::from_real(0.8, 0.6);
        let tol = 1e-10;
        let tr = propagate(&field, v0, (0.0, 4.0), tol).unwrap();
        for v in &tr.states {
            assert!((v.norm_sqr() - 1.0).abs() <= 10.0 * tol);
        }
        let back = propagate(&field, *tr.states.last().unwrap(), (4.0, 0.0), 1e-12).unwrap();
        assert!((*back.states.last().unwrap() - v0).norm() < 1e-8);
    }

    #[test]
    fn singular_field_reports_location() {
        let field = FnField(|t: f64| {
            if t >= 1.0 {
                return Err(Error::singular(t, "pole"));
            }
            Ok(CVec3::from_real([0.0, 0.0, 1.0 / (1.0 - t)]))
        });
        match propagate(&field, Spinor::from_real(1.0, 0.0), (0.0, 2.0), 1e-10) {
            Err(Error::Singularity { t, .. }) | Err(Error::Integration { t, .. }) => assert!(t > 0.9 && t <= 1.0 + 1e-9),
            other => panic!("unexpected {other:?}"),
        }
        assert!(propagate(&CVec3::zero(), Spinor::from_real(1.0, 0.0), (0.0, 1.0), 1e-14).is_err());
        assert!(propagate(&CVec3::zero(), Spinor::from_real(1.0, 0.0), (1.0, 1.0), 1e-10).is_err());
    }
}
