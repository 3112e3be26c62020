//! Evolution operators: numerical propagation of `i dR/dt = (σ·F) R`, the
//! closed forms generated by a vector parameter `q(t)`, and the operator for
//! fields of constant direction.

use std::sync::Arc;

use num_complex::Complex64 as C64;

use super::check_tol;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::mat2::Mat2;
use crate::numeric::ode::{self, OdeOptions};
use crate::numeric::{diff, quad};
use crate::spinor::{eigenpairs, CVec3, Spinor};

const I: C64 = C64 { re: 0.0, im: 1.0 };
/// `|1 + q²|` below this is treated as the excluded point `q² = −1`.
const Q_SQUARE_GUARD: f64 = 1e-12;
/// Allowed `|q² − 1|` on the unit branch.
const UNIT_TOL: f64 = 1e-10;

/// `R(t)` with `R(t0) = I` at each of `times`.
pub fn propagate_operator(field: &dyn Field, t0: f64, times: &[f64], tol: f64) -> Result<Vec<Mat2>> {
    check_tol(tol)?;
    let rhs = |t: f64, y: &[f64; 8]| {
        let r = Mat2::from_array(y);
        Ok((Mat2::sigma_dot(&field.eval(t)?) * r).scale(-I).to_array())
    };
    let sol = ode::integrate(rhs, t0, Mat2::identity().to_array(), times, &OdeOptions::with_tol(tol))?;
    Ok(sol.y_out.iter().map(Mat2::from_array).collect())
}

/// `V(t) = e^{−iλt} V` for a constant field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StationaryMode {
    pub lambda: C64,
    pub vector: Spinor,
}

impl StationaryMode {
    pub fn at(&self, t: f64) -> Spinor {
        self.vector * (-I * self.lambda * t).exp()
    }
}

/// Stationary modes of a constant field: two for `F² ≠ 0`, the single
/// `λ = 0` mode for a null field, and the two basis spinors for `F = 0`.
pub fn stationary_solutions(f: &CVec3) -> Vec<StationaryMode> {
    eigenpairs(f).pairs.into_iter().map(|p| StationaryMode { lambda: p.lambda, vector: p.vector }).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QBranch {
    /// `q² ≠ −1`; transform `(1 − iσ·q)/√(1 + q²)`.
    General,
    /// `q² = 1`; transform `−iσ·q`.
    Unit,
}

type VecFn = Arc<dyn Fn(f64) -> Result<CVec3> + Send + Sync>;

/// The field `F₂` for which `T(q) V₁` solves the equation whenever `V₁`
/// solves it with `F₁` (zero when absent).
#[derive(Clone)]
pub struct QField {
    pub q: VecFn,
    pub base: Option<Arc<dyn Field>>,
    pub branch: QBranch,
}

impl QField {
    pub fn new(q: impl Fn(f64) -> Result<CVec3> + Send + Sync + 'static, base: Option<Arc<dyn Field>>, branch: QBranch) -> Self {
        QField { q: Arc::new(q), base, branch }
    }

    fn q_rate(&self, t: f64) -> Result<CVec3> {
        diff::derivative(|s| (self.q)(s), t, diff::default_step(t))
    }
}

impl Field for QField {
    fn eval(&self, t: f64) -> Result<CVec3> {
        let q = (self.q)(t)?;
        let qd = self.q_rate(t)?;
        let f1 = match &self.base {
            Some(b) => b.eval(t)?,
            None => CVec3::zero(),
        };
        let q2 = q.square();
        match self.branch {
            QBranch::General => {
                let d = C64::new(1.0, 0.0) + q2;
                if d.norm() <= Q_SQUARE_GUARD {
                    return Err(Error::domain(format!("q² = −1 at t = {t}")));
                }
                let num = qd + q.cross(&qd) + q.cross(&f1) * 2.0 + q * (q.dot(&f1) * 2.0) - f1 * (q2 * 2.0);
                Ok(num * (C64::new(1.0, 0.0) / d) + f1)
            }
            QBranch::Unit => {
                check_unit(&q, t)?;
                Ok(q.cross(&qd) + q * (q.dot(&f1) * 2.0) - f1)
            }
        }
    }
}

fn check_unit(q: &CVec3, t: f64) -> Result<()> {
    let dev = (q.square() - 1.0).norm();
    if dev > UNIT_TOL {
        return Err(Error::domain(format!("|q² − 1| = {dev:e} at t = {t} on the unit branch")));
    }
    Ok(())
}

/// The sampler of the field generated by `q`.
pub fn field_from_q(
    q: impl Fn(f64) -> Result<CVec3> + Send + Sync + 'static,
    base: Option<Arc<dyn Field>>,
    branch: QBranch,
) -> QField {
    QField::new(q, base, branch)
}

/// `T(q) = (1 − iσ·q)/√(1 + q²)` or `−iσ·q`.
pub fn transformation_matrix(q: &CVec3, branch: QBranch) -> Result<Mat2> {
    match branch {
        QBranch::General => {
            let d = C64::new(1.0, 0.0) + q.square();
            if d.norm() <= Q_SQUARE_GUARD {
                return Err(Error::domain("q² = −1"));
            }
            Ok((Mat2::identity() - Mat2::sigma_dot(q).scale(I)).scale(C64::new(1.0, 0.0) / d.sqrt()))
        }
        QBranch::Unit => {
            check_unit(q, f64::NAN)?;
            Ok(Mat2::sigma_dot(q).scale(-I))
        }
    }
}

/// `R(t) = T(q(t)) T(q₀)⁻¹` for the field of [`field_from_q`] with no base
/// field. Square roots are principal, taken separately for `q` and `q₀`.
pub fn evolution_from_q(q: &CVec3, q0: &CVec3, branch: QBranch) -> Result<Mat2> {
    match branch {
        QBranch::General => {
            let one = C64::new(1.0, 0.0);
            let (d, d0) = (one + q.square(), one + q0.square());
            if d.norm() <= Q_SQUARE_GUARD || d0.norm() <= Q_SQUARE_GUARD {
                return Err(Error::domain("q² = −1"));
            }
            let p = *q - *q0 + q0.cross(q);
            let m = Mat2::scalar(one + q.dot(q0)) - Mat2::sigma_dot(&p).scale(I);
            Ok(m.scale(one / (d.sqrt() * d0.sqrt())))
        }
        QBranch::Unit => {
            check_unit(q, f64::NAN)?;
            check_unit(q0, 0.0)?;
            Ok(Mat2::scalar(q.dot(q0)) + Mat2::sigma_dot(&q.cross(q0)).scale(I))
        }
    }
}

/// Operator for `F = (q sin λ, 0, q cos λ)`:
/// `R = cos ω − i(σ₁ sin λ + σ₃ cos λ) sin ω`, `ω(t) = ∫₀ᵗ q`.
pub fn evolution_constant_direction(q: impl Fn(f64) -> Result<C64>, lambda: C64, t: f64) -> Result<Mat2> {
    let w = quad::integrate(q, 0.0, t, 1e-13)?;
    let axis = CVec3::new(lambda.sin(), C64::new(0.0, 0.0), lambda.cos());
    Ok(Mat2::scalar(w.cos()) - Mat2::sigma_dot(&axis).scale(I * w.sin()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FnField;

    fn mclose(a: &Mat2, b: &Mat2, tol: f64) -> bool {
        (*a - *b).norm() <= tol
    }

    /// Max of `‖i dR/dt − (σ·F) R‖` over sample times.
    fn operator_residual(r: impl Fn(f64) -> Result<Mat2>, f: &dyn Field, ts: &[f64]) -> f64 {
        ts.iter()
            .map(|&t| {
                let dr = diff::derivative(&r, t, 1e-3).unwrap();
                (dr.scale(I) - Mat2::sigma_dot(&f.eval(t).unwrap()) * r(t).unwrap()).norm()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn stationary_examples() {
        let m = stationary_solutions(&CVec3::from_real([0.0, 0.0, 1.0]));
        assert_eq!(m.len(), 2);
        assert_eq!(m[0].lambda, C64::new(1.0, 0.0));
        assert_eq!(m[0].vector, Spinor::from_real(1.0, 0.0));
        assert_eq!(m[1].vector, Spinor::from_real(0.0, 1.0));
        let m = stationary_solutions(&CVec3::from_real([1.0, 0.0, 0.0]));
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((m[0].vector - Spinor::from_real(r, r)).norm() < 1e-15);
        let m = stationary_solutions(&CVec3::new(C64::new(1.0, 0.0), I, C64::new(0.0, 0.0)));
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].lambda, C64::new(0.0, 0.0));
    }

    #[test]
    fn propagated_operator_matches_constant_field() {
        let f = CVec3::new(C64::new(0.3, 0.1), C64::new(-0.5, 0.0), C64::new(0.7, -0.2));
        let ts = [0.5, 1.0, 2.0];
        let rs = propagate_operator(&f, 0.0, &ts, 1e-12).unwrap();
        let s = f.square().sqrt();
        for (t, r) in ts.iter().zip(&rs) {
            let want = Mat2::scalar((s * t).cos()) - Mat2::sigma_dot(&f).scale(I * (s * t).sin() / s);
            assert!(mclose(r, &want, 1e-9));
            assert!((r.det() - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn q_examples() {
        let w = 1.4;
        let qf = field_from_q(move |t| Ok(CVec3::from_real([0.0, 0.0, (0.5 * w * t).tan()])), None, QBranch::General);
        let f = qf.eval(0.7).unwrap();
        assert!((f - CVec3::from_real([0.0, 0.0, 0.5 * w])).norm() < 1e-9);
        let zero = field_from_q(|_| Ok(CVec3::zero()), None, QBranch::General);
        assert_eq!(zero.eval(1.0).unwrap(), CVec3::zero());
        let unit = field_from_q(move |t| Ok(CVec3::from_real([(w * t).cos(), (w * t).sin(), 0.0])), None, QBranch::Unit);
        assert!((unit.eval(0.3).unwrap() - CVec3::from_real([0.0, 0.0, w])).norm() < 1e-9);
        let bad = field_from_q(|_| Ok(CVec3::from_real([2.0, 0.0, 0.0])), None, QBranch::Unit);
        assert!(bad.eval(0.0).is_err());
        let pole = field_from_q(|_| Ok(CVec3::new(I, C64::new(0.0, 0.0), C64::new(0.0, 0.0))), None, QBranch::General);
        assert!(pole.eval(0.0).is_err());

        let t = 0.9;
        let r = evolution_from_q(&CVec3::from_real([0.0, 0.0, (0.5 * w * t).tan()]), &CVec3::zero(), QBranch::General).unwrap();
        let want = Mat2::scalar(C64::new((0.5 * w * t).cos(), 0.0)) - Mat2::sigma(3).scale(I * (0.5 * w * t).sin());
        assert!(mclose(&r, &want, 1e-14));
        let r = evolution_from_q(&CVec3::from_real([(w * t).cos(), (w * t).sin(), 0.0]), &CVec3::from_real([1.0, 0.0, 0.0]), QBranch::Unit).unwrap();
        let want = Mat2::scalar(C64::new((w * t).cos(), 0.0)) - Mat2::sigma(3).scale(I * (w * t).sin());
        assert!(mclose(&r, &want, 1e-14));
    }

    #[test]
    fn complex_q_operator_solves_generated_field() {
        let qfn = |t: f64| Ok(CVec3::new(C64::new(0.3 * t, 0.1), C64::new(t.sin(), -0.2 * t), C64::new(0.5, 0.3 * t * t)));
        let q0 = qfn(0.0).unwrap();
        let field = field_from_q(qfn, None, QBranch::General);
        let ts: Vec<f64> = (1..8).map(|k| 0.2 * k as f64).collect();
        let res = operator_residual(|t| evolution_from_q(&qfn(t)?, &q0, QBranch::General), &field, &ts);
        assert!(res < 1e-6, "{res}");
        let r1 = evolution_from_q(&qfn(1.0).unwrap(), &q0, QBranch::General).unwrap();
        assert!((r1.det() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn base_field_transform() {
        // T(q) V₁ solves the equation with F₂ when V₁ solves it with F₁.
        let f1 = CVec3::new(C64::new(0.4, 0.0), C64::new(0.1, 0.2), C64::new(-0.6, 0.0));
        let base: Arc<dyn Field> = Arc::new(f1);
        let qfn = |t: f64| Ok(CVec3::from_real([0.2 * t, 0.5 * t.cos(), 0.1]));
        let f2 = field_from_q(qfn, Some(base), QBranch::General);
        let mode = stationary_solutions(&f1);
        let v1 = |t: f64| mode[0].at(t) * 0.7 + mode[1].at(t) * 0.2;
        let v2 = |t: f64| Ok(transformation_matrix(&qfn(t)?, QBranch::General)?.apply(&v1(t)));
        for t in [0.3, 0.8, 1.5] {
            let dv: Spinor = diff::derivative(&v2, t, 1e-3).unwrap();
            let r = dv * I - crate::spinor::sigma_apply(&f2.eval(t).unwrap(), &v2(t).unwrap());
            assert!(r.norm() < 1e-8, "{}", r.norm());
        }
    }

    #[test]
    fn constant_direction_operator() {
        let f = 0.8;
        let t = 1.3;
        let r = evolution_constant_direction(|_| Ok(C64::new(f, 0.0)), C64::new(0.0, 0.0), t).unwrap();
        let want = Mat2::new((-I * f * t).exp(), C64::new(0.0, 0.0), C64::new(0.0, 0.0), (I * f * t).exp());
        assert!(mclose(&r, &want, 1e-13));
        let r = evolution_constant_direction(|_| Ok(C64::new(f, 0.0)), C64::new(std::f64::consts::FRAC_PI_2, 0.0), t).unwrap();
        let want = Mat2::scalar(C64::new((f * t).cos(), 0.0)) - Mat2::sigma(1).scale(I * (f * t).sin());
        assert!(mclose(&r, &want, 1e-13));

        let lam = C64::new(0.4, 0.1);
        let field = FnField(move |t: f64| Ok(CVec3::new(lam.sin() * (2.0 * t), C64::new(0.0, 0.0), lam.cos() * (2.0 * t))));
        let ts: Vec<f64> = (1..6).map(|k| 0.3 * k as f64).collect();
        let res = operator_residual(|t| evolution_constant_direction(|s| Ok(C64::new(2.0 * s, 0.0)), lam, t), &field, &ts);
        assert!(res < 1e-8, "{res}");
    }
}
