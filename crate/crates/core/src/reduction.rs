//! Field-equivalence transforms.
//!
//! A reduction plan `V = exp(iα(t) σ·l) V'` maps solutions for a field `F'`
//! to solutions for a reduced field `F`. The discrete σ-maps, time
//! reparameterization and the reduction to a pair of scalar second-order
//! equations live here too.

use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::mat2::Mat2;
use crate::numeric::{diff, quad};
use crate::spinor::{CVec3, Spinor};

const I: C64 = C64 { re: 0.0, im: 1.0 };
/// `|l²| / ‖l‖²` below this makes the axis null.
const NULL_AXIS_RATIO: f64 = 1e-12;
/// Relative tolerance of the angle quadrature.
const ANGLE_QUAD_TOL: f64 = 1e-14;

type ScalarFn = Arc<dyn Fn(f64) -> Result<C64> + Send + Sync>;

/// Source of the transform angle `α(t)` and its rate.
#[derive(Clone)]
pub enum Angle {
    /// `α = rate·t + offset`.
    Linear { rate: C64, offset: C64 },
    /// Closed form supplied together with its derivative.
    Closed { value: ScalarFn, rate: ScalarFn },
    /// `α(t) = alpha_ref + ∫_{t_ref}^t F'·l`, which cancels the projection of
    /// the reduced field onto the axis.
    Projection { source: Arc<dyn Field>, t_ref: f64, alpha_ref: C64 },
    /// Uniform samples `α(t0 + k·dt)`; cubic interpolation for `α`, 4th
    /// order differences for `α̇`.
    Samples { t0: f64, dt: f64, values: Arc<Vec<C64>> },
}

impl std::fmt::Debug for Angle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Angle::Linear { rate, offset } => write!(f, "Linear({rate}, {offset})"),
            Angle::Closed { .. } => f.write_str("Closed"),
            Angle::Projection { t_ref, alpha_ref, .. } => write!(f, "Projection(t_ref = {t_ref}, alpha_ref = {alpha_ref})"),
            Angle::Samples { t0, dt, values } => write!(f, "Samples(t0 = {t0}, dt = {dt}, n = {})", values.len()),
        }
    }
}

/// Axis normalized to `l² = 1`, or a null axis `l² = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Axis {
    Unit(CVec3),
    Null(CVec3),
}

impl Axis {
    pub fn new(l: CVec3) -> Result<Self> {
        let n2 = l.norm().powi(2);
        if !(n2 > 0.0) || !l.is_finite() {
            return Err(Error::domain("reduction axis must be a finite nonzero vector"));
        }
        let sq = l.square();
        if sq.norm() <= NULL_AXIS_RATIO * n2 {
            Ok(Axis::Null(l))
        } else {
            Ok(Axis::Unit(l * (1.0 / sq.sqrt())))
        }
    }

    pub fn vector(&self) -> CVec3 {
        match self {
            Axis::Unit(l) | Axis::Null(l) => *l,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionPlan {
    pub axis: Axis,
    pub angle: Angle,
    /// `-1` for the inverse plan.
    sign: f64,
}

impl ReductionPlan {
    pub fn new(l: CVec3, angle: Angle) -> Result<Self> {
        if let Angle::Samples { dt, values, .. } = &angle {
            if !(*dt > 0.0) || values.len() < 5 {
                return Err(Error::Invalid("sampled angle needs dt > 0 and at least 5 samples".into()));
            }
        }
        Ok(ReductionPlan { axis: Axis::new(l)?, angle, sign: 1.0 })
    }

    /// Plan with `α(t) = ∫_{t_ref}^t F'·l`, cancelling `F·l`.
    pub fn projection(l: CVec3, source: Arc<dyn Field>, t_ref: f64) -> Result<Self> {
        Self::new(l, Angle::Projection { source, t_ref, alpha_ref: C64::new(0.0, 0.0) })
    }

    /// `α → -α`.
    pub fn inverse(&self) -> Self {
        ReductionPlan { sign: -self.sign, ..self.clone() }
    }

    pub fn alpha(&self, t: f64) -> Result<C64> {
        let a = match &self.angle {
            Angle::Linear { rate, offset } => rate * t + offset,
            Angle::Closed { value, .. } => value(t)?,
            Angle::Projection { source, t_ref, alpha_ref } => {
                let l = self.axis.vector();
                let g = |s: f64| source.eval(s).map(|f| f.dot(&l));
                alpha_ref + quad::integrate(g, *t_ref, t, ANGLE_QUAD_TOL)?
            }
            Angle::Samples { t0, dt, values } => sample_interp(*t0, *dt, values, t, false)?,
        };
        Ok(a * self.sign)
    }

    pub fn alpha_rate(&self, t: f64) -> Result<C64> {
        let r = match &self.angle {
            Angle::Linear { rate, .. } => *rate,
            Angle::Closed { rate, .. } => rate(t)?,
            Angle::Projection { source, .. } => source.eval(t)?.dot(&self.axis.vector()),
            Angle::Samples { t0, dt, values } => sample_interp(*t0, *dt, values, t, true)?,
        };
        Ok(r * self.sign)
    }

    /// The transform matrix at `t`.
    pub fn matrix(&self, t: f64) -> Result<Mat2> {
        let a = self.alpha(t)?;
        Ok(self.matrix_at(a))
    }

    fn matrix_at(&self, a: C64) -> Mat2 {
        match self.axis {
            Axis::Unit(l) => Mat2::scalar(a.cos()) + Mat2::sigma_dot(&l).scale(I * a.sin()),
            Axis::Null(l) => Mat2::identity() + Mat2::sigma_dot(&l).scale(I * a),
        }
    }
}

/// Cubic interpolation of `α` (or of its grid derivative) on a uniform grid.
fn sample_interp(t0: f64, dt: f64, values: &[C64], t: f64, rate: bool) -> Result<C64> {
    let n = values.len();
    let x = (t - t0) / dt;
    if x < -1e-9 || x > (n - 1) as f64 + 1e-9 {
        return Err(Error::domain(format!("t = {t} outside the sampled angle grid")));
    }
    let k = (x.floor() as isize - 1).clamp(0, n as isize - 4) as usize;
    let idx: Vec<usize> = (k..k + 4).collect();
    let nodes: Vec<f64> = idx.iter().map(|&i| i as f64).collect();
    let vals: Vec<C64> = if rate {
        let ts: Vec<f64> = (0..n).map(|i| i as f64 * dt).collect();
        let d = diff::grid_derivative(&ts, values);
        idx.iter().map(|&i| d[i]).collect()
    } else {
        idx.iter().map(|&i| values[i]).collect()
    };
    let w = diff::fornberg_weights(x, &nodes, 0);
    Ok(w.iter().zip(&vals).map(|(w, v)| v * w).sum())
}

/// The reduced field `F` at `t` given `F'(t)`.
pub fn reduce_value(fp: &CVec3, plan: &ReductionPlan, t: f64) -> Result<CVec3> {
    let a = plan.alpha(t)?;
    let ad = plan.alpha_rate(t)?;
    Ok(match plan.axis {
        Axis::Unit(l) => {
            let fl = fp.dot(&l);
            (*fp - l * fl) * (2.0 * a).cos() + fp.cross(&l) * (2.0 * a).sin() + l * (fl - ad)
        }
        Axis::Null(l) => {
            let fl = fp.dot(&l);
            *fp + fp.cross(&l) * (2.0 * a) + l * (a * a * 2.0 * fl - ad)
        }
    })
}

/// The reduced field of `source` under `plan` at `t`.
pub fn reduce_field(source: &dyn Field, plan: &ReductionPlan, t: f64) -> Result<CVec3> {
    reduce_value(&source.eval(t)?, plan, t)
}

/// `V = T(t) V'`.
pub fn transform_solution(v: &Spinor, plan: &ReductionPlan, t: f64) -> Result<Spinor> {
    Ok(plan.matrix(t)?.apply(v))
}

/// The reduced field as a [`Field`].
pub struct ReducedField<F> {
    pub source: F,
    pub plan: ReductionPlan,
}

impl<F: Field> Field for ReducedField<F> {
    fn eval(&self, t: f64) -> Result<CVec3> {
        reduce_field(&self.source, &self.plan, t)
    }
}

/// Constant maps carrying solutions for `(F₁, 0, F₃)` to solutions for a
/// permuted or sign-flipped field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaMap {
    /// `(1 + iσ₁)/√2`: `(F₁, 0, F₃) → (F₁, F₃, 0)`.
    Xy,
    /// `σ₁`: `F₃ → -F₃`.
    Flip3,
    /// `σ₃`: `F₁ → -F₁`.
    Flip1,
    /// `σ₂`: both flipped.
    Flip13,
    /// `(σ₁ + σ₃)/√2`: `F₁ ↔ F₃`.
    Swap13,
}

impl SigmaMap {
    pub const ALL: [SigmaMap; 5] = [SigmaMap::Xy, SigmaMap::Flip3, SigmaMap::Flip1, SigmaMap::Flip13, SigmaMap::Swap13];

    pub fn matrix(self) -> Mat2 {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            SigmaMap::Xy => (Mat2::identity() + Mat2::sigma(1).scale(I)) * r,
            SigmaMap::Flip3 => Mat2::sigma(1),
            SigmaMap::Flip1 => Mat2::sigma(3),
            SigmaMap::Flip13 => Mat2::sigma(2),
            SigmaMap::Swap13 => (Mat2::sigma(1) + Mat2::sigma(3)) * r,
        }
    }

    /// Field of the mapped equation, `σ·F_new = M (σ·F) M⁻¹`. Defined for any
    /// `F`; reproduces the listed forms when `F₂ = 0`.
    pub fn map_field(self, f: &CVec3) -> CVec3 {
        let m = self.matrix();
        let minv = m.inverse().expect("sigma maps are invertible");
        let x = m * Mat2::sigma_dot(f) * minv;
        let c = |k: usize| (Mat2::sigma(k) * x).trace() * 0.5;
        CVec3::new(c(1), c(2), c(3))
    }
}

pub fn sigma_map(v: &Spinor, which: SigmaMap) -> Spinor {
    which.matrix().apply(v)
}

/// A monotone change of time `t ↦ T(t)`.
#[derive(Clone)]
pub struct TimeMap {
    pub map: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// `Ṫ`; central differences when absent.
    pub rate: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
}

impl TimeMap {
    pub fn new(map: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        TimeMap { map: Arc::new(map), rate: None }
    }

    pub fn with_rate(mut self, rate: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.rate = Some(Arc::new(rate));
        self
    }

    pub fn rate_at(&self, t: f64) -> Result<f64> {
        match &self.rate {
            Some(r) => Ok(r(t)),
            None => diff::derivative(|s| Ok((self.map)(s)), t, diff::default_step(t)),
        }
    }

    /// Errors unless `Ṫ` keeps one strict sign at `samples` points of the window.
    pub fn check_monotone(&self, t0: f64, t1: f64, samples: usize) -> Result<()> {
        let n = samples.max(2);
        let mut sign = 0.0;
        for k in 0..n {
            let t = t0 + (t1 - t0) * k as f64 / (n - 1) as f64;
            let r = self.rate_at(t)?;
            if r == 0.0 || !r.is_finite() || (sign != 0.0 && r.signum() != sign) {
                return Err(Error::domain(format!("time map is not strictly monotone near t = {t}")));
            }
            sign = r.signum();
        }
        Ok(())
    }
}

/// `F'(t) = F(T(t))·Ṫ(t)`; solutions map as `V'(t) = V(T(t))`.
pub fn reparametrize_time(source: &dyn Field, tm: &TimeMap, t: f64) -> Result<CVec3> {
    let r = tm.rate_at(t)?;
    if r == 0.0 || !r.is_finite() {
        return Err(Error::domain(format!("time map has zero or undefined rate at t = {t}")));
    }
    Ok(source.eval((tm.map)(t))? * r)
}

pub struct ReparamField<F> {
    pub source: F,
    pub map: TimeMap,
}

impl<F: Field> Field for ReparamField<F> {
    fn eval(&self, t: f64) -> Result<CVec3> {
        reparametrize_time(&self.source, &self.map, t)
    }
}

/// `A_s = F₁ + (−1)^s iF₂`, `s ∈ {1, 2}`.
pub fn transverse_combination(f: &CVec3, s: u8) -> C64 {
    if s == 1 {
        f.x - I * f.y
    } else {
        f.x + I * f.y
    }
}

/// Potentials `(V₁, V₂)` of the scalar equations `ψ̈_s = V_s ψ_s` obeyed by
/// `ψ_s = v_s / √A_s`.
pub fn to_schrodinger_potentials(source: &dyn Field, t: f64) -> Result<(C64, C64)> {
    let f = source.eval(t)?;
    let (h1, h2) = (diff::default_step(t), diff::second_derivative_step(t));
    let f3d = diff::derivative(|s| Ok(source.eval(s)?.z), t, h1)?;
    let a1a2 = transverse_combination(&f, 1) * transverse_combination(&f, 2);
    let mut out = [C64::new(0.0, 0.0); 2];
    for s in 1..=2u8 {
        let a = transverse_combination(&f, s);
        if a.norm() == 0.0 {
            return Err(Error::domain(format!("A_{s} vanishes at t = {t}")));
        }
        let comb = |u: f64| Ok(transverse_combination(&source.eval(u)?, s));
        let ad = diff::derivative(comb, t, h1)?;
        let add = diff::second_derivative(comb, t, h2)?;
        let r = ad / a;
        let sign = if s == 1 { -1.0 } else { 1.0 };
        out[s as usize - 1] = r * r * 0.75 - add / a * 0.5 - a1a2 - f.z * f.z - I * sign * (f.z * r - f3d);
    }
    Ok((out[0], out[1]))
}

/// `ψ_s = v_s / √A_s` (principal root).
pub fn scalar_amplitude(v: &Spinor, f: &CVec3, s: u8) -> Result<C64> {
    let a = transverse_combination(f, s);
    if a.norm() == 0.0 {
        return Err(Error::domain("A_s vanishes"));
    }
    let vs = if s == 1 { v.v1 } else { v.v2 };
    Ok(vs / a.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FnField;
    use crate::spinor::sigma_apply;

    fn close(a: &CVec3, b: &CVec3, tol: f64) -> bool {
        (*a - *b).norm() <= tol
    }

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn z_axis() -> CVec3 {
        CVec3::from_real([0.0, 0.0, 1.0])
    }

    /// Solution of the constant-field equation by the stationary modes.
    fn const_solution(f: CVec3, v0: Spinor, t: f64) -> Spinor {
        let r = f.square().sqrt();
        let h = Mat2::sigma_dot(&f);
        let u = if r.norm() < 1e-14 {
            Mat2::identity() - h.scale(I * t)
        } else {
            Mat2::scalar((r * t).cos()) - h.scale(I * (r * t).sin() / r)
        };
        u.apply(&v0)
    }

    #[test]
    fn identity_and_plane_examples() {
        let fp = CVec3::from_real([0.3, -0.2, 0.9]);
        let plan = ReductionPlan::new(z_axis(), Angle::Linear { rate: c(0.0), offset: c(0.0) }).unwrap();
        assert!(close(&reduce_value(&fp, &plan, 0.7).unwrap(), &fp, 1e-15));

        let fp = CVec3::from_real([0.8, 0.0, 1.1]);
        let plan = ReductionPlan::new(z_axis(), Angle::Linear { rate: c(1.1), offset: c(0.2) }).unwrap();
        let t = 0.4;
        let a: f64 = 1.1 * t + 0.2;
        let want = CVec3::from_real([0.8 * (2.0 * a).cos(), -0.8 * (2.0 * a).sin(), 0.0]);
        assert!(close(&reduce_value(&fp, &plan, t).unwrap(), &want, 1e-14));
    }

    #[test]
    fn transform_matrix_examples() {
        let plan = ReductionPlan::new(z_axis(), Angle::Linear { rate: c(0.0), offset: c(std::f64::consts::FRAC_PI_2) }).unwrap();
        let v = transform_solution(&Spinor::from_real(1.0, 0.0), &plan, 0.0).unwrap();
        assert!((v - Spinor::new(I, c(0.0))).norm() < 1e-15);

        let l = CVec3::new(c(1.0), I, c(0.0));
        let plan = ReductionPlan::new(l, Angle::Linear { rate: c(0.0), offset: c(1.0) }).unwrap();
        assert!(matches!(plan.axis, Axis::Null(_)));
        let v0 = Spinor::from_real(0.0, 1.0);
        let want = v0 + sigma_apply(&l, &v0) * I;
        assert!((transform_solution(&v0, &plan, 3.0).unwrap() - want).norm() < 1e-15);
        assert!(Axis::new(CVec3::zero()).is_err());
    }

    /// `V = T V'` solves the reduced equation when `V'` solves the original.
    fn check_transformed_residual(l: CVec3, angle: Angle, fp: CVec3) {
        let plan = ReductionPlan::new(l, angle).unwrap();
        let v0 = Spinor::new(C64::new(0.6, 0.1), C64::new(-0.3, 0.7));
        let sol = |t: f64| transform_solution(&const_solution(fp, v0, t), &plan, t);
        for k in 0..5 {
            let t = 0.3 + 0.35 * k as f64;
            let dv = diff::derivative(&sol, t, 1e-3).unwrap();
            let f = reduce_value(&fp, &plan, t).unwrap();
            let r = dv * I - sigma_apply(&f, &sol(t).unwrap());
            assert!(r.norm() < 1e-9, "{:?} residual {}", plan.axis, r.norm());
        }
    }

    #[test]
    fn transformed_solutions_solve_reduced_equation() {
        let fp = CVec3::new(C64::new(0.4, 0.1), C64::new(-0.2, 0.0), C64::new(0.7, -0.3));
        let quad_angle = Angle::Closed {
            value: Arc::new(|t| Ok(C64::new(0.3 * t * t, 0.1 * t))),
            rate: Arc::new(|t| Ok(C64::new(0.6 * t, 0.1))),
        };
        check_transformed_residual(CVec3::from_real([1.0, 2.0, -0.5]), quad_angle.clone(), fp);
        check_transformed_residual(CVec3::new(c(0.0), c(1.0), I), quad_angle, fp);
        check_transformed_residual(z_axis(), Angle::Linear { rate: C64::new(0.5, 0.2), offset: c(0.1) }, fp);
    }

    #[test]
    fn projection_cancels_axis_component_and_round_trips() {
        let src: Arc<dyn Field> = Arc::new(FnField(|t: f64| {
            Ok(CVec3::new(C64::new(f64::cos(t), 0.1), c(0.3 * t), C64::new(1.0 + 0.5 * f64::sin(t), 0.2 * t)))
        }));
        let l = CVec3::from_real([0.0, 0.6, 0.8]);
        let plan = ReductionPlan::projection(l, src.clone(), 0.0).unwrap();
        let inv = plan.inverse();
        for k in 0..6 {
            let t = 0.25 * k as f64;
            let f = reduce_field(&src, &plan, t).unwrap();
            assert!(f.dot(&l).norm() <= 1e-10 * (1.0 + f.norm()));
            let back = reduce_value(&f, &inv, t).unwrap();
            assert!(close(&back, &src.eval(t).unwrap(), 1e-12));
        }
    }

    #[test]
    fn sampled_angle_matches_closed_form() {
        let values: Vec<C64> = (0..201).map(|k| c((0.01 * k as f64).sin())).collect();
        let plan = ReductionPlan::new(z_axis(), Angle::Samples { t0: 0.0, dt: 0.01, values: Arc::new(values) }).unwrap();
        for t in [0.123, 1.0, 1.777] {
            assert!((plan.alpha(t).unwrap().re - t.sin()).abs() < 1e-8);
            assert!((plan.alpha_rate(t).unwrap().re - t.cos()).abs() < 1e-7);
        }
        assert!(plan.alpha(2.5).is_err());
    }

    #[test]
    fn sigma_maps_match_listed_fields() {
        let (f1, f3) = (C64::new(0.7, 0.2), C64::new(-1.3, 0.4));
        let z = c(0.0);
        let f = CVec3::new(f1, z, f3);
        let cases = [
            (SigmaMap::Xy, CVec3::new(f1, f3, z)),
            (SigmaMap::Flip3, CVec3::new(f1, z, -f3)),
            (SigmaMap::Flip1, CVec3::new(-f1, z, f3)),
            (SigmaMap::Flip13, CVec3::new(-f1, z, -f3)),
            (SigmaMap::Swap13, CVec3::new(f3, z, f1)),
        ];
        for (m, want) in cases {
            assert!(close(&m.map_field(&f), &want, 1e-14), "{m:?}");
        }
        assert_eq!(sigma_map(&Spinor::from_real(1.0, 0.0), SigmaMap::Flip3), Spinor::from_real(0.0, 1.0));
        let v = Spinor::new(C64::new(0.3, 0.4), C64::new(-1.0, 0.2));
        assert!((sigma_map(&v, SigmaMap::Xy).norm() - v.norm()).abs() < 1e-15);
    }

    #[test]
    fn sigma_map_residual() {
        let f = CVec3::from_real([1.0, 0.0, 2.0]);
        let mapped = SigmaMap::Flip3.map_field(&f);
        assert!(close(&mapped, &CVec3::from_real([1.0, 0.0, -2.0]), 0.0));
        let eig = crate::spinor::eigenpairs(&f);
        let pair = &eig.pairs[0];
        let sol = |t: f64| Ok(sigma_map(&(pair.vector * (-I * pair.lambda * t).exp()), SigmaMap::Flip3));
        let t = 0.8;
        let dv: Spinor = diff::derivative(sol, t, 1e-3).unwrap();
        let r = dv * I - sigma_apply(&mapped, &sol(t).unwrap());
        assert!(r.norm() < 1e-10);
    }

    #[test]
    fn time_reparametrization() {
        let f3 = FnField(|t: f64| Ok(CVec3::new(c(0.0), c(0.0), c(1.0 / t))));
        let sq = TimeMap::new(|t| t * t);
        let t = 1.7;
        let got = reparametrize_time(&f3, &sq, t).unwrap();
        assert!((got.z - c(2.0 / t)).norm() < 1e-9);
        let dbl = TimeMap::new(|t| 2.0 * t).with_rate(|_| 2.0);
        assert_eq!(reparametrize_time(&z_axis(), &dbl, 0.3).unwrap(), CVec3::from_real([0.0, 0.0, 2.0]));
        assert!(TimeMap::new(|t| t * t).check_monotone(-1.0, 1.0, 21).is_err());
        assert!(sq.check_monotone(0.5, 2.0, 21).is_ok());
    }

    #[test]
    fn constant_field_potentials() {
        let (a, b) = (0.7, -0.4);
        let (v1, v2) = to_schrodinger_potentials(&CVec3::from_real([a, 0.0, 0.0]), 0.5).unwrap();
        assert!((v1 - c(-a * a)).norm() < 1e-12 && (v2 - c(-a * a)).norm() < 1e-12);
        let (v1, v2) = to_schrodinger_potentials(&CVec3::from_real([a, 0.0, b]), 0.5).unwrap();
        assert!((v1 - c(-a * a - b * b)).norm() < 1e-12 && (v2 - c(-a * a - b * b)).norm() < 1e-12);
        assert!(to_schrodinger_potentials(&CVec3::from_real([0.0, 0.0, 1.0]), 0.5).is_err());
    }
}
