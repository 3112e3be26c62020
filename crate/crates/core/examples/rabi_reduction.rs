//! A rotating transverse field becomes constant in the co-rotating frame.

use spineq::dynamics::propagate_at;
use spineq::field::FnField;
use spineq::reduction::{reduce_field, transform_solution, Angle, ReductionPlan};
use spineq::{CVec3, Mat2, Spinor, C64};

fn main() {
    let (f, omega, f3) = (0.7, 1.3, 0.4);
    let lab = FnField(move |t: f64| Ok(CVec3::from_real([f * (omega * t).cos(), f * (omega * t).sin(), f3])));
    let to_lab = ReductionPlan::new(
        CVec3::from_real([0.0, 0.0, 1.0]),
        Angle::Linear { rate: C64::new(-omega / 2.0, 0.0), offset: C64::new(0.0, 0.0) },
    )
    .unwrap();
    let to_rot = to_lab.inverse();
    let fc = reduce_field(&lab, &to_rot, 0.0).unwrap();
    println!("rotating-frame field: {:?}", fc.re());

    let v0 = Spinor::from_real(1.0, 0.0);
    let ts: Vec<f64> = (0..=8).map(|k| k as f64 * 0.5).collect();
    let direct = propagate_at(&lab, v0, 0.0, &ts, 1e-12).unwrap();
    let w0 = transform_solution(&v0, &to_rot, 0.0).unwrap();
    let s = fc.square().sqrt();
    for (k, &t) in ts.iter().enumerate() {
        let u = Mat2::scalar((s * t).cos()) - Mat2::sigma_dot(&fc).scale(C64::new(0.0, 1.0) * (s * t).sin() / s);
        let v = transform_solution(&u.apply(&w0), &to_lab, t).unwrap();
        println!("t = {t:.1}  |v2|^2 = {:.8}  deviation from direct = {:.1e}", v.v2.norm_sqr(), (v - direct.states[k]).norm());
    }
}
