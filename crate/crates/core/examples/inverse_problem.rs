//! Recovering a field from a spinor path, in general and for real fields.

use spineq::dynamics::propagate_at;
use spineq::field::FnField;
use spineq::solutions::{invert_field_angles, invert_field_selfadjoint};
use spineq::{CVec3, Field, Spinor, C64};

fn main() {
    let field = FnField(|t: f64| Ok(CVec3::from_real([0.4 * t.cos(), 0.2, 0.9 + 0.1 * t])));
    let ts: Vec<f64> = (0..801).map(|k| 2.0 * k as f64 / 800.0).collect();
    let tr = propagate_at(&field, Spinor::new(C64::new(0.7, 0.1), C64::new(0.6, -0.2)), 0.0, &ts, 1e-13).unwrap();

    let direct = invert_field_selfadjoint(&tr).unwrap();
    let angles = invert_field_angles(&tr).unwrap();
    for k in [100, 400, 700] {
        let t = ts[k];
        println!(
            "t = {t:.2}  true {:?}\n          direct {:?}\n          angles {:?}  F^2 = {:.6}",
            field.eval(t).unwrap().re(),
            direct.fields[k].re(),
            angles[k].0,
            angles[k].1
        );
    }
}
