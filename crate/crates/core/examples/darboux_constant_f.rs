//! Darboux partner of the field (eps, 0, f) with constant f.

use spineq::darboux::{constant_f_partner, constant_f_solution, darboux_apply, darboux_field, DarbouxParams};
use spineq::dynamics::Trajectory;
use spineq::{CVec3, C64};

fn main() {
    let (f, r, phi0, eps) = (C64::new(0.5, 0.0), C64::new(1.0, 0.0), C64::new(0.1, 0.0), C64::new(0.8, 0.0));
    let ts: Vec<f64> = (0..201).map(|k| 2.0 * k as f64 / 200.0).collect();
    let params = DarbouxParams::constant_f(f, r, phi0, &ts).unwrap();
    for &t in &[0.0, 1.0, 2.0] {
        let numeric = darboux_field(move |_| Ok(f), &params, t).unwrap();
        println!("t = {t}: F3' = {:.10}  closed form {:.10}", numeric, constant_f_partner(f, r, phi0, t).unwrap());
    }
    let base = CVec3::new(eps, C64::new(0.0, 0.0), f);
    let one = C64::new(1.0, 0.0);
    let v = Trajectory::from_fn(&ts, |t| Ok(constant_f_solution(f, eps, one, one, t)), Some(&base)).unwrap();
    let partner = darboux_apply(&v, eps, &params).unwrap();
    println!("partner solution residual: {:.2e}", partner.max_interior_residual(None).unwrap());
}
