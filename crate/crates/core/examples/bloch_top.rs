//! Direction, phase and norm of a spinor from the Bloch equations.

use spineq::dynamics::{bloch_propagate, BlochState};
use spineq::{CVec3, Spinor, C64};

fn main() {
    let field = CVec3::new(C64::new(0.6, 0.0), C64::new(0.0, 0.0), C64::new(0.5, 0.2));
    let v0 = Spinor::new(C64::new(0.8, 0.0), C64::new(0.6, 0.0));
    let path = bloch_propagate(&field, BlochState::from_spinor(&v0).unwrap(), (0.0, 3.0), 1e-12).unwrap();
    for k in (0..path.times.len()).step_by(path.times.len() / 6) {
        println!("t = {:.2}  n = {:?}  N = {:.6}", path.times[k], path.n[k], path.norm[k]);
    }
    println!("unit-length drift before renormalization: {:.1e}", path.drift);
}
