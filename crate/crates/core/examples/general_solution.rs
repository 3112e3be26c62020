//! The second independent solution built from one known solution.

use spineq::dynamics::{propagate_at, Trajectory};
use spineq::solutions::general_solution;
use spineq::{CVec3, Spinor, C64};

fn main() {
    let f = 0.9;
    let field = CVec3::from_real([0.3, 0.0, f]);
    let ts: Vec<f64> = (0..201).map(|k| 2.0 * k as f64 / 200.0).collect();
    let base = propagate_at(&field, Spinor::from_real(1.0, 0.0), 0.0, &ts, 1e-13).unwrap();
    let (a0, b0) = (C64::new(0.5, 0.0), C64::new(1.0, 0.5));
    let y = general_solution(&base, &field, a0, b0).unwrap();
    let direct = propagate_at(&field, y.states[0], 0.0, &ts, 1e-13).unwrap();
    println!("max deviation from direct propagation: {:.2e}", y.max_deviation(&direct).unwrap());
    let check = Trajectory::new(ts.clone(), y.states.clone(), y.fields.clone(), 0.0).unwrap();
    println!("interior residual: {:.2e}", check.max_interior_residual(None).unwrap());
}
