//! Real fields of fixed transverse magnitude as a one-degree-of-freedom
//! Hamiltonian system in `(q, p) = (cos θ, −Φ)`.

use spineq::dynamics::{hamiltonian, hamiltonian_check};

fn main() {
    let (f, g, q0, p0) = (0.5, 0.6, 0.2, 0.4);
    let rep = hamiltonian_check(move |_| f, move |_| g, q0, p0, (0.0, 5.0), 1e-12).unwrap();
    let h0 = hamiltonian(f, g, q0, p0);
    let drift = rep.energy.iter().map(|e| (e - h0).abs()).fold(0.0, f64::max);
    println!("H = {h0:.10}, largest drift {drift:.1e}");
    println!("agreement with angle equations: {:.1e}", rep.max_deviation);
    for k in (0..rep.times.len()).step_by(rep.times.len() / 5) {
        println!("t = {:.2}  q = {:.6}  p = {:.6}", rep.times[k], rep.q[k], rep.p[k]);
    }
}
