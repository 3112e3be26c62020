//! Numerical propagation checked against a closed-form catalog solution.

use spineq::catalog::{entry, entry_solution};
use spineq::dynamics::propagate;
use spineq::field::{FieldSpec, Params};

fn main() {
    for id in [1u8, 5, 16, 26] {
        let e = entry(id).unwrap();
        let params = e.resolve_params(&Params::new()).unwrap();
        let window = e.default_window(&e.default_params());
        let field = FieldSpec::catalog(id, params.clone()).unwrap();
        let v0 = entry_solution(id, &params, window.0).unwrap();
        let tr = propagate(&field, v0, window, 1e-10).unwrap();
        let dev = tr
            .times
            .iter()
            .zip(&tr.states)
            .map(|(t, v)| (*v - entry_solution(id, &params, *t).unwrap()).norm())
            .fold(0.0, f64::max);
        println!("entry {id:2}: window {window:?}, max deviation {dev:.2e}");
    }
}
