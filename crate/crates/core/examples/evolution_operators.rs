//! Evolution operators: numerical, built from a chosen vector path, and
//! stationary modes of a constant field.

use spineq::dynamics::{evolution_from_q, field_from_q, propagate_operator, stationary_solutions, QBranch};
use spineq::{CVec3, Field, C64};

fn main() {
    let f = CVec3::new(C64::new(0.3, 0.1), C64::new(0.0, 0.0), C64::new(0.8, 0.0));
    let ops = propagate_operator(&f, 0.0, &[0.0, 1.0, 2.0], 1e-12).unwrap();
    for r in &ops {
        println!("det R = {:.3e}", (r.det() - 1.0).norm());
    }
    for m in stationary_solutions(&f) {
        println!("stationary mode: lambda = {:.6}", m.lambda);
    }

    let q = |t: f64| Ok(CVec3::new(C64::new(0.3 * t, 0.0), C64::new(t.sin(), 0.0), C64::new(0.5, 0.0)));
    let field = field_from_q(q, None, QBranch::General);
    let r = evolution_from_q(&q(1.0).unwrap(), &q(0.0).unwrap(), QBranch::General).unwrap();
    println!("field generated by q at t = 1: {:?}", field.eval(1.0).unwrap().components());
    println!("R(1) = [[{:.4}, {:.4}], [{:.4}, {:.4}]]", r.a, r.b, r.c, r.d);
}
