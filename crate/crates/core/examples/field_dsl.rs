//! Fields written as small programs with named parameters.

use spineq::field::{FieldSpec, Params};
use spineq::{Field, C64};

fn main() {
    let mut p = Params::new();
    p.insert("a".into(), C64::new(0.5, 0.0));
    p.insert("w".into(), C64::new(2.0, 0.0));
    let spec = FieldSpec::expr("F1 = a*cos(w*t); F2 = a*sin(w*t); F3 = 1 + 0.1i*t", p).unwrap();
    for t in [0.0, 0.5, 1.0] {
        println!("t = {t}: F = {:?}", spec.eval(t).unwrap().components());
    }
    println!("as JSON: {}", spec.to_json());

    let cat = FieldSpec::catalog(16, Params::new()).unwrap();
    println!("catalog entry 16 at t = 0.7: {:?}", cat.eval(0.7).unwrap().components());
    println!("undefined point: {}", FieldSpec::parse("F3 = cot(t)").unwrap().eval(0.0).unwrap_err());
}
