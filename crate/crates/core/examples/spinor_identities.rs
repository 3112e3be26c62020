//! Anticonjugation, the vectors `(U, σV)` and the orthonormal frame of a spinor.

use spineq::spinor::{anticonjugate, frame, inner, l_vector, to_angles};
use spineq::{Spinor, C64};

fn main() {
    let v = Spinor::new(C64::new(0.6, 0.3), C64::new(-0.2, 0.7));
    let vb = anticonjugate(&v);
    println!("(V,V) = {:.6}, (Vbar,V) = {:.2e}", v.norm_sqr(), inner(&vb, &v).norm());

    let lvv = l_vector(&v, &v);
    let lbv = l_vector(&vb, &v);
    println!("L(v,v)^2 = {:.6}  (equals (V,V)^2 = {:.6})", lvv.square(), v.norm_sqr().powi(2));
    println!("L(vbar,v)^2 = {:.2e}  (null vector)", lbv.square().norm());

    let f = frame(&v).unwrap();
    println!("e1 = {:?}\ne2 = {:?}\nn  = {:?}", f.e1.re(), f.e2.re(), f.n.re());
    let a = to_angles(&v).unwrap();
    println!("angles: theta = {:.6}, phi = {:.6}, alpha = {:.6}", a.theta, a.phi, a.alpha);
}
