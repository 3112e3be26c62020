//! Gamma, Kummer, Gauss and parabolic-cylinder functions at complex arguments.

use spineq::special::{complex_gamma, gauss_2f1, kummer_phi, parabolic_d};
use spineq::C64;

fn main() {
    let z = C64::new(0.4, 0.3);
    let one = C64::new(1.0, 0.0);
    println!("Gamma(1+i)        = {}", complex_gamma(C64::new(1.0, 1.0)).unwrap());
    println!("Phi(2,2;z)        = {}   e^z = {}", kummer_phi(C64::new(2.0, 0.0), C64::new(2.0, 0.0), z).unwrap(), z.exp());
    println!("F(1,1;2;z)        = {}", gauss_2f1(one, one, C64::new(2.0, 0.0), z).unwrap());
    println!("-ln(1-z)/z        = {}", -(one - z).ln() / z);
    println!("D_1(z)            = {}   z e^(-z^2/4) = {}", parabolic_d(one, z).unwrap(), z * (-z * z / 4.0).exp());
    println!("D_(0.5+0.2i)(1.5) = {}", parabolic_d(C64::new(0.5, 0.2), C64::new(1.5, 0.0)).unwrap());
}
