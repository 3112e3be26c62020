//! Field and solution formulas of the 26 catalog entries.
//!
//! Every formula is written in the phase `φ = ωt + φ₀`. Entries whose field
//! is a rational function of time are stored with `t` replaced by `φ`; the
//! catalog multiplies their field by `ω` so that `u(φ(t))` solves the
//! equation in `t`.

use num_complex::Complex64 as C64;

use super::EntryParams;
use crate::error::Result;
use crate::special::{gauss_2f1 as hf, kummer_phi as kf, parabolic_d};
use crate::spinor::Spinor;

const I: C64 = C64 { re: 0.0, im: 1.0 };

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn pw(z: C64, e: C64) -> C64 {
    z.powc(e)
}

fn sq(z: C64) -> C64 {
    z.sqrt()
}

fn u(v1: C64, v2: C64) -> Result<Spinor> {
    Ok(Spinor::new(v1, v2))
}

pub(super) type FieldFn = fn(&EntryParams, f64) -> (C64, C64);
pub(super) type SolutionFn = fn(&EntryParams, f64) -> Result<Spinor>;

// ---- fields: (F1, F3) as functions of φ ----

pub(super) fn field(id: u8, p: &EntryParams, x: f64) -> (C64, C64) {
    let (a, b, cc) = (p.a, p.b, p.c);
    let s = c(x);
    let (sin, cos, tan) = (s.sin(), s.cos(), s.tan());
    let (sinh, cosh, tanh) = (s.sinh(), s.cosh(), s.tanh());
    let (s2, c2) = ((s * 2.0).sin(), (s * 2.0).cos());
    let (sh2, ch2) = ((s * 2.0).sinh(), (s * 2.0).cosh());
    match id {
        1 => (a * s, b * s + cc / s),
        2 => (a / s, b / s + cc * s),
        3 => (a / s, b / s + cc),
        4 => (a / s2, (b * c2 + cc) / s2),
        5 => (a * tan, b * tan + cc / tan),
        6 => (a / sin, b * tan + cc / tan),
        7 => (a / cos, b * tan + cc),
        8 => (a / sinh, b * tanh + cc / tanh),
        9 => (a / cosh, b * tanh + cc / tanh),
        10 => (a / sh2, (b * ch2 + cc) / sh2),
        11 => (a / cosh, (b * sinh + cc) / cosh),
        12 => (a * tanh, b * tanh + cc / tanh),
        13 => (a / tanh, b * tanh + cc / tanh),
        14 => (a / cosh, b * tanh + cc),
        15 => (a / sinh, b / tanh + cc),
        16 => (a, b * s + cc),
        17 => (a, b / s + cc),
        18 => (a, b / s + cc * s),
        19 => (a, (b * c2 + cc) / s2),
        20 => (a, b * tan + cc / tan),
        21 => (a, b * tan + cc),
        22 => (a, b * tanh + cc / tanh),
        23 => (a, (b * ch2 + cc) / sh2),
        24 => (a, (b * sinh + cc) / cosh),
        25 => (a, b * tanh + cc),
        26 => (a, b / tanh + cc),
        _ => unreachable!("catalog id checked by caller"),
    }
}

// ---- solutions ----

pub(super) fn s1(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, t) = (p.a, p.b, p.c, c(x));
    let r = sq(a * a + b * b);
    let g = I * cc;
    let z = I * t * t * r;
    let al = g / 2.0 * (c(1.0) + b / r);
    let e = (-z / 2.0).exp();
    u(
        a * pw(t, g + 2.0) * e * kf(al + 1.0, g + 2.0, z)?,
        (I - cc) * 2.0 * pw(t, g) * e * kf(al, g, z)?,
    )
}

pub(super) fn s2(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, t) = (p.a, p.b, p.c, c(x));
    let r = sq(a * a + b * b);
    let z = I * cc * t * t;
    let al = I * (r + b) / 2.0;
    let g = c(1.0) + I * r;
    let k = pw(t, g - 1.0) * (-z / 2.0).exp();
    u(-a * k * kf(al, g, z)?, (r + b) * k * kf(al + 1.0, g, z)?)
}

fn s3_parts(p: &EntryParams, x: f64) -> Result<(C64, C64, C64)> {
    let (a, b, cc, t) = (p.a, p.b, p.c, c(x));
    let r = sq(a * a + b * b);
    let z = I * cc * t * 2.0;
    let al = I * (r + b);
    let g = c(1.0) + I * r * 2.0;
    let k = pw(t, (g - 1.0) / 2.0) * (-z / 2.0).exp();
    Ok((k * kf(al, g, z)?, k * kf(al + 1.0, g, z)?, r))
}

pub(super) fn s3(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (k1, k2, _) = s3_parts(p, x)?;
    u(-p.a * k1, -I * p.a * k2)
}

pub(super) fn s3_amended(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (k1, k2, r) = s3_parts(p, x)?;
    u(-p.a * k1, (r + p.b) * k2)
}

pub(super) fn s4(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let s = c(x);
    let z = s.sin() * s.sin();
    let mu = I / (4.0 * w) * sq(a * a + (b + cc) * (b + cc));
    let nu = I / (4.0 * w) * sq(a * a + (b - cc) * (b - cc));
    let al = mu + nu - I * b / (2.0 * w);
    let be = mu + nu + I * b / (2.0 * w);
    let g = c(1.0) + mu * 2.0;
    let k = pw(z, mu) * pw(c(1.0) - z, nu);
    u(
        -a * k * hf(al + 1.0, be, g, z)?,
        (-I * 4.0 * w * mu + b + cc) * k * hf(al, be + 1.0, g, z)?,
    )
}

pub(super) fn s5(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let s = c(x);
    let z = s.sin() * s.sin();
    let mu = -I * cc / (2.0 * w);
    let nu = I / (2.0 * w) * sq(a * a + b * b);
    let lam = I / (2.0 * w) * sq(a * a + (b - cc) * (b - cc));
    let (al, be) = (nu + mu + lam, nu + mu - lam);
    let one_z = pw(c(1.0) - z, nu);
    u(
        (cc + I * w) * 2.0 * pw(z, mu) * one_z * hf(al, be, mu * 2.0, z)?,
        a * pw(z, mu + 1.0) * one_z * hf(al + 1.0, be + 1.0, mu * 2.0 + 2.0, z)?,
    )
}

pub(super) fn s6(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let s = c(x);
    let z = s.sin() * s.sin();
    let r = sq(a * a + cc * cc);
    let mu = I / (2.0 * w) * r;
    let nu = -I * b / (2.0 * w);
    let al = mu - I * cc / (2.0 * w);
    let be = c(0.5) + mu + nu * 2.0 + I * cc / (2.0 * w);
    let g = mu * 2.0 + 1.0;
    let zm = pw(z, mu);
    u(
        -a * zm * pw(c(1.0) - z, nu + 0.5) * hf(al + 1.0, be, g, z)?,
        (r + cc) * zm * pw(c(1.0) - z, nu) * hf(al, be, g, z)?,
    )
}

fn s7_parts(p: &EntryParams, x: f64) -> Result<(C64, C64)> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let z = -(c(x) * -2.0 * I).exp();
    let mu = (cc - I * b) / (2.0 * w);
    let nu = I / w * sq(a * a + b * b);
    let al = c(0.5) + cc / w + nu;
    let be = nu - I * b / w;
    let g = c(0.5) + mu * 2.0;
    let one_z = pw(c(1.0) - z, nu);
    Ok((
        (c(w) + cc * 2.0 - I * b * 2.0) * pw(z, mu) * one_z * hf(al, be, g, z)?,
        I * a * 2.0 * pw(z, mu + 0.5) * one_z * hf(al, be + 1.0, g + 1.0, z)?,
    ))
}

pub(super) fn s7(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (v1, v2) = s7_parts(p, x)?;
    u(v1, v2)
}

pub(super) fn s7_amended(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (v1, v2) = s7_parts(p, x)?;
    u(v1, -v2)
}

fn s8_parts(p: &EntryParams, x: f64) -> Result<(C64, C64, C64)> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let s = c(x);
    let z = s.tanh() * s.tanh();
    let mu = I / (2.0 * w) * sq(a * a + cc * cc);
    let nu = I * (b + cc) / (2.0 * w);
    let be = mu + I * cc / (2.0 * w);
    let al = c(0.5) + I * b / w + be;
    let g = mu * 2.0 + 1.0;
    let k = pw(z, mu);
    Ok((
        -a * k * pw(c(1.0) - z, nu) * hf(al, be, g, z)?,
        k * pw(c(1.0) - z, nu + 0.5) * hf(al, be + 1.0, g, z)?,
        mu,
    ))
}

pub(super) fn s8(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (v1, k2, mu) = s8_parts(p, x)?;
    u(v1, (-I * 2.0 * p.omega * mu * p.a + p.c) * k2)
}

pub(super) fn s8_amended(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (v1, k2, mu) = s8_parts(p, x)?;
    u(v1, (-I * 2.0 * p.omega * mu + p.c) * k2)
}

pub(super) fn s9(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let s = c(x);
    let z = s.tanh() * s.tanh();
    let mu = -I * cc / (2.0 * w);
    let nu = I * (b + cc) / (2.0 * w);
    let lam = sq(a * a - b * b) / (2.0 * w);
    let al = I * b / (2.0 * w) + lam;
    let be = I * b / (2.0 * w) - lam;
    let g = c(0.5) - I * cc / w;
    u(
        (cc * 2.0 + I * w) * pw(z, mu) * pw(c(1.0) - z, nu) * hf(al, be, g, z)?,
        a * pw(z, mu + 0.5) * pw(c(1.0) - z, nu + 0.5) * hf(al + 1.0, be + 1.0, g + 1.0, z)?,
    )
}

pub(super) fn s10(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let s = c(x);
    let z = s.tanh() * s.tanh();
    let mu = I / (4.0 * w) * sq(a * a + (b + cc) * (b + cc));
    let lam = I / (4.0 * w) * sq(a * a + (b - cc) * (b - cc));
    let nu = I * b / (2.0 * w);
    let (al, be) = (mu + nu + lam, mu + nu - lam);
    let g = c(1.0) + mu * 2.0;
    let k = pw(z, mu);
    u(
        -a * k * pw(c(1.0) - z, nu) * hf(al, be, g, z)?,
        (-I * 4.0 * w * mu + b + cc) * k * pw(c(1.0) - z, nu + 1.0) * hf(al + 1.0, be + 1.0, g, z)?,
    )
}

/// `z = ((e^φ + i)/(e^φ − i))²`.
fn cayley_square(x: f64) -> C64 {
    let e = c(x.exp());
    let q = (e + I) / (e - I);
    q * q
}

pub(super) fn s11(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let z = cayley_square(x);
    let mu = sq(a * a + (cc - I * b) * (cc - I * b)) / (2.0 * w);
    let lam = sq(a * a + (cc + I * b) * (cc + I * b)) / (2.0 * w);
    let nu = I * b / w;
    let (al, be) = (mu + nu + lam, mu + nu - lam);
    let g = c(1.0) + mu * 2.0;
    let k = pw(z, mu);
    u(
        a * k * pw(c(1.0) - z, nu) * hf(al, be, g, z)?,
        (mu * 2.0 * w - cc + I * b) * k * pw(c(1.0) - z, nu + 1.0) * hf(al + 1.0, be + 1.0, g, z)?,
    )
}

pub(super) fn s12(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let s = c(x);
    let z = s.tanh() * s.tanh();
    let mu = -I * cc / (2.0 * w);
    let nu = I / (2.0 * w) * sq(a * a + (b + cc) * (b + cc));
    let lam = I / (2.0 * w) * sq(a * a + b * b);
    let (al, be) = (mu + nu + lam, mu + nu - lam);
    let one_z = pw(c(1.0) - z, nu);
    u(
        (cc + I * w) * 2.0 * pw(z, mu) * one_z * hf(al, be, mu * 2.0, z)?,
        a * pw(z, mu + 1.0) * one_z * hf(al + 1.0, be + 1.0, mu * 2.0 + 2.0, z)?,
    )
}

fn s13_parts(p: &EntryParams, x: f64) -> Result<(C64, C64, C64)> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let s = c(x);
    let z = s.tanh() * s.tanh();
    let mu = I / (2.0 * w) * sq(a * a + cc * cc);
    let nu = I / (2.0 * w) * sq(a * a + (b + cc) * (b + cc));
    let al = mu + nu + I * b / (2.0 * w);
    let be = mu + nu - I * b / (2.0 * w);
    let g = c(1.0) + mu * 2.0;
    let k = pw(z, mu) * pw(c(1.0) - z, nu);
    Ok((-a * k * hf(al + 1.0, be, g, z)?, k * hf(al, be + 1.0, g, z)?, mu))
}

pub(super) fn s13(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (v1, k2, mu) = s13_parts(p, x)?;
    u(v1, (mu * 2.0 * p.omega + p.c) * k2)
}

pub(super) fn s13_amended(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (v1, k2, mu) = s13_parts(p, x)?;
    u(v1, (-I * 2.0 * p.omega * mu + p.c) * k2)
}

pub(super) fn s14(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let z = c((1.0 - x.tanh()) / 2.0);
    let mu = I * (b + cc) / (2.0 * w);
    let nu = I * (b - cc) / (2.0 * w);
    let g = c(0.5) + mu * 2.0;
    let lam = sq(a * a - b * b) / w;
    let (al, be) = (mu + nu + lam, mu + nu - lam);
    u(
        ((b + cc) * 2.0 - I * w) * pw(z, mu) * pw(c(1.0) - z, nu) * hf(al, be, g, z)?,
        a * 2.0 * pw(z, mu + 0.5) * pw(c(1.0) - z, nu + 0.5) * hf(al + 1.0, be + 1.0, g + 1.0, z)?,
    )
}

pub(super) fn s15(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let z = c(1.0 - (-2.0 * x).exp());
    let mu = I / w * sq(a * a + b * b);
    let nu = I * (b + cc) / (2.0 * w);
    let al = c(0.5) + mu + I * cc / w;
    let be = mu + I * b / w;
    let g = c(1.0) + mu * 2.0;
    let k = pw(z, mu);
    u(
        -a * k * pw(c(1.0) - z, nu) * hf(al, be, g, z)?,
        (-I * w * mu + b) * k * pw(c(1.0) - z, nu + 0.5) * hf(al, be + 1.0, g, z)?,
    )
}

pub(super) fn s16(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc) = (p.a, p.b, p.c);
    let rb = sq(b);
    let z = C64::new(1.0, 1.0) / rb * (b * x + cc);
    let mu = -I * a * a / (b * 2.0);
    u(rb * 2.0 * parabolic_d(mu, z)?, C64::new(1.0, 1.0) * a * parabolic_d(mu - 1.0, z)?)
}

pub(super) fn s17(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, t) = (p.a, p.b, p.c, c(x));
    let r = sq(a * a + cc * cc);
    let z = I * t * r * 2.0;
    let g = -I * b;
    let al = g * (c(1.0) - cc / r);
    let e = (-z / 2.0).exp();
    u(
        (c(1.0) - I * b * 2.0) * pw(t, g) * e * kf(al, g * 2.0, z)?,
        -I * a * pw(t, g + 1.0) * e * kf(al + 1.0, g * 2.0 + 2.0, z)?,
    )
}

pub(super) fn s18(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, t) = (p.a, p.b, p.c, c(x));
    let z = I * cc * t * t;
    let al = I * a * a / (cc * 4.0);
    let g = c(0.5) - I * b;
    let e = (-z / 2.0).exp();
    u(
        (b * 2.0 + I) * pw(t, g - 0.5) * e * kf(al, g, z)?,
        a * pw(t, g + 0.5) * e * kf(al + 1.0, g + 1.0, z)?,
    )
}

pub(super) fn s19(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let s = c(x);
    let z = s.sin() * s.sin();
    let mu = -I / (4.0 * w) * (b + cc);
    let nu = I / (4.0 * w) * (cc - b);
    let g = c(0.5) + mu * 2.0;
    let r = sq(a * a - b * b);
    let al = (r - I * b) / (2.0 * w);
    let be = -(r + I * b) / (2.0 * w);
    u(
        (b + cc + I * w) * pw(z, mu) * pw(c(1.0) - z, nu) * hf(al, be, g, z)?,
        a * pw(z, mu + 0.5) * pw(c(1.0) - z, nu + 0.5) * hf(al + 1.0, be + 1.0, g + 1.0, z)?,
    )
}

pub(super) fn s20(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let s = c(x);
    let z = s.sin() * s.sin();
    let mu = -I * cc / (2.0 * w);
    let nu = I * b / (2.0 * w);
    let lam = sq(a * a - (b - cc) * (b - cc)) / (2.0 * w);
    let (al, be) = (mu + nu + lam, mu + nu - lam);
    let g = c(0.5) + mu * 2.0;
    u(
        (cc * 2.0 + I * w) * pw(z, mu) * pw(c(1.0) - z, nu) * hf(al, be, g, z)?,
        a * pw(z, mu + 0.5) * pw(c(1.0) - z, nu + 0.5) * hf(al + 1.0, be + 1.0, g + 1.0, z)?,
    )
}

pub(super) fn s21(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let z = -(c(x) * -2.0 * I).exp();
    let mu = sq(a * a + (cc - I * b) * (cc - I * b)) / (2.0 * w);
    let lam = sq(a * a + (cc + I * b) * (cc + I * b)) / (2.0 * w);
    let nu = I * b / w;
    let (al, be) = (mu + nu + lam, mu + nu - lam);
    let g = c(1.0) + mu * 2.0;
    let k = pw(z, mu);
    u(
        a * k * pw(c(1.0) - z, nu) * hf(al, be, g, z)?,
        (mu * 2.0 * w - cc + I * b) * k * pw(c(1.0) - z, nu + 1.0) * hf(al + 1.0, be + 1.0, g, z)?,
    )
}

pub(super) fn s22(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let s = c(x);
    let z = s.tanh() * s.tanh();
    let mu = -I * cc / (2.0 * w);
    let nu = I / (2.0 * w) * sq(a * a + (b + cc) * (b + cc));
    let g = c(0.5) + mu * 2.0;
    let al = g + nu + I / (2.0 * w) * (b + cc);
    let be = nu - I / (2.0 * w) * (b + cc);
    let one_z = pw(c(1.0) - z, nu);
    u(
        (cc * 2.0 + I * w) * pw(z, mu) * one_z * hf(al, be, g, z)?,
        a * pw(z, mu + 0.5) * one_z * hf(al, be + 1.0, g + 1.0, z)?,
    )
}

pub(super) fn s23(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let s = c(x);
    let z = s.tanh() * s.tanh();
    let mu = -I * (b + cc) / (4.0 * w);
    let nu = I / (2.0 * w) * sq(a * a + b * b);
    let al = c(0.5) + nu - I * cc / (2.0 * w);
    let be = nu - I * b / (2.0 * w);
    let g = c(0.5) + mu * 2.0;
    let one_z = pw(c(1.0) - z, nu);
    u(
        (b + cc + I * w) * pw(z, mu) * one_z * hf(al, be, g, z)?,
        a * pw(z, mu + 0.5) * one_z * hf(al, be + 1.0, g + 1.0, z)?,
    )
}

pub(super) fn s24(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let z = cayley_square(x);
    let mu = (cc - I * b) / (2.0 * w);
    let nu = I / w * sq(a * a + b * b);
    let al = c(0.5) + nu + cc / w;
    let be = nu - I * b / w;
    let g = c(0.5) + mu * 2.0;
    let one_z = pw(c(1.0) - z, nu);
    u(
        (b * 2.0 + I * cc * 2.0 + I * w) * pw(z, mu) * one_z * hf(al, be, g, z)?,
        a * 2.0 * pw(z, mu + 0.5) * one_z * hf(al, be + 1.0, g + 1.0, z)?,
    )
}

pub(super) fn s25(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let z = c((1.0 - x.tanh()) / 2.0);
    let nu = I / (2.0 * w) * sq(a * a + (b - cc) * (b - cc));
    let mu = I / (2.0 * w) * sq(a * a + (b + cc) * (b + cc));
    let al = mu + nu + I * b / w;
    let be = mu + nu - I * b / w;
    let g = c(1.0) + mu * 2.0;
    let k = pw(z, mu) * pw(c(1.0) - z, nu);
    u(
        a * k * hf(al + 1.0, be, g, z)?,
        -(I * 2.0 * w * mu + b + cc) * k * hf(al, be + 1.0, g, z)?,
    )
}

pub(super) fn s26(p: &EntryParams, x: f64) -> Result<Spinor> {
    let (a, b, cc, w) = (p.a, p.b, p.c, p.omega);
    let z = c(1.0 - (-2.0 * x).exp());
    let mu = -I * b / w;
    let nu = I / (2.0 * w) * sq(a * a + (b + cc) * (b + cc));
    let lam = I / (2.0 * w) * sq(a * a + (b - cc) * (b - cc));
    let al = nu - I * b / w + lam;
    let be = nu - I * b / w - lam;
    let g = -I * b * 2.0 / w;
    let one_z = pw(c(1.0) - z, nu);
    u(
        (b * 2.0 + I * w) * 2.0 * pw(z, mu) * one_z * hf(al, be, g, z)?,
        a * pw(z, mu + 1.0) * one_z * hf(al + 1.0, be + 1.0, g + 2.0, z)?,
    )
}
