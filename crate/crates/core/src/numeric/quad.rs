//! Quadrature: adaptive Gauss–Kronrod for closures, cumulative integrals of
//! sampled data.

use super::Linear;
use crate::error::{Error, Result};

// 7-point Gauss / 15-point Kronrod nodes on [-1, 1] (non-negative half).
const XK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<T: Linear>(f: &impl Fn(f64) -> Result<T>, a: f64, b: f64) -> Result<(T, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kron = fc * WK[7];
    let mut gauss = fc * WG[3];
    for k in 0..7 {
        let dx = h * XK[k];
        let s = f(c - dx)? + f(c + dx)?;
        kron = kron + s * WK[k];
        if k % 2 == 1 {
            gauss = gauss + s * WG[k / 2];
        }
    }
    Ok((kron * h, (kron - gauss).magnitude() * h.abs()))
}

/// `∫_a^b f` by adaptive G7–K15 bisection to absolute-or-relative tolerance
/// `tol`.
pub fn integrate<T: Linear>(f: impl Fn(f64) -> Result<T>, a: f64, b: f64, tol: f64) -> Result<T> {
    if a == b {
        return Ok(T::zero());
    }
    let (v, e) = gk15(&f, a, b)?;
    let mut pieces = vec![(a, b, v, e)];
    loop {
        let total = pieces.iter().fold(T::zero(), |acc, p| acc + p.2);
        let err: f64 = pieces.iter().map(|p| p.3).sum();
        if err <= tol * total.magnitude().max(1.0) {
            return Ok(total);
        }
        if pieces.len() >= MAX_PIECES {
            return Err(Error::Accuracy(format!(
                "quadrature on [{a}, {b}] did not converge (error estimate {err:.3e})"
            )));
        }
        let (idx, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("non-empty");
        let (lo, hi, _, _) = pieces.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid)?;
        let (v2, e2) = gk15(&f, mid, hi)?;
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
    }
}

const MAX_PIECES: usize = 2_000;

const GL3_X: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
const GL3_W: [f64; 3] = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];

/// Running integral `I_k = ∫_{t_0}^{t_k} y dt` of samples on a strictly
/// increasing grid. Each panel integrates the cubic through the four nearest
/// samples with 3-point Gauss–Legendre, which is exact for cubics.
pub fn cumulative<T: Linear>(ts: &[f64], ys: &[T]) -> Vec<T> {
    assert_eq!(ts.len(), ys.len());
    let n = ts.len();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    out.push(T::zero());
    if n == 1 {
        return out;
    }
    let mut acc = T::zero();
    for i in 0..n - 1 {
        let (a, b) = (ts[i], ts[i + 1]);
        let panel = if n < 4 {
            // trapezoid for tiny inputs
            (ys[i] + ys[i + 1]) * (0.5 * (b - a))
        } else {
            let lo = i.saturating_sub(1).min(n - 4);
            let nodes = &ts[lo..lo + 4];
            let vals = &ys[lo..lo + 4];
            let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
            GL3_X.iter().zip(GL3_W).fold(T::zero(), |s, (&x, w)| {
                let t = c + h * x;
                s + lagrange(nodes, vals, t) * (w * h)
            })
        };
        acc = acc + panel;
        out.push(acc);
    }
    out
}

pub(crate) fn lagrange<T: Linear>(xs: &[f64], ys: &[T], t: f64) -> T {
    let mut s = T::zero();
    for (j, &xj) in xs.iter().enumerate() {
        let mut l = 1.0;
        for (m, &xm) in xs.iter().enumerate() {
            if m != j {
                l *= (t - xm) / (xj - xm);
            }
        }
        s = s + ys[j] * l;
    }
    s
}
