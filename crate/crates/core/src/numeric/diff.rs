//! Finite differences: fixed 4th-order central stencils for closures and
//! Fornberg weights for sampled data on arbitrary grids.

use super::Linear;
use crate::error::Result;

/// Step `1e-5·max(1, |t|)` used for first derivatives of smooth closures.
pub fn default_step(t: f64) -> f64 {
    1e-5 * t.abs().max(1.0)
}

/// Step `1e-3·max(1, |t|)` used for second derivatives, where roundoff grows
/// as `ε/h²`.
pub fn second_derivative_step(t: f64) -> f64 {
    1e-3 * t.abs().max(1.0)
}

/// `f'(t)` by the five-point central stencil, error `O(h⁴)`.
pub fn derivative<T: Linear>(f: impl Fn(f64) -> Result<T>, t: f64, h: f64) -> Result<T> {
    let (m2, m1, p1, p2) = (f(t - 2.0 * h)?, f(t - h)?, f(t + h)?, f(t + 2.0 * h)?);
    Ok(((p1 - m1) * 8.0 - (p2 - m2)) * (1.0 / (12.0 * h)))
}

/// `f''(t)` by the five-point central stencil, error `O(h⁴)`.
pub fn second_derivative<T: Linear>(f: impl Fn(f64) -> Result<T>, t: f64, h: f64) -> Result<T> {
    let (m2, m1, c, p1, p2) = (f(t - 2.0 * h)?, f(t - h)?, f(t)?, f(t + h)?, f(t + 2.0 * h)?);
    Ok(((p1 + m1) * 16.0 - (p2 + m2) - c * 30.0) * (1.0 / (12.0 * h * h)))
}

/// Fornberg weights for the `order`-th derivative at `x0` from nodes `xs`.
pub fn fornberg_weights(x0: f64, xs: &[f64], order: usize) -> Vec<f64> {
    let n = xs.len();
    assert!(n > order, "fornberg_weights: need more than {order} nodes");
    let mut c = vec![vec![0.0; order + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

/// First derivative of sampled data: five-point stencils in the interior
/// (4th order) and four-point one-sided stencils at the two ends on each side
/// (3rd order). Works on non-uniform grids.
pub fn grid_derivative<T: Linear>(ts: &[f64], ys: &[T]) -> Vec<T> {
    assert_eq!(ts.len(), ys.len());
    let n = ts.len();
    assert!(n >= 5, "grid_derivative: need at least 5 samples");
    (0..n)
        .map(|i| {
            let lo = if i < 2 {
                0
            } else if i + 2 >= n {
                n - 4
            } else {
                i - 2
            };
            let hi = if i >= 2 && i + 2 < n { i + 3 } else { lo + 4 };
            let w = fornberg_weights(ts[i], &ts[lo..hi], 1);
            w.iter().zip(&ys[lo..hi]).fold(T::zero(), |acc, (&wk, &y)| acc + y * wk)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fornberg_reproduces_central_stencil() {
        let w = fornberg_weights(0.0, &[-2.0, -1.0, 0.0, 1.0, 2.0], 1);
        let want = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
        for (a, b) in w.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        let w = fornberg_weights(0.0, &[-1.0, 0.0, 1.0], 2);
        assert!((w[0] - 1.0).abs() < 1e-15 && (w[1] + 2.0).abs() < 1e-15);
    }

    #[test]
    fn closure_derivatives() {
        let d = derivative(|t| Ok(t.sin()), 0.7, default_step(0.7)).unwrap();
        assert!((d - 0.7f64.cos()).abs() < 1e-10);
        let d2 = second_derivative(|t| Ok(t.exp()), 1.3, second_derivative_step(1.3)).unwrap();
        assert!((d2 - 1.3f64.exp()).abs() < 1e-9);
    }

    #[test]
    fn grid_derivative_nonuniform() {
        let ts: Vec<f64> = (0..120).map(|k| 0.05 * k as f64 + 0.001 * (k as f64).sin()).collect();
        let ys: Vec<f64> = ts.iter().map(|t| (2.0 * t).cos()).collect();
        let d = grid_derivative(&ts, &ys);
        for (t, dv) in ts.iter().zip(&d) {
            assert!((dv + 2.0 * (2.0 * t).sin()).abs() < 2e-3, "t = {t}");
        }
        // interior points are 4th order
        for i in 2..118 {
            assert!((d[i] + 2.0 * (2.0 * ts[i]).sin()).abs() < 2e-5);
        }
    }
}
