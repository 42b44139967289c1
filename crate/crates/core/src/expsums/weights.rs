use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};

/// The mollifier `exp(1 - 1/(1 - s^2))`, `s = t - 3/2`, supported on
/// `[1/2, 5/2]` with peak 1 at `t = 3/2`.
pub fn bump(t: f64) -> f64 {
    bump_derivatives(t)[0]
}

/// `β, β', β''` at `t`.
fn bump_derivatives(t: f64) -> [f64; 3] {
    let s = t - 1.5;
    let u = 1.0 - s * s;
    if !(u > 0.0) {
        return [0.0; 3];
    }
    let b = (1.0 - 1.0 / u).exp();
    let d1 = -2.0 * s / (u * u);
    let d2 = 4.0 * s * s / u.powi(4) - 2.0 / (u * u) - 8.0 * s * s / u.powi(3);
    [b, b * d1, b * d2]
}

fn h(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// Smooth step from 0 at `t <= 0` to 1 at `t >= 1`.
pub fn smooth_step(t: f64) -> f64 {
    let a = h(t);
    let b = h(1.0 - t);
    a / (a + b)
}

/// `g(x, y) = β(x/X) cos(2π(P-1)x/X) β(y/Y)`, supported on
/// `[X/2, 5X/2] × [Y/2, 5Y/2]`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SmoothWeightSpec {
    pub x_scale: f64,
    pub y_scale: f64,
    pub p: f64,
}

impl SmoothWeightSpec {
    pub fn new(x_scale: f64, y_scale: f64, p: f64) -> Result<Self> {
        for (name, v) in [("X", x_scale), ("Y", y_scale), ("P", p)] {
            if !(v >= 1.0) || !v.is_finite() {
                return Err(Error::param(name, format!("{v} is not a real >= 1")));
            }
        }
        Ok(SmoothWeightSpec { x_scale, y_scale, p })
    }

    pub fn weight(&self, x: f64, y: f64) -> f64 {
        self.partial(0, 0, x, y)
    }

    /// `x`-factor and its first two derivatives.
    fn x_factor(&self, x: f64) -> [f64; 3] {
        let [b0, b1, b2] = bump_derivatives(x / self.x_scale);
        let (b1, b2) = (b1 / self.x_scale, b2 / (self.x_scale * self.x_scale));
        let w = TAU * (self.p - 1.0) / self.x_scale;
        let (s, c) = (w * x).sin_cos();
        let (c1, c2) = (-w * s, -w * w * c);
        [b0 * c, b1 * c + b0 * c1, b2 * c + 2.0 * b1 * c1 + b0 * c2]
    }

    fn y_factor(&self, y: f64) -> [f64; 3] {
        let [b0, b1, b2] = bump_derivatives(y / self.y_scale);
        [b0, b1 / self.y_scale, b2 / (self.y_scale * self.y_scale)]
    }

    /// `∂_x^i ∂_y^j g(x, y)` for `i, j <= 2`.
    pub fn partial(&self, i: usize, j: usize, x: f64, y: f64) -> f64 {
        self.x_factor(x)[i.min(2)] * self.y_factor(y)[j.min(2)]
    }

    /// Closed support in `x`.
    pub fn x_support(&self) -> (f64, f64) {
        (self.x_scale / 2.0, 2.5 * self.x_scale)
    }

    pub fn y_support(&self) -> (f64, f64) {
        (self.y_scale / 2.0, 2.5 * self.y_scale)
    }

    /// `max |x^i y^j ∂^{i,j} g| (1 + x/X)(1 + y/Y) / P^{i+j}` over a
    /// `samples × samples` grid of the support, for `i + j <= 2`; entry
    /// `[i][j]`, zero where `i + j > 2`.
    pub fn derivative_ratios(&self, samples: usize) -> [[f64; 3]; 3] {
        let mut out = [[0.0f64; 3]; 3];
        let (x0, x1) = self.x_support();
        let (y0, y1) = self.y_support();
        let samples = samples.max(2);
        for a in 0..samples {
            let x = x0 + (x1 - x0) * (a as f64 + 0.5) / samples as f64;
            for b in 0..samples {
                let y = y0 + (y1 - y0) * (b as f64 + 0.5) / samples as f64;
                let envelope = 1.0 / ((1.0 + x / self.x_scale) * (1.0 + y / self.y_scale));
                for i in 0..3 {
                    for j in 0..3 - i {
                        let v = x.powi(i as i32) * y.powi(j as i32) * self.partial(i, j, x, y);
                        let r = v.abs() / (envelope * self.p.powi((i + j) as i32));
                        out[i][j] = out[i][j].max(r);
                    }
                }
            }
        }
        out
    }
}

/// `Φ = 1` on `[N, N']`, smoothly ramping to 0 on `[N/2, N]` and
/// `[N', 5N/2]`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SmoothCutoff {
    pub n: f64,
    pub n_end: f64,
}

impl SmoothCutoff {
    pub fn new(n: f64, n_end: f64) -> Result<Self> {
        if !(n > 0.0 && n < n_end && n_end <= 2.0 * n) {
            return Err(Error::param("range", format!("need 0 < N < N' <= 2N, got [{n}, {n_end}]")));
        }
        Ok(SmoothCutoff { n, n_end })
    }

    pub fn value(&self, x: f64) -> f64 {
        if x < self.n {
            smooth_step((x - self.n / 2.0) / (self.n / 2.0))
        } else if x <= self.n_end {
            1.0
        } else {
            let top = 2.5 * self.n;
            smooth_step((top - x) / (top - self.n_end))
        }
    }

    /// `max |Φ^{(k)}| N^k` for `k = 1, 2` by central differences on
    /// `samples` points of the support.
    pub fn derivative_scales(&self, samples: usize) -> [f64; 2] {
        let step = self.n * 1e-4;
        let (lo, hi) = (self.n / 2.0, 2.5 * self.n);
        let mut out = [0.0f64; 2];
        for i in 0..samples.max(2) {
            let x = lo + (hi - lo) * (i as f64 + 0.5) / samples.max(2) as f64;
            let (a, b, c) = (self.value(x - step), self.value(x), self.value(x + step));
            out[0] = out[0].max(((c - a) / (2.0 * step)).abs() * self.n);
            out[1] = out[1].max(((c - 2.0 * b + a) / (step * step)).abs() * self.n * self.n);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_shape() {
        assert_eq!(bump(1.5), 1.0);
        assert_eq!(bump(0.5), 0.0);
        assert_eq!(bump(2.5), 0.0);
        assert_eq!(bump(0.0), 0.0);
        assert!((bump(1.0) - (1.0 - 1.0 / 0.75f64).exp()).abs() < 1e-15);
        assert!((bump(1.2) - bump(1.8)).abs() < 1e-15);
    }

    #[test]
    fn analytic_partials_match_differences() {
        let w = SmoothWeightSpec::new(10.0, 20.0, 3.0).unwrap();
        let (x, y) = (13.7, 31.1);
        let hx = 1e-5;
        let dx = (w.weight(x + hx, y) - w.weight(x - hx, y)) / (2.0 * hx);
        assert!((dx - w.partial(1, 0, x, y)).abs() < 1e-7);
        let dxx = (w.weight(x + hx, y) - 2.0 * w.weight(x, y) + w.weight(x - hx, y)) / (hx * hx);
        assert!((dxx - w.partial(2, 0, x, y)).abs() < 1e-4);
        let dy = (w.weight(x, y + hx) - w.weight(x, y - hx)) / (2.0 * hx);
        assert!((dy - w.partial(0, 1, x, y)).abs() < 1e-7);
        let dxy = (w.partial(1, 0, x, y + hx) - w.partial(1, 0, x, y - hx)) / (2.0 * hx);
        assert!((dxy - w.partial(1, 1, x, y)).abs() < 1e-7);
    }

    #[test]
    fn derivative_ratios_bounded_in_p() {
        let base = SmoothWeightSpec::new(100.0, 100.0, 1.0).unwrap().derivative_ratios(60);
        for p in [4.0, 16.0, 64.0] {
            let r = SmoothWeightSpec::new(100.0, 100.0, p).unwrap().derivative_ratios(60);
            for i in 0..3 {
                for j in 0..3 - i {
                    assert!(r[i][j].is_finite() && r[i][j] <= 80.0 * base[i][j].max(1.0), "P={p}: {r:?}");
                }
            }
        }
    }

    #[test]
    fn cutoff_shape() {
        let phi = SmoothCutoff::new(100.0, 180.0).unwrap();
        assert_eq!(phi.value(100.0), 1.0);
        assert_eq!(phi.value(150.0), 1.0);
        assert_eq!(phi.value(180.0), 1.0);
        assert_eq!(phi.value(50.0), 0.0);
        assert_eq!(phi.value(250.0), 0.0);
        assert_eq!(phi.value(10.0), 0.0);
        assert!((phi.value(75.0) - 0.5).abs() < 1e-15);
        let d = phi.derivative_scales(400);
        assert!(d.iter().all(|v| v.is_finite() && *v < 100.0));
        assert!(SmoothCutoff::new(100.0, 250.0).is_err());
    }
}
