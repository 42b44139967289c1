//! Vaaler's trigonometric approximation `ψ*` of the sawtooth `ψ` together
//! with the nonnegative majorant `δ` of the error `|ψ* - ψ|`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::summation::e;

/// `ψ(x) = x - [x] - 1/2`.
pub fn sawtooth(x: f64) -> f64 {
    x - x.floor() - 0.5
}

/// Limit of `W(t)` as `t -> 0`.
pub const W_AT_ZERO: f64 = 1.0;
/// Limit of `W(t)` as `|t| -> 1`.
pub const W_AT_ONE: f64 = 0.0;

const SERIES_CUTOFF: f64 = 1e-3;

/// `π t cot(π t)`, by its Taylor series for small `|t|`.
fn pi_t_cot_pi_t(t: f64) -> f64 {
    if t.abs() < SERIES_CUTOFF {
        let u = (PI * t) * (PI * t);
        // 1 - u/3 - u^2/45 - 2u^3/945
        1.0 - u / 3.0 - u * u / 45.0 - 2.0 * u * u * u / 945.0
    } else {
        PI * t / (PI * t).tan()
    }
}

/// `W(t) = π t (1 - |t|) cot(π t) + |t|` for `0 < |t| < 1`.
pub fn vaaler_w(t: f64) -> Result<f64> {
    if !(t.abs() > 0.0 && t.abs() < 1.0) {
        return Err(Error::param("t", format!("{t} outside 0 < |t| < 1")));
    }
    Ok((1.0 - t.abs()) * pi_t_cot_pi_t(t) + t.abs())
}

/// Coefficients of `ψ*(x) = Σ_{1<=|j|<=J} a(j) e(jx)` and
/// `δ(x) = Σ_{|j|<=J} b(j) e(jx)`.
#[derive(Debug, Clone)]
pub struct VaalerApprox {
    j_max: usize,
    /// `a(j)` for `j = 1..=J` at index `j - 1`; `a(-j)` is the conjugate.
    a: Vec<Complex64>,
    /// `b(j)` for `j = 0..=J`; even in `j`.
    b: Vec<f64>,
}

pub fn build_vaaler(j_max: usize) -> Result<VaalerApprox> {
    if j_max == 0 {
        return Err(Error::param("J", "must be at least 1"));
    }
    let scale = (j_max + 1) as f64;
    let a = (1..=j_max)
        .map(|j| {
            let w = vaaler_w(j as f64 / scale)?;
            // -(2 π i j)^{-1} W = i W / (2 π j)
            Ok(Complex64::new(0.0, w / (2.0 * PI * j as f64)))
        })
        .collect::<Result<Vec<_>>>()?;
    let b = (0..=j_max).map(|j| (1.0 - j as f64 / scale) / (2.0 * scale)).collect();
    Ok(VaalerApprox { j_max, a, b })
}

const IMAGINARY_TOLERANCE: f64 = 1e-12;

impl VaalerApprox {
    pub fn j_max(&self) -> usize {
        self.j_max
    }

    /// `a(j)` for `1 <= |j| <= J`.
    pub fn a(&self, j: i64) -> Option<Complex64> {
        let k = j.unsigned_abs() as usize;
        if k == 0 || k > self.j_max {
            return None;
        }
        let v = self.a[k - 1];
        Some(if j > 0 { v } else { v.conj() })
    }

    /// `b(j)` for `|j| <= J`.
    pub fn b(&self, j: i64) -> Option<f64> {
        self.b.get(j.unsigned_abs() as usize).copied()
    }

    /// `(ψ*(x), δ(x))`, summed over `±j` pairs in increasing `|j|`.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let r = x - x.floor();
        let mut psi = Complex64::new(0.0, 0.0);
        let mut delta = Complex64::new(self.b[0], 0.0);
        for j in 1..=self.j_max {
            let phase = (j as f64 * r).fract();
            let plus = e(phase);
            let minus = plus.conj();
            let a = self.a[j - 1];
            psi += a * plus + a.conj() * minus;
            delta += self.b[j] * (plus + minus);
        }
        debug_assert!(psi.im.abs() <= IMAGINARY_TOLERANCE && delta.im.abs() <= IMAGINARY_TOLERANCE);
        (psi.re, delta.re)
    }

    pub fn psi_star(&self, x: f64) -> f64 {
        self.eval(x).0
    }

    pub fn delta(&self, x: f64) -> f64 {
        self.eval(x).1
    }
}

/// Pointwise tolerance for `|ψ* - ψ| <= δ`.
pub const MAJORANT_TOLERANCE: f64 = 1e-11;
/// Tolerance for `δ >= 0`.
pub const NONNEGATIVE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct MajorantReport {
    pub j_max: usize,
    pub points: usize,
    /// Points where `|ψ* - ψ| > δ + 1e-11` or `δ < -1e-12`.
    pub violations: Vec<f64>,
    /// `min (δ - |ψ* - ψ|)` over the grid.
    pub worst_margin: f64,
    pub worst_x: f64,
    pub min_delta: f64,
}

impl MajorantReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn majorant_check(approx: &VaalerApprox, grid: &[f64]) -> MajorantReport {
    let mut report = MajorantReport {
        j_max: approx.j_max(),
        points: grid.len(),
        violations: Vec::new(),
        worst_margin: f64::INFINITY,
        worst_x: f64::NAN,
        min_delta: f64::INFINITY,
    };
    for &x in grid {
        let (psi_star, delta) = approx.eval(x);
        let margin = delta - (psi_star - sawtooth(x)).abs();
        if margin < report.worst_margin {
            report.worst_margin = margin;
            report.worst_x = x;
        }
        report.min_delta = report.min_delta.min(delta);
        if margin < -MAJORANT_TOLERANCE || delta < -NONNEGATIVE_TOLERANCE {
            report.violations.push(x);
        }
    }
    report
}

/// `count` equally spaced points `k / count` in `[0, 1)`.
pub fn unit_grid(count: usize) -> Vec<f64> {
    (0..count).map(|k| k as f64 / count as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sawtooth_values() {
        assert_eq!(sawtooth(3.0), -0.5);
        assert_eq!(sawtooth(2.25), -0.25);
        assert_eq!(sawtooth(-0.25), 0.25);
    }

    #[test]
    fn w_values() {
        assert!((vaaler_w(0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((vaaler_w(0.25).unwrap() - (3.0 * PI / 16.0 + 0.25)).abs() < 1e-15);
        assert!((vaaler_w(0.25).unwrap() - 0.839_048_622_548_086_2).abs() < 1e-15);
        assert!((vaaler_w(1e-9).unwrap() - W_AT_ZERO).abs() < 1e-8);
        assert!((vaaler_w(0.999_999).unwrap() - W_AT_ONE).abs() < 1e-5);
        assert_eq!(vaaler_w(-0.3).unwrap(), vaaler_w(0.3).unwrap());
        for t in [0.0, 1.0, -1.0, 1.5] {
            assert!(vaaler_w(t).is_err());
        }
    }

    #[test]
    fn series_branch_is_continuous() {
        let below = vaaler_w(SERIES_CUTOFF * (1.0 - 1e-9)).unwrap();
        let above = vaaler_w(SERIES_CUTOFF * (1.0 + 1e-9)).unwrap();
        assert!((below - above).abs() < 1e-12);
    }

    #[test]
    fn coefficients() {
        let v = build_vaaler(1).unwrap();
        assert_eq!(v.b(0), Some(0.25));
        assert_eq!(v.b(1), Some(0.125));
        assert_eq!(v.b(-1), Some(0.125));
        // -(2 π i)^{-1} W(1/2) = -1/(4 π i) = i/(4π)
        let a1 = v.a(1).unwrap();
        assert!(a1.re.abs() < 1e-18 && (a1.im - 1.0 / (4.0 * PI)).abs() < 1e-16);
        assert_eq!(v.a(-1).unwrap(), a1.conj());
        assert!(v.a(0).is_none() && v.a(2).is_none());
        assert!(build_vaaler(0).is_err());

        let v = build_vaaler(10).unwrap();
        for j in 1..=10i64 {
            assert!(v.a(j).unwrap().norm() * j as f64 <= 1.0);
            let b = v.b(j).unwrap();
            assert!(b > 0.0 && b <= 1.0 / 22.0);
        }
    }

    #[test]
    fn delta_at_zero_is_half() {
        for j in [1, 2, 5, 10, 100, 1000] {
            let v = build_vaaler(j).unwrap();
            assert!((v.delta(0.0) - 0.5).abs() < 1e-12, "J = {j}");
        }
    }

    #[test]
    fn pointwise_examples() {
        let v = build_vaaler(10).unwrap();
        let (p, d) = v.eval(0.37);
        assert!((p - sawtooth(0.37)).abs() <= d);
        assert!(build_vaaler(5).unwrap().delta(0.5) >= 0.0);
        // J = 1 at x = 1/2: ψ = ψ* = δ = 0, so the inequality is tight
        let r = majorant_check(&build_vaaler(1).unwrap(), &[0.5]);
        assert!(r.passed() && r.worst_margin.abs() < 1e-15 && r.min_delta.abs() < 1e-15);
        let ints: Vec<f64> = (-5..=5).map(f64::from).collect();
        for j in [1, 5, 10] {
            assert!(majorant_check(&build_vaaler(j).unwrap(), &ints).passed());
        }
    }

    #[test]
    fn periodic_and_mean() {
        let v = build_vaaler(17).unwrap();
        for k in 0..50 {
            let x = k as f64 * 0.0731 - 1.3;
            let (p0, d0) = v.eval(x);
            let (p1, d1) = v.eval(x + 1.0);
            assert!((p0 - p1).abs() < 1e-12 && (d0 - d1).abs() < 1e-12);
        }
        // a uniform rule with more than J nodes integrates the trigonometric polynomial exactly
        let grid = unit_grid(64);
        let mean: f64 = grid.iter().map(|&x| v.delta(x)).sum::<f64>() / grid.len() as f64;
        assert!((mean - v.b(0).unwrap()).abs() < 1e-9);
    }
}
