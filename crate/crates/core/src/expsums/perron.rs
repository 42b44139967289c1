use std::f64::consts::PI;

use num_complex::Complex64;
use quadrature::double_exponential;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::summation::{ComplexKahanSum, KahanSum};

/// Target absolute error per unit subinterval of the `t`-integral.
pub const PERRON_QUADRATURE_TOLERANCE: f64 = 1e-10;
/// Accumulated error estimate above which the quadrature is flagged.
const CONVERGENCE_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct PerronReport {
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub difference: f64,
    /// `|difference| / log(2 + M)`.
    pub ratio: f64,
    pub quadrature_error: f64,
    pub converged: bool,
}

/// `(ν^{it} - 1)/(it)`, equal to `log ν` at `t = 0`.
fn kernel(t: f64, log_nu: f64) -> Complex64 {
    if t == 0.0 {
        return Complex64::new(log_nu, 0.0);
    }
    let theta = t * log_nu;
    let half = (theta / 2.0).sin();
    Complex64::new(theta.sin() / t, 2.0 * half * half / t)
}

/// Both sides of the truncated Perron formula
/// `Σ_{N<n<νN} a_n ≈ (1/2π) ∫_{-M}^{M} (Σ_{M<m<κM} a_m m^{-it}) N^{it} (ν^{it}-1)/(it) dt`.
pub fn perron_check(a: &dyn Fn(u64) -> Complex64, m: f64, n: f64, nu: f64, kappa: f64) -> Result<PerronReport> {
    if !(m > 0.0 && m <= n && n < nu * n && nu * n < kappa * m) || !(m * kappa).is_finite() {
        return Err(Error::param(
            "M, N, nu, kappa",
            format!("need 0 < M <= N < νN < κM, got M={m}, N={n}, ν={nu}, κ={kappa}"),
        ));
    }
    let strict_range = |lo: f64, hi: f64| {
        let first = lo.floor() as u64 + 1;
        let last = hi.ceil() as u64 - 1;
        first..=last
    };
    let mut coeffs = Vec::new();
    for k in strict_range(m, kappa * m) {
        let v = a(k);
        if v.norm() > 1.0 + 1e-12 {
            return Err(Error::param("a", format!("|a_{k}| = {} exceeds 1", v.norm())));
        }
        coeffs.push((k, v, (n / k as f64).ln()));
    }
    let lhs: Complex64 = strict_range(n, nu * n).map(|k| a(k)).collect::<ComplexKahanSum>().value();

    let log_nu = nu.ln();
    let integrand = |t: f64| -> Complex64 {
        let mut acc = ComplexKahanSum::new();
        for &(_, v, log_ratio) in &coeffs {
            let (s, c) = (t * log_ratio).sin_cos();
            acc.add(v * Complex64::new(c, s));
        }
        acc.value() * kernel(t, log_nu)
    };
    let pieces = (2.0 * m).ceil().max(1.0) as usize;
    let width = 2.0 * m / pieces as f64;
    let mut re = KahanSum::new();
    let mut im = KahanSum::new();
    let mut err = 0.0;
    for p in 0..pieces {
        let lo = -m + p as f64 * width;
        let hi = if p + 1 == pieces { m } else { lo + width };
        let r = double_exponential::integrate(|t| integrand(t).re, lo, hi, PERRON_QUADRATURE_TOLERANCE);
        let i = double_exponential::integrate(|t| integrand(t).im, lo, hi, PERRON_QUADRATURE_TOLERANCE);
        re.add(r.integral);
        im.add(i.integral);
        err += r.error_estimate + i.error_estimate;
    }
    let rhs = Complex64::new(re.value(), im.value()) / (2.0 * PI);
    let difference = (lhs - rhs).norm();
    Ok(PerronReport {
        lhs_re: lhs.re,
        lhs_im: lhs.im,
        rhs_re: rhs.re,
        rhs_im: rhs.im,
        difference,
        ratio: difference / (2.0 + m).ln(),
        quadrature_error: err,
        converged: err.is_finite() && err < CONVERGENCE_LIMIT,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_limit() {
        let l = 1.5f64.ln();
        let k = kernel(1e-9, l);
        assert!((k.re - l).abs() < 1e-12 && k.im.abs() < 1e-9);
        assert_eq!(kernel(0.0, l), Complex64::new(l, 0.0));
    }

    #[test]
    fn zero_sequence() {
        let r = perron_check(&|_| Complex64::new(0.0, 0.0), 20.0, 20.0, 1.5, 4.0).unwrap();
        assert_eq!(r.difference, 0.0);
        assert!(r.converged);
    }

    #[test]
    fn window_rejected() {
        let one = |_| Complex64::new(1.0, 0.0);
        assert!(perron_check(&one, 20.0, 20.0, 1.5, 1.2).is_err());
        assert!(perron_check(&one, 30.0, 20.0, 1.5, 4.0).is_err());
        assert!(perron_check(&|_| Complex64::new(2.0, 0.0), 20.0, 20.0, 1.5, 4.0).is_err());
    }

    #[test]
    fn ones_close_to_count() {
        let r = perron_check(&|_| Complex64::new(1.0, 0.0), 20.0, 20.0, 1.5, 4.0).unwrap();
        assert_eq!(r.lhs_re, 9.0);
        assert!(r.converged);
        assert!(r.rhs_im.abs() < 1e-8);
        assert!(r.ratio < 1.0, "{r:?}");
    }
}
