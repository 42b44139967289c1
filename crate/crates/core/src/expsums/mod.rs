//! Direct evaluation of exponential sums twisted by Hecke eigenvalues and
//! their comparison with the classical bounds for such sums.

mod perron;
mod shifted;
pub mod suites;
mod weights;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfunc::{AdmissibleG, RealFn};
use crate::hecke::TauTable;
use crate::summation::{e, ComplexKahanSum, KahanSum};
use crate::vaaler::build_vaaler;

pub use perron::{perron_check, PerronReport, PERRON_QUADRATURE_TOLERANCE};
pub use shifted::{shifted_convolution, ShiftSign, ShiftedReport};
pub use weights::{bump, smooth_step, SmoothCutoff, SmoothWeightSpec};

/// `ε` used in every envelope.
pub const ENVELOPE_EPSILON: f64 = 0.01;

/// A phase `f` with derivative oracles up to order 3, the summation range
/// `(N, N']` and the derivative scale `T`.
#[derive(Clone)]
pub struct ExpSumSpec {
    phase: RealFn,
    derivatives: [RealFn; 3],
    start: u64,
    end: u64,
    scale: f64,
}

impl fmt::Debug for ExpSumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExpSumSpec")
            .field("start", &self.start)
            .field("end", &self.end)
            .field("scale", &self.scale)
            .finish()
    }
}

impl ExpSumSpec {
    pub fn new(phase: RealFn, derivatives: [RealFn; 3], start: u64, end: u64, scale: f64) -> Result<Self> {
        if start >= end {
            return Err(Error::param("range", format!("need N < N', got ({start}, {end}]")));
        }
        if !(scale >= 1.0) || !scale.is_finite() {
            return Err(Error::param("T", format!("{scale} is not a real >= 1")));
        }
        Ok(ExpSumSpec { phase, derivatives, start, end, scale })
    }

    /// `f(x) = T (x/N)^α` on `(N, N']`.
    pub fn monomial(scale: f64, alpha: f64, start: u64, end: u64) -> Result<Self> {
        if start == 0 {
            return Err(Error::param("N", "monomial phases need N >= 1"));
        }
        let n = start as f64;
        let term = move |k: i32| -> RealFn {
            let coeff: f64 = (0..k).map(|i| alpha - i as f64).product::<f64>() * scale / n.powi(k);
            Arc::new(move |x: f64| coeff * (x / n).powf(alpha - k as f64))
        };
        ExpSumSpec::new(term(0), [term(1), term(2), term(3)], start, end, scale)
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn end(&self) -> u64 {
        self.end
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn phase(&self, x: f64) -> f64 {
        (self.phase)(x)
    }

    /// `f^{(k)}(x)`, `k <= 3`.
    pub fn derivative(&self, k: usize, x: f64) -> Result<f64> {
        match k {
            0 => Ok(self.phase(x)),
            1..=3 => Ok((self.derivatives[k - 1])(x)),
            _ => Err(Error::param("k", "derivative oracles cover orders 0..=3")),
        }
    }

    /// `max |f^{(k)}(x)| N^k / T` over `samples` points of `[N/2, 3N]`, for
    /// `k = 0..=3`.
    pub fn scale_ratios(&self, samples: usize) -> [f64; 4] {
        let n = self.start.max(1) as f64;
        let samples = samples.max(2);
        let mut out = [0.0f64; 4];
        for i in 0..samples {
            let x = n / 2.0 + 2.5 * n * i as f64 / (samples - 1) as f64;
            for (k, slot) in out.iter_mut().enumerate() {
                let v = self.derivative(k, x).unwrap_or(f64::NAN);
                *slot = slot.max(v.abs() * n.powi(k as i32) / self.scale);
            }
        }
        out
    }
}

/// `Σ_{N<n<=N'} e(f(n))`, or `Σ λ(n) e(f(n))` with weights, summed in `n`
/// order.
pub fn exp_sum(spec: &ExpSumSpec, weights: Option<&TauTable>) -> Result<Complex64> {
    if let Some(table) = weights {
        table.check_index(spec.end)?;
    }
    let mut acc = ComplexKahanSum::new();
    for n in spec.start + 1..=spec.end {
        let term = e(spec.phase(n as f64));
        acc.add(match weights {
            Some(table) => term * table.lambda(n),
            None => term,
        });
    }
    Ok(acc.value())
}

/// `α (N1 - N) λ^{1/2} + λ^{-1/2}`.
pub fn vdc_bound(lambda_min: f64, alpha: f64, n: f64, n1: f64) -> Result<f64> {
    if !(lambda_min > 0.0) || !lambda_min.is_finite() {
        return Err(Error::param("lambda", format!("{lambda_min} is not positive")));
    }
    if !(alpha >= 1.0) || !alpha.is_finite() {
        return Err(Error::param("alpha", format!("{alpha} is below 1")));
    }
    if !(n1 >= n + 1.0) {
        return Err(Error::param("N1", format!("{n1} < N + 1 = {}", n + 1.0)));
    }
    Ok(alpha * (n1 - n) * lambda_min.sqrt() + 1.0 / lambda_min.sqrt())
}

/// Relative slack allowed in [`weyl_difference_check`].
pub const WEYL_RELATIVE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct WeylCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// Both sides of the differencing inequality for `z_1, ..., z_L`, taking
/// `b - a = L`.
pub fn weyl_difference_check(z: &[Complex64], q: usize) -> Result<WeylCheck> {
    if q == 0 {
        return Err(Error::param("Q", "must be a positive integer"));
    }
    let len = z.len();
    let total: Complex64 = z.iter().copied().collect::<ComplexKahanSum>().value();
    let lhs = total.norm_sqr();
    let qf = q as f64;
    let mut acc = KahanSum::new();
    // the q and -q autocorrelations are conjugate, so only real parts survive
    for shift in 0..q.min(len) {
        let c: Complex64 = (0..len - shift).map(|n| z[n + shift] * z[n].conj()).collect::<ComplexKahanSum>().value();
        let weight = 1.0 - shift as f64 / qf;
        acc.add(if shift == 0 { weight * c.re } else { 2.0 * weight * c.re });
    }
    let rhs = (1.0 + len as f64 / qf) * acc.value();
    Ok(WeylCheck { lhs, rhs, ok: lhs <= rhs + WEYL_RELATIVE_SLACK * rhs.abs() })
}

/// `N^{2/3+ε} T^{5/18} + N^{5/6} T^{-5/18}`.
pub fn slemma_envelope(n: f64, t: f64) -> f64 {
    n.powf(2.0 / 3.0 + ENVELOPE_EPSILON) * t.powf(5.0 / 18.0) + n.powf(5.0 / 6.0) * t.powf(-5.0 / 18.0)
}

#[derive(Debug, Clone, Serialize)]
pub struct SlemmaReport {
    pub n: u64,
    pub n_end: u64,
    pub t: f64,
    pub measured: f64,
    pub envelope: f64,
    pub ratio: f64,
    /// `Q = N^{2/3} T^{-5/9}`.
    pub q: f64,
    /// `N/T <= Q <= N/2`.
    pub q_in_window: bool,
    /// `(TQ)^{5/8} N^{1/4+ε} + N Q^{-1/2} + N^{1/2} Q^{1/2}` at the chosen `Q`.
    pub intermediate: f64,
    /// Integer shift length used in the Cauchy step.
    pub q_shift: u64,
    /// `Q^2 |S|^2`.
    pub cauchy_lhs: f64,
    /// `(N' - N + Q) Σ_n |Σ_{0<=q<Q} z_{n+q} λ(n+q) e(f(n+q))|^2`.
    pub cauchy_rhs: f64,
    pub cauchy_ok: bool,
}

/// `|S|` for `S = Σ_{N<n<=N'} λ(n) e(f(n))` against its envelope, together
/// with the exact Cauchy step of the differencing argument.
pub fn slemma_ratio(spec: &ExpSumSpec, table: &TauTable) -> Result<SlemmaReport> {
    let (start, end) = (spec.start, spec.end);
    if start < 3 || end > 2 * start {
        return Err(Error::param("range", format!("need 3 <= N < N' <= 2N, got ({start}, {end}]")));
    }
    let n = start as f64;
    let t = spec.scale;
    let t_min = n.powf(0.75);
    if t < t_min {
        return Err(Error::param("T", format!("{t} below N^{{3/4}} = {t_min}")));
    }
    table.check_index(end)?;
    let terms: Vec<Complex64> = (start + 1..=end).map(|k| table.lambda(k) * e(spec.phase(k as f64))).collect();
    let s = terms.iter().copied().collect::<ComplexKahanSum>().value();
    let measured = s.norm();
    let envelope = slemma_envelope(n, t);

    let q = n.powf(2.0 / 3.0) / t.powf(5.0 / 9.0);
    let q_in_window = n / t <= q && q <= n / 2.0;
    let intermediate = (t * q).powf(5.0 / 8.0) * n.powf(0.25 + ENVELOPE_EPSILON) + n / q.sqrt() + (n * q).sqrt();

    let q_shift = (q.floor() as u64).max(1);
    let len = terms.len() as i64;
    let qs = q_shift as i64;
    let mut inner_total = KahanSum::new();
    // n runs over N - Q < n < N'; in 0-based offsets k = n - N - 1
    for k in (1 - qs)..len {
        let lo = k.max(0);
        let hi = (k + qs - 1).min(len - 1);
        if lo > hi {
            continue;
        }
        let inner = terms[lo as usize..=hi as usize].iter().copied().collect::<ComplexKahanSum>().value();
        inner_total.add(inner.norm_sqr());
    }
    let qf = q_shift as f64;
    let cauchy_lhs = qf * qf * measured * measured;
    let cauchy_rhs = (len as f64 + qf) * inner_total.value();
    Ok(SlemmaReport {
        n: start,
        n_end: end,
        t,
        measured,
        envelope,
        ratio: measured / envelope,
        q,
        q_in_window,
        intermediate,
        q_shift,
        cauchy_lhs,
        cauchy_rhs,
        cauchy_ok: cauchy_lhs <= cauchy_rhs * (1.0 + WEYL_RELATIVE_SLACK),
    })
}

/// `J = max(1, [g(N)/N · N^η])`.
pub fn j_choice(g: &AdmissibleG, n: f64, eta: f64) -> usize {
    let j = (g.g(n) / n * n.powf(eta)).floor();
    if j >= 1.0 {
        j as usize
    } else {
        1
    }
}

/// Largest `max/min` spread of `|f^{(k)}(x)|` over `(N, N1]` accepted as
/// comparability in the delta-sum hypotheses.
pub const COMPARABILITY_SPREAD: f64 = 4.0;

#[derive(Debug, Clone, Serialize)]
pub struct DeltaSumReport {
    pub label: String,
    pub j: usize,
    pub n: u64,
    pub n1: u64,
    pub measured: f64,
    pub envelope: f64,
    pub ratio: f64,
    /// `f ≍ f(N)`, `f' ≍ f(N)/N`, `f'' ≍ f(N)/N^2` on `(N, N1]`, sampled.
    pub hypotheses_hold: bool,
    /// `min, max` of `|f^{(k)}(x)| N^k / f(N)` over the samples, `k = 0, 1, 2`.
    pub comparability: [(f64, f64); 3],
}

/// `Σ_{N<n<=2N} δ(-f(n))` with the Fejér-type `δ` of order `J`.
pub fn delta_sum_check(g: &AdmissibleG, j: usize, n: u64) -> Result<DeltaSumReport> {
    if n == 0 {
        return Err(Error::param("N", "must be at least 1"));
    }
    let approx = build_vaaler(j)?;
    let n1 = 2 * n;
    let nf = n as f64;
    let f_n = g.f(nf)?;
    let mut acc = KahanSum::new();
    for k in n + 1..=n1 {
        acc.add(approx.delta(-g.f(k as f64)?));
    }
    let measured = acc.value();
    let envelope = nf / j as f64 + (j as f64 * f_n).sqrt() + nf / (j as f64 * f_n).sqrt();

    let scales = [f_n, f_n / nf, f_n / (nf * nf)];
    let mut comparability = [(f64::INFINITY, 0.0f64); 3];
    for i in 1..=64 {
        let x = nf + nf * i as f64 / 64.0;
        for (k, s) in scales.iter().enumerate() {
            let r = g.f_derivative(k as u8, x)?.abs() / s;
            comparability[k] = (comparability[k].0.min(r), comparability[k].1.max(r));
        }
    }
    let hypotheses_hold = comparability.iter().all(|&(lo, hi)| lo > 0.0 && hi <= COMPARABILITY_SPREAD * lo);
    Ok(DeltaSumReport {
        label: g.label().to_string(),
        j,
        n,
        n1,
        measured,
        envelope,
        ratio: measured / envelope,
        hypotheses_hold,
        comparability,
    })
}
