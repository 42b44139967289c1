//! The reduction of the prime-indexed sum to trilinear sums `K_d`, `L_d`,
//! the parameter machinery around them, and the cancellation experiment.
//!
//! Dyadic ranges `k ~ K` are enumerated as `K <= k < 2K`.

mod bounds;
mod experiment;
mod reduction;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfunc::AdmissibleG;
use crate::hecke::{HeckeTables, TauTable};
use crate::summation::{e, ComplexKahanSum};

pub use bounds::{
    bound_grid, check_uvz, choose_uvz, shipped_bound_grid, type_sum_bound_report, BoundPoint, BoundReport, BoundRow,
    PointStatus, SumKind, UVZParams, UVZ_EQUALITY_TOLERANCE,
};
pub use experiment::{
    main_theorem_experiment, write_run_csv, write_run_json, ExperimentOptions, RunExport, RunRecord, DEFAULT_ENVELOPE_C,
};
pub use reduction::{rewrite_identity_check, s1_s2_split_check, RewriteReport, SplitReport, SPLIT_TOLERANCE};

/// Enumeration convention recorded in every exported report.
pub const DYADIC_CONVENTION: &str = "k ~ K means K <= k < 2K";
/// Default `η`.
pub const DEFAULT_ETA: f64 = 1e-3;

/// A coefficient sequence `k -> c_k`, `k >= 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Coefficients {
    Constant(Complex64),
    /// Uniform phases from a seeded ChaCha8 stream, drawn in index order.
    RandomUnimodular {
        seed: u64,
    },
    /// `c_k = values[k - 1]`, zero past the end.
    Explicit(Vec<Complex64>),
    /// `c_k = base_{dk} λ(k)` for the divisor `d` of the sum being evaluated.
    /// Bounded by `d(k)` rather than 1.
    Structured(Box<Coefficients>),
}

impl Coefficients {
    pub fn ones() -> Self {
        Coefficients::Constant(Complex64::new(1.0, 0.0))
    }

    pub fn zeros() -> Self {
        Coefficients::Constant(Complex64::new(0.0, 0.0))
    }

    fn validate(&self, name: &'static str, allow_structured: bool) -> Result<()> {
        let bound = 1.0 + 1e-12;
        match self {
            Coefficients::Constant(c) if c.norm() > bound => Err(Error::param(name, format!("|{c}| exceeds 1"))),
            Coefficients::Explicit(v) => match v.iter().position(|c| c.norm() > bound) {
                Some(k) => Err(Error::param(name, format!("entry {} has modulus {} > 1", k + 1, v[k].norm()))),
                None => Ok(()),
            },
            Coefficients::Structured(base) => {
                if !allow_structured {
                    return Err(Error::param(name, "the structured choice applies to A and B only"));
                }
                base.validate(name, false)
            }
            _ => Ok(()),
        }
    }

    /// `c_1, ..., c_count` at indices `1..=count` (index 0 is zero).
    pub fn values(&self, d: u64, count: u64, table: &TauTable) -> Result<Vec<Complex64>> {
        let len = count as usize + 1;
        Ok(match self {
            Coefficients::Constant(c) => {
                let mut v = vec![*c; len];
                v[0] = Complex64::new(0.0, 0.0);
                v
            }
            Coefficients::RandomUnimodular { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut v = Vec::with_capacity(len);
                v.push(Complex64::new(0.0, 0.0));
                for _ in 1..len {
                    v.push(e(rng.gen::<f64>()));
                }
                v
            }
            Coefficients::Explicit(values) => {
                let mut v = vec![Complex64::new(0.0, 0.0); len];
                for (k, slot) in v.iter_mut().enumerate().skip(1) {
                    if let Some(c) = values.get(k - 1) {
                        *slot = *c;
                    }
                }
                v
            }
            Coefficients::Structured(base) => {
                if count > table.limit() {
                    return Err(Error::TableUnderflow { limit: table.limit(), required: count });
                }
                let base = base.values(1, d * count, table)?;
                let mut v = vec![Complex64::new(0.0, 0.0); len];
                for (k, slot) in v.iter_mut().enumerate().skip(1) {
                    *slot = base[d as usize * k] * table.lambda(k as u64);
                }
                v
            }
        })
    }
}

/// Parameters of one trilinear sum: scale `N`, factors `XY = N`, frequency
/// range `H`, divisor `d`, `η`, and the coefficients `A_m`, `B_n`, `C_h`.
#[derive(Debug, Clone, Serialize)]
pub struct TypeSumConfig {
    pub n: f64,
    pub x: f64,
    pub y: f64,
    pub h: f64,
    pub d: u64,
    pub eta: f64,
    pub a: Coefficients,
    pub b: Coefficients,
    pub c: Coefficients,
}

impl TypeSumConfig {
    /// `X = N / Y`, all coefficients 1.
    pub fn new(n: f64, y: f64, h: f64, d: u64) -> Result<Self> {
        if !(n >= 1.0) || !n.is_finite() {
            return Err(Error::param("N", format!("{n} is not a real >= 1")));
        }
        if !(1.0..=n).contains(&y) {
            return Err(Error::param("Y", format!("{y} outside [1, N]")));
        }
        if !(h >= 1.0) || !h.is_finite() {
            return Err(Error::param("H", format!("{h} is below 1")));
        }
        if d == 0 || d as f64 > 2.0 * y {
            return Err(Error::param("d", format!("{d} outside [1, 2Y]")));
        }
        Ok(TypeSumConfig {
            n,
            x: n / y,
            y,
            h,
            d,
            eta: DEFAULT_ETA,
            a: Coefficients::ones(),
            b: Coefficients::ones(),
            c: Coefficients::ones(),
        })
    }

    pub fn with_coefficients(mut self, a: Coefficients, b: Coefficients, c: Coefficients) -> Self {
        self.a = a;
        self.b = b;
        self.c = c;
        self
    }

    pub fn with_eta(mut self, eta: f64) -> Self {
        self.eta = eta;
        self
    }

    pub fn with_d(mut self, d: u64) -> Result<Self> {
        if d == 0 || d as f64 > 2.0 * self.y {
            return Err(Error::param("d", format!("{d} outside [1, 2Y]")));
        }
        self.d = d;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if !(self.eta > 0.0 && self.eta < 1.0) {
            return Err(Error::param("eta", format!("{} outside (0, 1)", self.eta)));
        }
        self.a.validate("A", true)?;
        self.b.validate("B", true)?;
        self.c.validate("C", false)
    }
}

/// Integers `k >= 1` with `lo <= scale·k < 2·lo`.
fn dyadic_multiples(lo: f64, scale: u64) -> std::ops::Range<u64> {
    let s = scale as f64;
    let mut first = ((lo / s).floor() as u64).max(1);
    while ((first * scale) as f64) < lo {
        first += 1;
    }
    while first > 1 && (((first - 1) * scale) as f64) >= lo {
        first -= 1;
    }
    let mut end = first;
    while (((end) * scale) as f64) < 2.0 * lo {
        end += 1;
    }
    first..end
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TripleSum {
    pub re: f64,
    pub im: f64,
    /// Number of `(m, n, h)` triples summed.
    pub terms: u64,
    pub empty: bool,
}

impl TripleSum {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

enum Inner<'a> {
    Hecke(&'a TauTable),
    Coefficients(&'a [Complex64]),
}

fn triple_sum(
    config: &TypeSumConfig,
    g: &AdmissibleG,
    table: &TauTable,
    inner: Inner<'_>,
    a: &[Complex64],
) -> Result<TripleSum> {
    let d = config.d;
    let ms = dyadic_multiples(config.x, d);
    let ns = dyadic_multiples(config.y, d);
    let hs = dyadic_multiples(config.h, 1);
    let c = config.c.values(1, hs.end.saturating_sub(1), table)?;
    let d2 = d * d;
    let mut acc = ComplexKahanSum::new();
    let mut terms = 0u64;
    for m in ms.clone() {
        let am = a[m as usize];
        for n in ns.clone() {
            let k = d2 * m * n;
            let kf = k as f64;
            if kf < config.n || kf >= 2.0 * config.n {
                continue;
            }
            let weight = match inner {
                Inner::Hecke(t) => am * t.lambda(n),
                Inner::Coefficients(b) => am * b[n as usize],
            };
            let phase = g.f(kf)?;
            for h in hs.clone() {
                acc.add(weight * c[h as usize] * e(h as f64 * phase));
                terms += 1;
            }
        }
    }
    let v = acc.value();
    Ok(TripleSum { re: v.re, im: v.im, terms, empty: terms == 0 })
}

fn coefficient_vectors(config: &TypeSumConfig, table: &TauTable) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    config.validate()?;
    let ms = dyadic_multiples(config.x, config.d);
    let ns = dyadic_multiples(config.y, config.d);
    let a = config.a.values(config.d, ms.end.saturating_sub(1), table)?;
    let b = config.b.values(config.d, ns.end.saturating_sub(1), table)?;
    Ok((a, b))
}

/// `K_d = Σ_{m~X/d} Σ_{n~Y/d, mn~N/d^2} Σ_{h~H} A_m C_h λ(n) e(h f(d^2 mn))`.
pub fn eval_kd(config: &TypeSumConfig, g: &AdmissibleG, table: &TauTable) -> Result<TripleSum> {
    let (a, _) = coefficient_vectors(config, table)?;
    let ns = dyadic_multiples(config.y, config.d);
    if ns.end > 0 && ns.end - 1 > table.limit() {
        return Err(Error::TableUnderflow { limit: table.limit(), required: ns.end - 1 });
    }
    triple_sum(config, g, table, Inner::Hecke(table), &a)
}

/// `L_d = Σ_{m~X/d} Σ_{n~Y/d, mn~N/d^2} Σ_{h~H} A_m B_n C_h e(h f(d^2 mn))`.
///
/// The table is only read by structured coefficients.
pub fn eval_ld(config: &TypeSumConfig, g: &AdmissibleG, table: &TauTable) -> Result<TripleSum> {
    let (a, b) = coefficient_vectors(config, table)?;
    triple_sum(config, g, table, Inner::Coefficients(&b), &a)
}

/// Tolerance relative to the size of the terms for [`mobius_rewrite_check`].
pub const REWRITE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct MobiusRewrite {
    pub k_direct: (f64, f64),
    pub k_rewritten: (f64, f64),
    pub l_direct: (f64, f64),
    pub l_rewritten: (f64, f64),
    /// Sum of `|term|` over the direct sums, the scale for the tolerance.
    pub scale: f64,
    pub ok: bool,
}

/// `K = Σ_{d<=2Y} μ(d) K_d` and `L = Σ_{d<=2Y} μ(d) L_d` with the structured
/// coefficients `A_m = a_{dm} λ(m)`, `B_n = b_{dn} λ(n)`, where
/// `K = Σ_{M~X} Σ_{M'~Y, MM'~N} Σ_{h~H} a_M c_h λ(MM') e(h f(MM'))` and `L`
/// carries `a_M b_{M'}` in place of `a_M`.
pub fn mobius_rewrite_check(config: &TypeSumConfig, g: &AdmissibleG, tables: &HeckeTables) -> Result<MobiusRewrite> {
    let base = TypeSumConfig { d: 1, ..config.clone() };
    base.validate()?;
    if matches!(base.a, Coefficients::Structured(_)) || matches!(base.b, Coefficients::Structured(_)) {
        return Err(Error::param("A, B", "the rewrite takes plain base sequences"));
    }
    let table = &tables.tau;
    let ms = dyadic_multiples(base.x, 1);
    let ns = dyadic_multiples(base.y, 1);
    let hs = dyadic_multiples(base.h, 1);
    let top = 2.0 * base.n;
    if top.ceil() as u64 > table.limit() || ns.end > tables.arith.limit() + 1 {
        return Err(Error::TableUnderflow { limit: table.limit(), required: top.ceil() as u64 });
    }
    let a = base.a.values(1, ms.end - 1, table)?;
    let b = base.b.values(1, ns.end - 1, table)?;
    let c = base.c.values(1, hs.end - 1, table)?;
    let mut k_acc = ComplexKahanSum::new();
    let mut l_acc = ComplexKahanSum::new();
    let mut scale = 0.0;
    for m in ms.clone() {
        for n in ns.clone() {
            let k = m * n;
            if (k as f64) < base.n || (k as f64) >= top {
                continue;
            }
            let phase = g.f(k as f64)?;
            for h in hs.clone() {
                let t = a[m as usize] * c[h as usize] * table.lambda(k) * e(h as f64 * phase);
                k_acc.add(t);
                l_acc.add(t * b[n as usize]);
                scale += t.norm();
            }
        }
    }
    let mut k_rw = ComplexKahanSum::new();
    let mut l_rw = ComplexKahanSum::new();
    let d_max = (2.0 * base.y).floor() as u64;
    for d in 1..=d_max {
        let mu = tables.arith.moebius(d);
        if mu == 0 {
            continue;
        }
        let structured = TypeSumConfig {
            d,
            a: Coefficients::Structured(Box::new(base.a.clone())),
            b: Coefficients::Structured(Box::new(base.b.clone())),
            ..base.clone()
        };
        let kd = eval_kd(&structured, g, table)?.value();
        let ld = eval_ld(&structured, g, table)?.value();
        k_rw.add(kd * mu as f64);
        l_rw.add(ld * mu as f64);
    }
    let (kd, kr, ld, lr) = (k_acc.value(), k_rw.value(), l_acc.value(), l_rw.value());
    let tol = REWRITE_TOLERANCE * (scale + 1.0);
    Ok(MobiusRewrite {
        k_direct: (kd.re, kd.im),
        k_rewritten: (kr.re, kr.im),
        l_direct: (ld.re, ld.im),
        l_rewritten: (lr.re, lr.im),
        scale,
        ok: (kd - kr).norm() <= tol && (ld - lr).norm() <= tol,
    })
}
