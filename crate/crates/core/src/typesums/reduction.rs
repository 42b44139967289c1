use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfunc::{floor_g, AdmissibleG};
use crate::hecke::HeckeTables;
use crate::summation::KahanSum;
use crate::vaaler::sawtooth;

fn require(tables: &HeckeTables, required: u64) -> Result<()> {
    if required > tables.limit() {
        return Err(Error::TableUnderflow { limit: tables.limit(), required });
    }
    Ok(())
}

/// `[g(n)]` with `[g(0)] = 0`.
fn floor_at(g: &AdmissibleG, n: u64) -> Result<u64> {
    if n == 0 {
        Ok(0)
    } else {
        floor_g(g, n)
    }
}

/// `⌈f(m)⌉ = min { n : [g(n)] >= m }`, located from the float estimate and
/// settled by exact floor comparisons.
fn ceil_f(g: &AdmissibleG, m: u64) -> Result<u64> {
    let mut r = g.f(m as f64)?.ceil().max(1.0) as u64;
    while r > 1 && floor_at(g, r - 1)? >= m {
        r -= 1;
    }
    while floor_at(g, r)? < m {
        r += 1;
    }
    Ok(r)
}

#[derive(Debug, Clone, Serialize)]
pub struct RewriteReport {
    pub label: String,
    pub n: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub difference: f64,
    /// `4 log g(N) + 4`.
    pub slack: f64,
    pub ok: bool,
}

/// `Σ_{n<=N} Λ([g(n)]) λ([g(n)])` against
/// `Σ_{g(1)<=m<=g(N)} ([-f(m)] - [-f(m+1)]) Λ(m) λ(m)`.
pub fn rewrite_identity_check(g: &AdmissibleG, n: u64, tables: &HeckeTables) -> Result<RewriteReport> {
    if n == 0 {
        return Err(Error::param("N", "must be at least 1"));
    }
    let top = floor_g(g, n)?;
    require(tables, top + 1)?;
    let mut lhs = KahanSum::new();
    for k in 1..=n {
        let m = floor_g(g, k)?;
        lhs.add(tables.arith.von_mangoldt(m) * tables.tau.lambda(m));
    }
    let mut rhs = KahanSum::new();
    let mut lower = ceil_f(g, 1)?;
    for m in 1..=top {
        let upper = ceil_f(g, m + 1)?;
        // [-f(m)] - [-f(m+1)] = ⌈f(m+1)⌉ - ⌈f(m)⌉
        let count = (upper - lower) as f64;
        let weight = tables.arith.von_mangoldt(m);
        if weight != 0.0 {
            rhs.add(count * weight * tables.tau.lambda(m));
        }
        lower = upper;
    }
    let (lhs, rhs) = (lhs.value(), rhs.value());
    let slack = 4.0 * g.g(n as f64).ln() + 4.0;
    let difference = (lhs - rhs).abs();
    Ok(RewriteReport { label: g.label().to_string(), n, lhs, rhs, difference, slack, ok: difference <= slack })
}

/// Tolerance for the termwise identity and for `S = S1 + S2`.
pub const SPLIT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct SplitReport {
    pub label: String,
    pub n: u64,
    /// First and one-past-last summation index of `n ~ g(N)`.
    pub range: (u64, u64),
    pub terms: u64,
    /// Indices where the termwise floor/sawtooth identity failed.
    pub violations: Vec<u64>,
    pub max_termwise_error: f64,
    pub s: f64,
    pub s1: f64,
    pub s2: f64,
    pub ok: bool,
}

/// Termwise `[-f(n)] - [-f(n+1)] = (f(n+1) - f(n)) + (ψ(-f(n+1)) - ψ(-f(n)))`
/// over `n ~ g(N)`, then `S = S1 + S2`.
pub fn s1_s2_split_check(g: &AdmissibleG, n: u64, tables: &HeckeTables) -> Result<SplitReport> {
    if n == 0 {
        return Err(Error::param("N", "must be at least 1"));
    }
    let lo = g.g(n as f64);
    let first = lo.ceil() as u64;
    let mut end = (2.0 * lo).ceil() as u64;
    if (end as f64) < 2.0 * lo {
        end += 1;
    }
    require(tables, end)?;
    let mut s = KahanSum::new();
    let mut s1 = KahanSum::new();
    let mut s2 = KahanSum::new();
    let mut violations = Vec::new();
    let mut max_err = 0.0f64;
    let mut f_next = g.f(first as f64)?;
    for k in first..end {
        let (fa, fb) = (f_next, g.f((k + 1) as f64)?);
        f_next = fb;
        let floor_diff = (-fa).floor() - (-fb).floor();
        let smooth = fb - fa;
        let saw = sawtooth(-fb) - sawtooth(-fa);
        let err = (floor_diff - (smooth + saw)).abs();
        max_err = max_err.max(err / fb.max(1.0));
        if err > SPLIT_TOLERANCE * fb.max(1.0) {
            violations.push(k);
        }
        let w = tables.arith.von_mangoldt(k) * tables.tau.lambda(k);
        if w != 0.0 {
            s.add(floor_diff * w);
            s1.add(smooth * w);
            s2.add(saw * w);
        }
    }
    let (s, s1, s2) = (s.value(), s1.value(), s2.value());
    let ok = violations.is_empty() && (s - (s1 + s2)).abs() <= SPLIT_TOLERANCE * (s1.abs() + s2.abs() + 1.0);
    Ok(SplitReport {
        label: g.label().to_string(),
        n,
        range: (first, end),
        terms: end - first,
        violations,
        max_termwise_error: max_err,
        s,
        s1,
        s2,
        ok,
    })
}
