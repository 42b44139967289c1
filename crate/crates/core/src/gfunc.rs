//! Growth functions `g` with inverse `f = g^{-1}`, their admissibility
//! conditions, and the floor values `[g(n)]`.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::primes::is_prime;

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type ExtendedFn = Arc<dyn Fn(TwoFloat) -> TwoFloat + Send + Sync>;

/// Upper growth exponent: `g(x) <= x^{30/29 - ε}`.
pub const G_EXPONENT: f64 = 30.0 / 29.0;
/// Lower growth exponent of the inverse: `f(x) >= x^{29/30 + ε}`.
pub const F_EXPONENT: f64 = 29.0 / 30.0;
/// Exclusive upper end of the accepted power family `x^c`.
pub const POWER_C_MAX: f64 = 8.0 / 7.0;

const NEWTON_MAX_ITER: u32 = 200;
/// Distance to an integer below which `g(n)` is re-evaluated in double-double.
const NEAR_INTEGER: f64 = 1e-9;
/// Relative distance below which even the double-double value is ambiguous.
const AMBIGUOUS_RELATIVE: f64 = 1e-22;
const FLOOR_GUARD: f64 = 1e-9;
const TWO_POW_64: f64 = 18_446_744_073_709_551_616.0;

#[derive(Clone)]
enum Family {
    Power { c: f64 },
    Numeric { g: RealFn, dg: [RealFn; 3], extended: Option<ExtendedFn> },
}

/// A growth function `g : [1, ∞) -> [1, ∞)` bundled with its inverse and
/// derivative oracles of the inverse up to order 3.
#[derive(Clone)]
pub struct AdmissibleG {
    label: String,
    epsilon: f64,
    family: Family,
}

impl fmt::Debug for AdmissibleG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdmissibleG").field("label", &self.label).field("epsilon", &self.epsilon).finish()
    }
}

/// `g(x) = x^c` for `1 <= c < 8/7`.
///
/// `ε = min(30/29 - c, 1/c - 29/30)`, the largest value for which both growth
/// windows (on `g` and on `f = y^{1/c}`) hold. For `c >= 30/29` it is not
/// positive and the function lies outside the window; [`verify_admissibility`]
/// reports this.
pub fn make_power_g(c: f64) -> Result<AdmissibleG> {
    if !(1.0..POWER_C_MAX).contains(&c) {
        return Err(Error::param("c", format!("{c} outside [1, 8/7)")));
    }
    let label = if c == 1.0 { "identity".to_string() } else { format!("power:{c}") };
    let epsilon = (G_EXPONENT - c).min(1.0 / c - F_EXPONENT);
    Ok(AdmissibleG { label, epsilon, family: Family::Power { c } })
}

pub fn identity_g() -> AdmissibleG {
    make_power_g(1.0).expect("c = 1 is in range")
}

/// General increasing `g` from its values and first three derivatives.
///
/// `extended` evaluates `g` in double-double; it is only used to resolve
/// `[g(n)]` when `g(n)` lands within `1e-9` of an integer.
pub fn make_numeric_g(
    label: impl Into<String>,
    epsilon: f64,
    g: RealFn,
    derivatives: [RealFn; 3],
    extended: Option<ExtendedFn>,
) -> Result<AdmissibleG> {
    let mut previous = g(1.0);
    if !previous.is_finite() {
        return Err(Error::param("g", "g(1) is not finite"));
    }
    // geometric samples 1 .. 1e12
    for i in 1..=240 {
        let x = 10f64.powf(i as f64 / 20.0);
        let value = g(x);
        if !(value > previous) || !(derivatives[0](x) > 0.0) {
            return Err(Error::NotMonotone { x });
        }
        previous = value;
    }
    Ok(AdmissibleG { label: label.into(), epsilon, family: Family::Numeric { g, dg: derivatives, extended } })
}

/// `g(x) = x exp(√log x)`. Grows faster than every `x^{1+δ}` only for huge `x`,
/// so on desk-scale grids it fails the upper growth bound.
pub fn xexp_sqrtlog() -> AdmissibleG {
    fn parts(x: f64) -> (f64, f64) {
        let s = x.ln().max(0.0).sqrt();
        (s, s.exp())
    }
    let g: RealFn = Arc::new(|x| x * parts(x).1);
    let d1: RealFn = Arc::new(|x| {
        let (s, e) = parts(x);
        e * (1.0 + 0.5 / s)
    });
    // g'' = e P(s) / x,  P(s) = 1/(2s) + 1/(4s^2) - 1/(4s^3)
    let d2: RealFn = Arc::new(|x| {
        let (s, e) = parts(x);
        e * (0.5 / s + 0.25 / (s * s) - 0.25 / (s * s * s)) / x
    });
    // g''' = e / x^2 (P/(2s) + P'/(2s) - P)
    let d3: RealFn = Arc::new(|x| {
        let (s, e) = parts(x);
        let p = 0.5 / s + 0.25 / (s * s) - 0.25 / (s * s * s);
        let dp = -0.5 / (s * s) - 0.5 / (s * s * s) + 0.75 / (s * s * s * s);
        e / (x * x) * (p / (2.0 * s) + dp / (2.0 * s) - p)
    });
    let extended: ExtendedFn = Arc::new(|x| x * x.ln().sqrt().exp());
    make_numeric_g("xexp-sqrtlog", 1e-3, g, [d1, d2, d3], Some(extended)).expect("xexp-sqrtlog is increasing")
}

/// Named selector: `identity`, `power:<c>` or `xexp-sqrtlog`.
pub fn parse_g(selector: &str) -> Result<AdmissibleG> {
    let s = selector.trim();
    if s == "identity" {
        return Ok(identity_g());
    }
    if s == "xexp-sqrtlog" {
        return Ok(xexp_sqrtlog());
    }
    if let Some(rest) = s.strip_prefix("power:") {
        let c: f64 = rest.trim().parse().map_err(|_| Error::param("g", format!("`{rest}` is not a real exponent")))?;
        return make_power_g(c);
    }
    Err(Error::param("g", format!("unknown selector `{s}`; expected identity, power:<c> or xexp-sqrtlog")))
}

impl AdmissibleG {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Exponent `c` for the power family.
    pub fn power_exponent(&self) -> Option<f64> {
        match self.family {
            Family::Power { c } => Some(c),
            Family::Numeric { .. } => None,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.power_exponent() == Some(1.0)
    }

    pub fn g(&self, x: f64) -> f64 {
        match &self.family {
            Family::Power { c } => {
                if *c == 1.0 {
                    x
                } else {
                    x.powf(*c)
                }
            }
            Family::Numeric { g, .. } => g(x),
        }
    }

    /// `g(x)` in double-double, when the family provides it.
    pub fn g_extended(&self, x: f64) -> Option<TwoFloat> {
        match &self.family {
            Family::Power { c } => {
                let x = TwoFloat::from(x);
                Some(if *c == 1.0 { x } else { (TwoFloat::from(*c) * x.ln()).exp() })
            }
            Family::Numeric { extended, .. } => extended.as_ref().map(|e| e(TwoFloat::from(x))),
        }
    }

    /// The inverse `f(y)`, `y >= g(1)`.
    pub fn f(&self, y: f64) -> Result<f64> {
        match &self.family {
            Family::Power { c } => {
                if !(y >= 1.0) {
                    return Err(Error::param("y", format!("{y} outside the image of g")));
                }
                Ok(if *c == 1.0 { y } else { y.powf(1.0 / c) })
            }
            Family::Numeric { g, dg, .. } => invert(g.as_ref(), dg[0].as_ref(), y),
        }
    }

    /// `f^{(k)}(y)` for `k` in `0..=3`.
    pub fn f_derivative(&self, k: u8, y: f64) -> Result<f64> {
        if k == 0 {
            return self.f(y);
        }
        if k > 3 {
            return Err(Error::param("k", "derivative oracles cover orders 1..=3"));
        }
        match &self.family {
            Family::Power { c } => {
                if !(y >= 1.0) {
                    return Err(Error::param("y", format!("{y} outside the image of g")));
                }
                let gamma = 1.0 / c;
                let falling: f64 = (0..k).map(|i| gamma - i as f64).product();
                if falling == 0.0 {
                    return Ok(0.0);
                }
                Ok(falling * y.powf(gamma - k as f64))
            }
            Family::Numeric { dg, .. } => {
                let x = self.f(y)?;
                let g1 = dg[0](x);
                Ok(match k {
                    1 => 1.0 / g1,
                    2 => -dg[1](x) / g1.powi(3),
                    _ => {
                        let g2 = dg[1](x);
                        (3.0 * g2 * g2 - g1 * dg[2](x)) / g1.powi(5)
                    }
                })
            }
        }
    }
}

/// Safeguarded Newton for `g(x) = y` from `x0 = y`, bracketed by
/// `[y^{29/30}, y]` (falling back to `[1, y]` when `g` outgrows the bracket).
fn invert(g: &(dyn Fn(f64) -> f64 + Send + Sync), dg: &(dyn Fn(f64) -> f64 + Send + Sync), y: f64) -> Result<f64> {
    if !(y >= 1.0) || !y.is_finite() {
        return Err(Error::param("y", format!("{y} outside the image of g")));
    }
    let g1 = g(1.0);
    if y < g1 {
        return Err(Error::param("y", format!("{y} below g(1) = {g1}")));
    }
    if y == g1 {
        return Ok(1.0);
    }
    let mut hi = y;
    if g(hi) < y {
        return Err(Error::param("g", "g(x) < x on the inversion bracket"));
    }
    let mut lo = y.powf(F_EXPONENT);
    if g(lo) > y {
        lo = 1.0;
    }
    let mut x = y;
    for _ in 0..NEWTON_MAX_ITER {
        let r = g(x) - y;
        if r == 0.0 {
            return Ok(x);
        }
        if r > 0.0 {
            hi = hi.min(x);
        } else {
            lo = lo.max(x);
        }
        let slope = dg(x);
        let mut next = x - r / slope;
        if !(slope > 0.0) || !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 4.0 * f64::EPSILON * x || hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::NoConvergence { y, iterations: NEWTON_MAX_ITER })
}

/// `m = [g(n)]`, escalating to double-double near integers and guarded by
/// `f(m) <= n < f(m + 1)`.
pub fn floor_g(g: &AdmissibleG, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::param("n", "must be at least 1"));
    }
    // x <= g(x) <= x^{30/29-ε} pins g(1) = 1
    if n == 1 {
        return Ok(1);
    }
    if g.is_identity() {
        return Ok(n);
    }
    let x = n as f64;
    let value = g.g(x);
    if !value.is_finite() || value >= TWO_POW_64 {
        return Err(Error::PrimalityRange { n, value });
    }
    let nearest = value.round();
    let m = if (value - nearest).abs() < NEAR_INTEGER {
        let ext = g.g_extended(x).ok_or(Error::AmbiguousFloor { n, value })?;
        let k = ext.floor();
        let k1 = k + 1.0;
        let distance = (ext - k).hi().min((k1 - ext).hi());
        if distance < AMBIGUOUS_RELATIVE * value.max(1.0) {
            return Err(Error::AmbiguousFloor { n, value });
        }
        k.hi() as u64
    } else {
        value.floor() as u64
    };
    let slack = FLOOR_GUARD * x;
    if (m as f64) < 1.0 || g.f(m as f64)? > x + slack || x >= g.f((m + 1) as f64)? + slack {
        return Err(Error::FloorGuard { n, m });
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct FloorRow {
    pub n: u64,
    pub m: u64,
    pub is_prime: bool,
}

/// `(n, [g(n)], [g(n)] prime?)` for `1 <= n <= limit`, sorted by `n`.
pub fn floor_rows(g: &AdmissibleG, limit: u64) -> Result<Vec<FloorRow>> {
    if limit == 0 {
        return Err(Error::param("limit", "must be at least 1"));
    }
    (1..=limit).into_par_iter().map(|n| floor_g(g, n).map(|m| FloorRow { n, m, is_prime: is_prime(m) })).collect()
}

/// All `n <= limit` with `[g(n)]` prime.
pub fn enumerate_floor_prime_hits(g: &AdmissibleG, limit: u64) -> Result<Vec<FloorRow>> {
    Ok(floor_rows(g, limit)?.into_iter().filter(|r| r.is_prime).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Grid point where the condition failed first, or where the measured
    /// quantity was closest to failing.
    pub witness: Option<f64>,
    pub min_ratio: f64,
    pub max_ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub label: String,
    pub epsilon: f64,
    pub epsilon_positive: bool,
    pub checks: Vec<ConditionCheck>,
}

impl ConditionReport {
    pub fn check(&self, name: &str) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.check(name).is_some_and(|c| c.passed)
    }

    /// Every grid condition holds (the sign of `ε` is reported separately).
    pub fn conditions_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn all_pass(&self) -> bool {
        self.epsilon_positive && self.conditions_pass()
    }
}

const INEQUALITY_SLACK: f64 = 1e-12;

/// Running min/max of a ratio, with pass/fail bookkeeping.
struct Tracker {
    name: &'static str,
    passed: bool,
    witness: Option<f64>,
    min: f64,
    max: f64,
}

impl Tracker {
    fn new(name: &'static str) -> Self {
        Tracker { name, passed: true, witness: None, min: f64::INFINITY, max: f64::NEG_INFINITY }
    }

    fn observe(&mut self, x: f64, ratio: f64, ok: bool) {
        self.min = self.min.min(ratio);
        self.max = self.max.max(ratio);
        if !ok && self.passed {
            self.passed = false;
            self.witness = Some(x);
        }
    }

    fn finish(self) -> ConditionCheck {
        ConditionCheck {
            name: self.name,
            passed: self.passed,
            witness: self.witness,
            min_ratio: self.min,
            max_ratio: self.max,
        }
    }
}

/// Two-sided comparability `q ≍ 1` on the grid: finite, nonzero and of one sign.
struct Comparability {
    tracker: Tracker,
    sign: f64,
    closest: f64,
}

impl Comparability {
    fn new(name: &'static str) -> Self {
        Comparability { tracker: Tracker::new(name), sign: 0.0, closest: f64::INFINITY }
    }

    fn observe(&mut self, x: f64, q: f64) {
        let ok = q.is_finite() && q.abs() > INEQUALITY_SLACK && (self.sign == 0.0 || q.signum() == self.sign);
        if self.sign == 0.0 && q.is_finite() && q != 0.0 {
            self.sign = q.signum();
        }
        if q.abs() < self.closest && self.tracker.passed {
            self.closest = q.abs();
            self.tracker.witness = Some(x);
        }
        let was = self.tracker.passed;
        self.tracker.observe(x, q, ok);
        if was && !ok {
            self.tracker.witness = Some(x);
        }
    }

    fn finish(self) -> ConditionCheck {
        self.tracker.finish()
    }
}

/// Checks the growth window for `g` and `f`, the comparability
/// `f^{(k)}(x) x^k / f(x) ≍ 1` for `k = 1, 2, 3`, and
/// `(2 f''(x) + x f'''(x)) x^2 / f(x) ≍ 1`, on the given grid.
///
/// Windows are measured and reported; pass means the measured ratios stay
/// finite, bounded away from zero and of constant sign.
pub fn verify_admissibility(g: &AdmissibleG, grid: &[f64]) -> Result<ConditionReport> {
    let eps = g.epsilon();
    let mut sorted: Vec<f64> = grid.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    if sorted.first().is_some_and(|&x| !(x >= 1.0)) {
        return Err(Error::param("grid", "points must lie in [1, ∞)"));
    }

    let mut increasing = Tracker::new("g_increasing");
    let mut g_lower = Tracker::new("g_at_least_x");
    let mut g_upper = Tracker::new("g_below_growth_power");
    let mut f_lower = Tracker::new("f_above_growth_power");
    let mut f_upper = Tracker::new("f_at_most_x");
    let mut derivs = [
        Comparability::new("f_derivative_1"),
        Comparability::new("f_derivative_2"),
        Comparability::new("f_derivative_3"),
    ];
    let mut combination = Comparability::new("f_second_third_combination");

    let mut previous: Option<(f64, f64)> = None;
    for &x in &sorted {
        let gx = g.g(x);
        if let Some((px, pg)) = previous {
            if x > px {
                increasing.observe(x, gx / pg, gx > pg);
            }
        }
        previous = Some((x, gx));

        g_lower.observe(x, gx / x, gx >= x * (1.0 - INEQUALITY_SLACK));
        let cap = x.powf(G_EXPONENT - eps);
        g_upper.observe(x, gx / cap, gx <= cap * (1.0 + INEQUALITY_SLACK));

        let fx = g.f(x)?;
        let floor = x.powf(F_EXPONENT + eps);
        f_lower.observe(x, fx / floor, fx >= floor * (1.0 - INEQUALITY_SLACK));
        f_upper.observe(x, fx / x, fx <= x * (1.0 + INEQUALITY_SLACK));

        let d: Vec<f64> = (1..=3).map(|k| g.f_derivative(k, x)).collect::<Result<_>>()?;
        for (k, tracker) in derivs.iter_mut().enumerate() {
            tracker.observe(x, d[k] * x.powi(k as i32 + 1) / fx);
        }
        combination.observe(x, (2.0 * d[1] + x * d[2]) * x * x / fx);
    }

    let mut checks = vec![increasing.finish(), g_lower.finish(), g_upper.finish(), f_lower.finish(), f_upper.finish()];
    checks.extend(derivs.into_iter().map(Comparability::finish));
    checks.push(combination.finish());
    Ok(ConditionReport { label: g.label().to_string(), epsilon: eps, epsilon_positive: eps > 0.0, checks })
}

/// Geometric grid of `count` points from `lo` to `hi`.
pub fn geometric_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count < 2 {
        return vec![lo];
    }
    let ratio = (hi / lo).ln() / (count - 1) as f64;
    (0..count).map(|i| lo * (ratio * i as f64).exp()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_family_examples() {
        let id = make_power_g(1.0).unwrap();
        assert_eq!(id.g(3.5), 3.5);
        assert_eq!(id.f(3.5).unwrap(), 3.5);
        assert_eq!(id.f_derivative(1, 9.0).unwrap(), 1.0);
        assert_eq!(id.label(), "identity");

        let g = make_power_g(1.05).unwrap();
        // high-precision reference for 10^1.05 (c as the binary64 value)
        assert!((g.g(10.0) - 11.220_184_543_019_636).abs() < 1e-12);
        let g102 = make_power_g(1.02).unwrap();
        assert!((g102.f(2f64.powf(1.02)).unwrap() - 2.0).abs() < 1e-12);

        assert!(make_power_g(0.99).is_err());
        assert!(make_power_g(1.2).is_err());
        assert!((g.epsilon() - (30.0 / 29.0 - 1.05)).abs() < 1e-15);
        assert!((g102.epsilon() - (1.0 / 1.02 - 29.0 / 30.0)).abs() < 1e-15);
    }

    #[test]
    fn numeric_power_matches_closed_form() {
        let c = 1.05;
        let numeric = make_numeric_g(
            "numeric-power",
            G_EXPONENT - c,
            Arc::new(move |x: f64| x.powf(c)),
            [
                Arc::new(move |x: f64| c * x.powf(c - 1.0)),
                Arc::new(move |x: f64| c * (c - 1.0) * x.powf(c - 2.0)),
                Arc::new(move |x: f64| c * (c - 1.0) * (c - 2.0) * x.powf(c - 3.0)),
            ],
            None,
        )
        .unwrap();
        let closed = make_power_g(c).unwrap();
        for y in geometric_grid(1.5, 1e6, 60) {
            let a = numeric.f(y).unwrap();
            let b = closed.f(y).unwrap();
            assert!((a - b).abs() <= 1e-10 * b, "y = {y}");
            for k in 1..=3 {
                let a = numeric.f_derivative(k, y).unwrap();
                let b = closed.f_derivative(k, y).unwrap();
                assert!((a - b).abs() <= 1e-9 * b.abs(), "k = {k}, y = {y}");
            }
        }
    }

    #[test]
    fn numeric_identity() {
        let g = make_numeric_g(
            "numeric-identity",
            0.01,
            Arc::new(|x| x),
            [Arc::new(|_| 1.0), Arc::new(|_| 0.0), Arc::new(|_| 0.0)],
            None,
        )
        .unwrap();
        for y in [1.0, 2.0, 17.5, 1e6] {
            assert!((g.f(y).unwrap() - y).abs() <= 1e-12 * y);
        }
    }

    #[test]
    fn non_monotone_rejected() {
        let r = make_numeric_g(
            "bad",
            0.01,
            Arc::new(|x: f64| x + 2.0 * x.sin()),
            [Arc::new(|x: f64| 1.0 + 2.0 * x.cos()), Arc::new(|_| 0.0), Arc::new(|_| 0.0)],
            None,
        );
        assert!(matches!(r, Err(Error::NotMonotone { .. })));
    }

    #[test]
    fn xexp_sqrtlog_round_trip_and_derivatives() {
        let g = xexp_sqrtlog();
        for y in geometric_grid(10.0, 1e6, 80) {
            let x = g.f(y).unwrap();
            assert!((g.g(x) - y).abs() <= 1e-10 * y, "y = {y}");
        }
        // g-derivative oracles against central differences
        if let Family::Numeric { g: gf, dg, .. } = &g.family {
            for x in [3.0, 50.0, 2e3, 7e5] {
                let h = 1e-4 * x;
                let fd1 = (gf(x + h) - gf(x - h)) / (2.0 * h);
                let fd2 = (dg[0](x + h) - dg[0](x - h)) / (2.0 * h);
                let fd3 = (dg[1](x + h) - dg[1](x - h)) / (2.0 * h);
                assert!((fd1 - dg[0](x)).abs() <= 1e-6 * dg[0](x).abs());
                assert!((fd2 - dg[1](x)).abs() <= 1e-6 * dg[1](x).abs());
                assert!((fd3 - dg[2](x)).abs() <= 1e-6 * dg[2](x).abs());
            }
        }
    }

    #[test]
    fn floor_examples() {
        let id = identity_g();
        assert_eq!(floor_g(&id, 7).unwrap(), 7);
        let g = make_power_g(1.05).unwrap();
        assert_eq!(floor_g(&g, 10).unwrap(), 11);
        assert_eq!(floor_g(&g, 2).unwrap(), 2);
        assert_eq!(floor_g(&g, 1).unwrap(), 1);
        assert!(floor_g(&g, 0).is_err());
    }

    #[test]
    fn floor_escalates_near_integers() {
        // sqrt(2)^2 lands on 2 +- 1 ulp in binary64; exact integer values are ambiguous
        let g = make_numeric_g(
            "square-ish",
            0.01,
            Arc::new(|x: f64| if x <= 1.0 { x } else { x * x }),
            [Arc::new(|x: f64| 2.0 * x), Arc::new(|_| 2.0), Arc::new(|_| 0.0)],
            Some(Arc::new(|x: TwoFloat| x * x)),
        )
        .unwrap();
        assert!(matches!(floor_g(&g, 3), Err(Error::AmbiguousFloor { n: 3, .. })));
        let no_ext = make_numeric_g(
            "square-no-ext",
            0.01,
            Arc::new(|x: f64| x * x),
            [Arc::new(|x: f64| 2.0 * x), Arc::new(|_| 2.0), Arc::new(|_| 0.0)],
            None,
        )
        .unwrap();
        assert!(matches!(floor_g(&no_ext, 3), Err(Error::AmbiguousFloor { .. })));
    }

    #[test]
    fn floor_range_guard() {
        let g = make_power_g(8.0 / 7.0 - 1e-9).unwrap();
        // n^{1.1428} >= 2^64 for n around 1e17
        assert!(matches!(floor_g(&g, 100_000_000_000_000_000), Err(Error::PrimalityRange { .. })));
    }

    #[test]
    fn hits_examples() {
        let id = identity_g();
        let hits: Vec<u64> = enumerate_floor_prime_hits(&id, 10).unwrap().iter().map(|h| h.n).collect();
        assert_eq!(hits, vec![2, 3, 5, 7]);
        let g = make_power_g(1.05).unwrap();
        let hits = enumerate_floor_prime_hits(&g, 10).unwrap();
        // floors of n^1.05 for n = 1..10: 1 2 3 4 5 6 7 8 10 11
        let pairs: Vec<(u64, u64)> = hits.iter().map(|h| (h.n, h.m)).collect();
        assert_eq!(pairs, vec![(2, 2), (3, 3), (5, 5), (7, 7), (10, 11)]);
        assert!(enumerate_floor_prime_hits(&g, 1).unwrap().is_empty());
    }

    #[test]
    fn admissibility_reports() {
        let grid = geometric_grid(10.0, 1e6, 50);
        let g = make_power_g(1.05).unwrap();
        let r = verify_admissibility(&g, &grid).unwrap();
        assert!(r.conditions_pass(), "{r:#?}");
        assert!(!r.epsilon_positive);
        let k1 = r.check("f_derivative_1").unwrap();
        assert!((k1.min_ratio - 1.0 / 1.05).abs() < 1e-12 && (k1.max_ratio - 1.0 / 1.05).abs() < 1e-12);

        let g102 = make_power_g(1.02).unwrap();
        assert!(verify_admissibility(&g102, &grid).unwrap().all_pass());

        let id = identity_g();
        let r = verify_admissibility(&id, &grid).unwrap();
        assert!(!r.passed("f_second_third_combination"));
        let comb = r.check("f_second_third_combination").unwrap();
        assert_eq!(comb.max_ratio, 0.0);
        assert!(r.passed("g_at_least_x") && r.passed("f_at_most_x"));

        // x^1.2 through the numeric path: the growth cap fails at large x
        let c = 1.2;
        let steep = make_numeric_g(
            "x^1.2",
            1e-3,
            Arc::new(move |x: f64| x.powf(c)),
            [
                Arc::new(move |x: f64| c * x.powf(c - 1.0)),
                Arc::new(move |x: f64| c * (c - 1.0) * x.powf(c - 2.0)),
                Arc::new(move |x: f64| c * (c - 1.0) * (c - 2.0) * x.powf(c - 3.0)),
            ],
            None,
        )
        .unwrap();
        let r = verify_admissibility(&steep, &grid).unwrap();
        assert!(!r.passed("g_below_growth_power"));
        assert_eq!(r.check("g_below_growth_power").unwrap().witness, Some(grid[0]));

        let r = verify_admissibility(&xexp_sqrtlog(), &grid).unwrap();
        assert!(!r.passed("g_below_growth_power"));
    }

    #[test]
    fn selectors() {
        assert_eq!(parse_g("power:1.05").unwrap().power_exponent(), Some(1.05));
        assert!(parse_g("identity").unwrap().is_identity());
        assert_eq!(parse_g("xexp-sqrtlog").unwrap().label(), "xexp-sqrtlog");
        assert!(parse_g("power:1.2").is_err());
        assert!(parse_g("power:abc").is_err());
        assert!(parse_g("cubic").is_err());
    }
}
