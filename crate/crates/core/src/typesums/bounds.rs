use rayon::prelude::*;
use serde::Serialize;

use super::{eval_kd, eval_ld, Coefficients, TypeSumConfig, DYADIC_CONVENTION};
use crate::error::{Error, Result};
use crate::gfunc::AdmissibleG;
use crate::hecke::TauTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SumKind {
    K,
    L,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundPoint {
    pub kind: SumKind,
    pub config: TypeSumConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PointStatus {
    Measured,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub kind: SumKind,
    pub n: f64,
    pub x: f64,
    pub y: f64,
    pub h: f64,
    pub d: u64,
    pub f_n: f64,
    /// Named hypothesis checks, in evaluation order.
    pub hypotheses: Vec<(&'static str, bool)>,
    pub status: PointStatus,
    /// The Y-window under which a `K_d` point was measured.
    pub window: Option<&'static str>,
    pub terms: u64,
    pub measured: f64,
    /// `N^{1-3η} / d`.
    pub target: f64,
    pub ratio: f64,
    /// Shift length `H^{-1/3} N^{2/3} f(N)^{-1/3} Y^{-1/3}` of the first
    /// differencing step for `L_d`.
    pub q_choice: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub label: String,
    pub convention: &'static str,
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn measured(&self) -> impl Iterator<Item = &BoundRow> {
        self.rows.iter().filter(|r| r.status == PointStatus::Measured)
    }

    pub fn max_ratio(&self) -> f64 {
        self.measured().map(|r| r.ratio).fold(0.0, f64::max)
    }
}

fn hypotheses(kind: SumKind, cfg: &TypeSumConfig, f_n: f64) -> (Vec<(&'static str, bool)>, Option<&'static str>) {
    let (n, y, eta) = (cfg.n, cfg.y, cfg.eta);
    let p = |e: f64| n.powf(e);
    let h_ok = cfg.h >= 1.0 && cfg.h <= p(1.0 + eta) / f_n;
    let d_ok = cfg.d >= 1 && cfg.d as f64 <= 2.0 * y;
    let mut out = vec![("H <= N^(1+eta)/f(N)", h_ok), ("d <= 2Y", d_ok)];
    let window = match kind {
        SumKind::L => {
            let f_ok = f_n >= p(8.0 / 9.0 + 30.0 * eta);
            let y_ok = p(2.0 + 100.0 * eta) / (f_n * f_n) <= y && y <= f_n.powi(6) / p(5.0 + 100.0 * eta);
            out.push(("f(N) >= N^(8/9+30eta)", f_ok));
            out.push(("Y in [N^(2+100eta)/f^2, f^6/N^(5+100eta)]", y_ok));
            (f_ok && y_ok).then_some("L")
        }
        SumKind::K => {
            let small_f = f_n >= p(8.0 / 9.0 + 30.0 * eta);
            let small_y = p(6.0 + 100.0 * eta) / f_n.powi(6) <= y && y <= f_n * f_n / p(1.0 + 100.0 * eta);
            let large_f = f_n >= p(0.75 + 10.0 * eta);
            let large_y = y >= p(23.0 / 6.0 + 100.0 * eta) / f_n.powi(3);
            out.push(("f(N) >= N^(8/9+30eta)", small_f));
            out.push(("Y in [N^(6+100eta)/f^6, f^2/N^(1+100eta)]", small_y));
            out.push(("f(N) >= N^(3/4+10eta)", large_f));
            out.push(("Y >= N^(23/6+100eta)/f^3", large_y));
            if small_f && small_y {
                Some("K small Y")
            } else if large_f && large_y {
                Some("K large Y")
            } else {
                None
            }
        }
    };
    let gate = h_ok && d_ok && window.is_some();
    (out, if gate { window } else { None })
}

/// `|K_d|` or `|L_d|` over `N^{1-3η}/d` at each grid point whose lemma
/// hypotheses hold; the rest are marked skipped.
pub fn type_sum_bound_report(points: &[BoundPoint], g: &AdmissibleG, table: &TauTable) -> Result<BoundReport> {
    let rows = points
        .par_iter()
        .map(|p| {
            let cfg = &p.config;
            let f_n = g.f(cfg.n)?;
            let (checks, window) = hypotheses(p.kind, cfg, f_n);
            let target = cfg.n.powf(1.0 - 3.0 * cfg.eta) / cfg.d as f64;
            let q_choice =
                cfg.h.powf(-1.0 / 3.0) * cfg.n.powf(2.0 / 3.0) * f_n.powf(-1.0 / 3.0) * cfg.y.powf(-1.0 / 3.0);
            let mut row = BoundRow {
                kind: p.kind,
                n: cfg.n,
                x: cfg.x,
                y: cfg.y,
                h: cfg.h,
                d: cfg.d,
                f_n,
                hypotheses: checks,
                status: PointStatus::Skipped,
                window,
                terms: 0,
                measured: f64::NAN,
                target,
                ratio: f64::NAN,
                q_choice,
            };
            if window.is_some() {
                let sum = match p.kind {
                    SumKind::K => eval_kd(cfg, g, table)?,
                    SumKind::L => eval_ld(cfg, g, table)?,
                };
                row.status = PointStatus::Measured;
                row.terms = sum.terms;
                row.measured = sum.value().norm();
                row.ratio = row.measured / target;
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundReport { label: g.label().to_string(), convention: DYADIC_CONVENTION, rows })
}

/// `N` of the shipped grid.
pub const SHIPPED_BOUND_N: f64 = 10_000.0;
/// `Y` values of the shipped grid.
pub const SHIPPED_BOUND_Y: [f64; 7] = [2.0, 4.0, 16.0, 64.0, 256.0, 1024.0, 4096.0];
/// `Y` of the `d = 1..=8` sweep.
pub const SHIPPED_SWEEP_Y: f64 = 64.0;

/// `K` and `L` over the `Y` values at `d = 1`, then a `d = 2..=8` sweep at
/// `Y = 64`; `H = 1` and seeded unimodular coefficients `(1, 2, 3)`.
pub fn shipped_bound_grid() -> Result<Vec<BoundPoint>> {
    bound_grid(SHIPPED_BOUND_N, 1.0, 1)
}

/// The shipped layout at other `N`, `H` and seeds: `Y` values above `N`
/// are dropped, as is the sweep when `64 > N`. Coefficients use seeds
/// `seed`, `seed + 1`, `seed + 2`.
pub fn bound_grid(n: f64, h: f64, seed: u64) -> Result<Vec<BoundPoint>> {
    let coefficients = || {
        (
            Coefficients::RandomUnimodular { seed },
            Coefficients::RandomUnimodular { seed: seed.wrapping_add(1) },
            Coefficients::RandomUnimodular { seed: seed.wrapping_add(2) },
        )
    };
    let mut points = Vec::new();
    for kind in [SumKind::K, SumKind::L] {
        for &y in SHIPPED_BOUND_Y.iter().filter(|&&y| y <= n) {
            let (a, b, c) = coefficients();
            let config = TypeSumConfig::new(n, y, h, 1)?.with_coefficients(a, b, c);
            points.push(BoundPoint { kind, config });
        }
        if SHIPPED_SWEEP_Y <= n {
            for d in 2..=8 {
                let (a, b, c) = coefficients();
                let config = TypeSumConfig::new(n, SHIPPED_SWEEP_Y, h, d)?.with_coefficients(a, b, c);
                points.push(BoundPoint { kind, config });
            }
        }
    }
    Ok(points)
}

/// Relative slack for `v^3 >= 64N`, which holds with equality by
/// construction.
pub const UVZ_EQUALITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct UVZParams {
    pub u: f64,
    pub v: f64,
    pub z: f64,
}

/// Names of the violated conditions among `3 <= u`, `u < v`, `v < z`,
/// `z < 2N`, `z - 1/2` integral, `z >= 4u^2`, `N >= 32 z^2 u`, `v^3 >= 64N`.
pub fn check_uvz(n: f64, p: &UVZParams) -> Vec<&'static str> {
    let UVZParams { u, v, z } = *p;
    let half = z - 0.5;
    [
        ("3 <= u", 3.0 <= u),
        ("u < v", u < v),
        ("v < z", v < z),
        ("z < 2N", z < 2.0 * n),
        ("z - 1/2 integral", half >= 1.0 && half.fract() == 0.0),
        ("z >= 4u^2", z >= 4.0 * u * u),
        ("N >= 32 z^2 u", n >= 32.0 * z * z * u),
        ("v^3 >= 64N", v.powi(3) >= 64.0 * n * (1.0 - UVZ_EQUALITY_TOLERANCE)),
    ]
    .into_iter()
    .filter(|(_, ok)| !ok)
    .map(|(name, _)| name)
    .collect()
}

/// `u = N^{2+100η} f(N)^{-2}`, `v = 4N^{1/3}`, `z = [f(N) N^{-1/2-100η}] + 1/2`,
/// rejected with the first failing condition (all failures in the detail).
pub fn choose_uvz(n: f64, g: &AdmissibleG, eta: f64) -> Result<UVZParams> {
    if !(n >= 1.0) || !n.is_finite() {
        return Err(Error::param("N", format!("{n} is not a real >= 1")));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::param("eta", format!("{eta} outside (0, 1)")));
    }
    let f_n = g.f(n)?;
    let p = UVZParams {
        u: ((2.0 + 100.0 * eta) * n.ln() - 2.0 * f_n.ln()).exp(),
        v: 4.0 * n.cbrt(),
        z: (f_n * n.powf(-0.5 - 100.0 * eta)).floor() + 0.5,
    };
    let mut failed = Vec::new();
    if f_n < n.powf(29.0 / 30.0 + 100.0 * eta) {
        failed.push("f(N) >= N^(29/30+100eta)");
    }
    failed.extend(check_uvz(n, &p));
    match failed.first() {
        None => Ok(p),
        Some(first) => Err(Error::Constraint {
            constraint: first,
            detail: format!("u={}, v={}, z={}; violated: {}", p.u, p.v, p.z, failed.join(", ")),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfunc::{identity_g, make_power_g};
    use crate::hecke::build_tau_table;

    #[test]
    fn uvz_small_n_fails_size_condition() {
        match choose_uvz(100.0, &identity_g(), 1e-3) {
            Err(Error::Constraint { detail, .. }) => assert!(detail.contains("N >= 32 z^2 u"), "{detail}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn uvz_z_is_half_integer() {
        let g = identity_g();
        for n in [1e4, 1e6, 1e8, 1e12] {
            let err = choose_uvz(n, &g, 1e-4);
            let z = match err {
                Ok(p) => p.z,
                Err(Error::Constraint { detail, .. }) => {
                    let s = detail.split("z=").nth(1).unwrap().split(';').next().unwrap();
                    s.parse::<f64>().unwrap()
                }
                Err(e) => panic!("{e}"),
            };
            assert_eq!((z - 0.5).fract(), 0.0);
        }
    }

    #[test]
    fn check_uvz_accepts_valid_triple() {
        // u=3, v=4N^{1/3}, z>=36 and N>=32 z^2 u
        let n: f64 = 1e10;
        let p = UVZParams { u: 3.0, v: 4.0 * n.cbrt(), z: 9000.5 };
        assert!(check_uvz(n, &p).is_empty(), "{:?}", check_uvz(n, &p));
    }

    #[test]
    fn gates_skip_small_y() {
        let g = make_power_g(1.02).unwrap();
        let table = build_tau_table(5000).unwrap();
        let cfg = TypeSumConfig::new(10_000.0, 2.0, 1.0, 1).unwrap();
        let r = type_sum_bound_report(&[BoundPoint { kind: SumKind::L, config: cfg.clone() }], &g, &table).unwrap();
        assert_eq!(r.rows[0].status, PointStatus::Skipped);
        let cfg = TypeSumConfig::new(10_000.0, 64.0, 1.0, 1).unwrap();
        let r = type_sum_bound_report(&[BoundPoint { kind: SumKind::L, config: cfg }], &g, &table).unwrap();
        assert_eq!(r.rows[0].status, PointStatus::Measured);
        assert!(r.rows[0].ratio.is_finite());
    }
}
