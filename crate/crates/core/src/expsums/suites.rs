//! The shipped parameter grids for the bound-ratio suites.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    delta_sum_check, exp_sum, j_choice, perron_check, shifted_convolution, slemma_ratio, vdc_bound, ExpSumSpec,
    ShiftSign, SmoothWeightSpec,
};
use crate::error::{Error, Result};
use crate::gfunc::{make_power_g, xexp_sqrtlog, RealFn};
use crate::hecke::io::format_f64;
use crate::hecke::TauTable;

/// Initial multiplier `K` in `measured <= K × envelope`.
pub const DEFAULT_EMPIRICAL_CONSTANT: f64 = 10.0;
/// `η` used for the `J` choice in the delta suite.
pub const DELTA_SUITE_ETA: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Vdc,
    Slemma,
    Delta,
    Shifted,
    Perron,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Vdc, Suite::Slemma, Suite::Delta, Suite::Shifted, Suite::Perron];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Vdc => "vdc",
            Suite::Slemma => "slemma",
            Suite::Delta => "delta",
            Suite::Shifted => "shifted",
            Suite::Perron => "perron",
        }
    }

    /// Table limit the suite reads from.
    pub fn required_limit(self) -> u64 {
        match self {
            Suite::Slemma => 20_000,
            Suite::Shifted => 2_500,
            Suite::Vdc | Suite::Delta | Suite::Perron => 1,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            Error::param("suite", format!("unknown suite `{s}`; expected vdc|slemma|delta|shifted|perron"))
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub params: Vec<(&'static str, String)>,
    pub measured: f64,
    pub envelope: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub suite: Suite,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn max_ratio(&self) -> f64 {
        self.rows.iter().map(|r| r.ratio).fold(0.0, f64::max)
    }

    pub fn within(&self, constant: f64) -> bool {
        self.rows.iter().all(|r| r.ratio.is_finite() && r.ratio <= constant)
    }

    /// `params...,measured,envelope,ratio`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        if let Some(first) = self.rows.first() {
            let mut header: Vec<&str> = first.params.iter().map(|(k, _)| *k).collect();
            header.extend(["measured", "envelope", "ratio"]);
            w.write_record(&header)?;
        }
        for row in &self.rows {
            let mut rec: Vec<String> = row.params.iter().map(|(_, v)| v.clone()).collect();
            rec.extend([format_f64(row.measured), format_f64(row.envelope), format_f64(row.ratio)]);
            w.write_record(&rec)?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }
}

fn row(params: Vec<(&'static str, String)>, measured: f64, envelope: f64) -> BenchRow {
    BenchRow { params, measured, envelope, ratio: measured / envelope }
}

pub fn run_suite(suite: Suite, table: &TauTable) -> Result<BenchReport> {
    let rows = match suite {
        Suite::Vdc => vdc_suite()?,
        Suite::Slemma => slemma_suite(table)?,
        Suite::Delta => delta_suite()?,
        Suite::Shifted => shifted_suite(table)?,
        Suite::Perron => perron_suite()?,
    };
    Ok(BenchReport { suite, rows })
}

/// `(N, N1 - N)` windows of the van der Corput grid.
pub const VDC_WINDOWS: [(u64, u64); 5] = [(100, 100), (1000, 50), (1000, 1000), (5000, 2000), (10_000, 10_000)];
/// Denominators `M` of the phases `x^2/(2M)`.
pub const VDC_DENOMINATORS: [u64; 10] = [3, 10, 31, 100, 316, 1000, 3162, 10_000, 31_623, 100_000];

/// `|Σ e(n^2/(2M))|` against the second-derivative bound with `λ = 1/M`,
/// `α = 1`.
fn vdc_suite() -> Result<Vec<BenchRow>> {
    let grid: Vec<(u64, u64, u64)> =
        VDC_DENOMINATORS.iter().flat_map(|&m| VDC_WINDOWS.iter().map(move |&(n, len)| (m, n, len))).collect();
    grid.par_iter()
        .map(|&(m, n, len)| {
            let mf = m as f64;
            let zero: RealFn = Arc::new(|_| 0.0);
            let spec = ExpSumSpec::new(
                Arc::new(move |x| x * x / (2.0 * mf)),
                [Arc::new(move |x| x / mf), Arc::new(move |_| 1.0 / mf), zero],
                n,
                n + len,
                1.0,
            )?;
            let measured = exp_sum(&spec, None)?.norm();
            let envelope = vdc_bound(1.0 / mf, 1.0, n as f64, (n + len) as f64)?;
            Ok(row(vec![("M", m.to_string()), ("N", n.to_string()), ("N1", (n + len).to_string())], measured, envelope))
        })
        .collect()
}

/// `T` exponents relative to `N` for the phases `T (x/N)^{3/2}` on `(N, 2N]`.
pub const SLEMMA_T_EXPONENTS: [f64; 4] = [0.75, 1.0, 1.25, 1.5];
pub const SLEMMA_SCALES: [u64; 2] = [1000, 10_000];

fn slemma_suite(table: &TauTable) -> Result<Vec<BenchRow>> {
    let grid: Vec<(u64, f64)> =
        SLEMMA_SCALES.iter().flat_map(|&n| SLEMMA_T_EXPONENTS.iter().map(move |&a| (n, a))).collect();
    grid.par_iter()
        .map(|&(n, a)| {
            let t = (n as f64).powf(a);
            let spec = ExpSumSpec::monomial(t, 1.5, n, 2 * n)?;
            let r = slemma_ratio(&spec, table)?;
            if !r.cauchy_ok {
                return Err(Error::Validation { n, reason: "Cauchy step inequality failed".into() });
            }
            Ok(row(
                vec![("N", n.to_string()), ("T_exponent", a.to_string()), ("T", format_f64(t))],
                r.measured,
                r.envelope,
            ))
        })
        .collect()
}

pub const DELTA_SCALES: [u64; 3] = [1000, 10_000, 100_000];

fn delta_suite() -> Result<Vec<BenchRow>> {
    let gs = vec![make_power_g(1.02)?, make_power_g(1.05)?, xexp_sqrtlog()];
    let mut grid = Vec::new();
    for g in &gs {
        for &n in &DELTA_SCALES {
            let chosen = j_choice(g, n as f64, DELTA_SUITE_ETA);
            let mut js = vec![1, chosen, 10];
            js.dedup();
            for j in js {
                grid.push((g, n, j));
            }
        }
    }
    grid.par_iter()
        .map(|&(g, n, j)| {
            let r = delta_sum_check(g, j, n)?;
            Ok(row(
                vec![("g", g.label().to_string()), ("N", n.to_string()), ("J", j.to_string())],
                r.measured,
                r.envelope,
            ))
        })
        .collect()
}

pub const SHIFTED_SCALE: f64 = 1000.0;
pub const SHIFTED_MAX_H: i64 = 100;

fn shifted_suite(table: &TauTable) -> Result<Vec<BenchRow>> {
    let w = SmoothWeightSpec::new(SHIFTED_SCALE, SHIFTED_SCALE, 1.0)?;
    (1..=SHIFTED_MAX_H)
        .into_par_iter()
        .map(|h| {
            let r = shifted_convolution(1, 1, h, ShiftSign::Minus, &w, table)?;
            Ok(row(
                vec![
                    ("a", "1".into()),
                    ("b", "1".into()),
                    ("h", h.to_string()),
                    ("X", "1000".into()),
                    ("Y", "1000".into()),
                ],
                r.value.abs(),
                r.envelope,
            ))
        })
        .collect()
}

/// `(N, ν, M, κ)` windows of the Perron grid.
pub const PERRON_WINDOWS: [(f64, f64, f64, f64); 4] =
    [(20.0, 1.5, 20.0, 4.0), (50.0, 1.5, 50.0, 4.0), (100.0, 1.5, 100.0, 4.0), (100.0, 2.0, 60.0, 4.0)];

fn perron_suite() -> Result<Vec<BenchRow>> {
    let mut grid = Vec::new();
    for &w in &PERRON_WINDOWS {
        grid.push(("ones", w));
        grid.push(("alternating", w));
    }
    grid.par_iter()
        .map(|&(kind, (n, nu, m, kappa))| {
            let a = move |k: u64| match kind {
                "ones" => Complex64::new(1.0, 0.0),
                _ => Complex64::new(if k % 2 == 0 { 1.0 } else { -1.0 }, 0.0),
            };
            let r = perron_check(&a, m, n, nu, kappa)?;
            if !r.converged {
                return Err(Error::Quadrature { estimate: r.quadrature_error });
            }
            Ok(row(
                vec![
                    ("a", kind.to_string()),
                    ("N", n.to_string()),
                    ("nu", nu.to_string()),
                    ("M", m.to_string()),
                    ("kappa", kappa.to_string()),
                ],
                r.difference,
                (2.0 + m).ln(),
            ))
        })
        .collect()
}
