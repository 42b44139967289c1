use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use super::DYADIC_CONVENTION;
use crate::error::{Error, Result};
use crate::gfunc::{floor_g, floor_rows, AdmissibleG};
use crate::hecke::io::format_f64;
use crate::hecke::TauTable;
use crate::summation::KahanSum;

/// Default `C` of the envelope `N exp(-C sqrt(log N))`.
pub const DEFAULT_ENVELOPE_C: f64 = 0.1;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExperimentOptions {
    pub c: f64,
    /// Record wall-clock seconds; off gives byte-reproducible output.
    pub timing: bool,
}

impl Default for ExperimentOptions {
    fn default() -> Self {
        ExperimentOptions { c: DEFAULT_ENVELOPE_C, timing: true }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub g: String,
    #[serde(rename = "N")]
    pub n: u64,
    pub hits: u64,
    /// `A(N) = Σ λ([g(n)])` over `n <= N` with `[g(n)]` prime.
    #[serde(rename = "A")]
    pub a: f64,
    /// `Σ |λ([g(n)])|` over the same hits.
    pub majorant: f64,
    pub quotient: f64,
    /// `N exp(-C sqrt(log N))`.
    pub envelope: f64,
    pub seconds: f64,
}

/// One [`RunRecord`] per grid value, in grid order.
pub fn main_theorem_experiment(
    g: &AdmissibleG,
    grid: &[u64],
    table: &TauTable,
    options: ExperimentOptions,
) -> Result<Vec<RunRecord>> {
    if !(options.c > 0.0) || !options.c.is_finite() {
        return Err(Error::param("C", format!("{} is not positive", options.c)));
    }
    for &n in grid {
        if n == 0 {
            return Err(Error::param("N", "grid values must be at least 1"));
        }
        let top = floor_g(g, n)?;
        if top > table.limit() {
            return Err(Error::TableUnderflow { limit: table.limit(), required: top });
        }
    }
    grid.iter()
        .map(|&n| {
            let start = Instant::now();
            let mut a = KahanSum::new();
            let mut majorant = KahanSum::new();
            let mut hits = 0;
            for row in floor_rows(g, n)?.into_iter().filter(|r| r.is_prime) {
                let v = table.lambda(row.m);
                a.add(v);
                majorant.add(v.abs());
                hits += 1;
            }
            let (a, majorant) = (a.value(), majorant.value());
            let nf = n as f64;
            Ok(RunRecord {
                g: g.label().to_string(),
                n,
                hits,
                a,
                majorant,
                quotient: if majorant > 0.0 { a.abs() / majorant } else { 0.0 },
                envelope: nf * (-options.c * nf.ln().sqrt()).exp(),
                seconds: if options.timing { start.elapsed().as_secs_f64() } else { 0.0 },
            })
        })
        .collect()
}

/// `g,N,hits,A,majorant,quotient,envelope,seconds`.
pub fn write_run_csv<W: Write>(records: &[RunRecord], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["g", "N", "hits", "A", "majorant", "quotient", "envelope", "seconds"])?;
    for r in records {
        w.write_record([
            r.g.clone(),
            r.n.to_string(),
            r.hits.to_string(),
            format_f64(r.a),
            format_f64(r.majorant),
            format_f64(r.quotient),
            format_f64(r.envelope),
            format_f64(r.seconds),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

/// JSON export: the records together with the configuration that made them.
#[derive(Debug, Clone, Serialize)]
pub struct RunExport<'a> {
    pub g: &'a str,
    pub grid: &'a [u64],
    pub options: ExperimentOptions,
    pub table_limit: u64,
    pub convention: &'static str,
    pub records: &'a [RunRecord],
}

pub fn write_run_json<W: Write>(export: &RunExport<'_>, writer: W) -> Result<()> {
    serde_json::to_writer_pretty(writer, export)?;
    Ok(())
}

impl<'a> RunExport<'a> {
    pub fn new(
        g: &'a str,
        grid: &'a [u64],
        options: ExperimentOptions,
        table_limit: u64,
        records: &'a [RunRecord],
    ) -> Self {
        RunExport { g, grid, options, table_limit, convention: DYADIC_CONVENTION, records }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfunc::{identity_g, make_power_g};
    use crate::hecke::build_tau_table;

    #[test]
    fn identity_small() {
        let t = build_tau_table(20).unwrap();
        let r = main_theorem_experiment(
            &identity_g(),
            &[1, 10],
            &t,
            ExperimentOptions { timing: false, ..Default::default() },
        )
        .unwrap();
        assert_eq!(r[0].hits, 0);
        assert_eq!(r[0].a, 0.0);
        assert_eq!(r[1].hits, 4);
        let expected = t.lambda(2) + t.lambda(3) + t.lambda(5) + t.lambda(7);
        assert!((r[1].a - expected).abs() < 1e-15);
        assert!(r[1].a.abs() <= r[1].majorant);
    }

    #[test]
    fn underflow_rejected_before_work() {
        let t = build_tau_table(100).unwrap();
        let g = make_power_g(1.05).unwrap();
        assert!(matches!(
            main_theorem_experiment(&g, &[10, 1000], &t, ExperimentOptions::default()),
            Err(Error::TableUnderflow { .. })
        ));
    }

    #[test]
    fn csv_header() {
        let t = build_tau_table(20).unwrap();
        let opts = ExperimentOptions { timing: false, ..Default::default() };
        let r = main_theorem_experiment(&identity_g(), &[10], &t, opts).unwrap();
        let mut buf = Vec::new();
        write_run_csv(&r, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("g,N,hits,A,majorant,quotient,envelope,seconds\nidentity,10,4,"));
        let mut json = Vec::new();
        write_run_json(&RunExport::new("identity", &[10], opts, 20, &r), &mut json).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&json).unwrap();
        assert_eq!(v["records"][0]["hits"], 4);
    }
}
