//! Command-line orchestration: config parsing, the table cache and dispatch.

mod cache;
mod config;

pub use cache::{
    cache_tables, default_cache_dir, load_or_build, load_tables, read_manifest, store_tables, CacheManifest,
    CacheOutcome, ARITH_FILE, CACHE_ENV, MANIFEST_FILE, TABLE_KIND, TAU_FILE,
};
pub use config::{parse_config, parse_config_text, usage, Cli, Command, ExperimentConfig, ParseFailure};

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expsums::suites::{run_suite, Suite};
use crate::gfunc::{enumerate_floor_prime_hits, floor_g, parse_g, AdmissibleG};
use crate::hecke::io::{format_f64, write_arith_csv, write_tau_csv};
use crate::hecke::{deligne_check_with, hecke_relation_check, HeckeTables, TauBuildOptions};
use crate::typesums::{
    bound_grid, main_theorem_experiment, rewrite_identity_check, s1_s2_split_check, type_sum_bound_report,
    write_run_csv, write_run_json, BoundPoint, BoundReport, ExperimentOptions, PointStatus, RewriteReport, RunExport,
    SplitReport, SumKind, DYADIC_CONVENTION,
};
use crate::vaaler::{build_vaaler, majorant_check, sawtooth, unit_grid, MajorantReport};

/// Largest `mn` for which `tau-table` checks every Hecke pair.
pub const HECKE_PAIR_CAP: u64 = 10_000;

/// Exit status of a process.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone)]
pub struct RunOutcome {
    /// Every asserted check held.
    pub passed: bool,
    /// Human-readable summary, one entry per line.
    pub lines: Vec<String>,
    pub artifacts: Vec<PathBuf>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_CHECK_FAILURE
        }
    }
}

/// Exit status for an error escaping [`run`].
pub fn error_exit_code(error: &Error) -> i32 {
    match error {
        Error::Config(_) | Error::InvalidParameter { .. } => EXIT_USAGE,
        _ => EXIT_CHECK_FAILURE,
    }
}

/// Output files written so far; removed again unless the run completes.
struct Outputs {
    written: Vec<PathBuf>,
}

impl Outputs {
    fn write(&mut self, path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
        self.written.push(path.to_path_buf());
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(file);
        body(&mut w)?;
        w.flush().map_err(|e| Error::io(path, e))
    }

    fn json<T: Serialize>(&mut self, path: &Option<PathBuf>, value: &T) -> Result<()> {
        match path {
            Some(p) => self.write(p, |w| {
                serde_json::to_writer_pretty(&mut *w, value)?;
                writeln!(w).map_err(|e| Error::io(p, e))
            }),
            None => Ok(()),
        }
    }

    /// Two-column `x y` text.
    fn plot(&mut self, path: &Option<PathBuf>, header: &str, points: &[(f64, f64)]) -> Result<()> {
        match path {
            Some(p) => self.write(p, |w| {
                let io = |e| Error::io(p, e);
                writeln!(w, "# {header}").map_err(io)?;
                for (x, y) in points {
                    writeln!(w, "{} {}", format_f64(*x), format_f64(*y)).map_err(io)?;
                }
                Ok(())
            }),
            None => Ok(()),
        }
    }

    fn discard(&self) {
        for p in &self.written {
            let _ = fs::remove_file(p);
        }
    }
}

/// Runs one configured command. On error every output file written by this
/// run is removed.
pub fn run(config: &ExperimentConfig) -> Result<RunOutcome> {
    let mut outputs = Outputs { written: Vec::new() };
    let result = dispatch(config, &mut outputs);
    match result {
        Ok((passed, lines)) => Ok(RunOutcome { passed, lines, artifacts: outputs.written }),
        Err(e) => {
            outputs.discard();
            Err(e)
        }
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn selected_g(config: &ExperimentConfig) -> Result<AdmissibleG> {
    let selector = config.g.as_deref().ok_or_else(|| Error::Config(format!("{} requires `g`", config.command)))?;
    parse_g(selector)
}

/// Tables of at least `limit` entries, through the cache when one is
/// configured.
fn obtain_tables(config: &ExperimentConfig, limit: u64, lines: &mut Vec<String>) -> Result<HeckeTables> {
    let options = TauBuildOptions { parallel: config.parallel };
    match config.cache.clone().or_else(default_cache_dir) {
        Some(dir) => {
            let (tables, outcome) = load_or_build(limit, &dir, options)?;
            let verb = match outcome {
                CacheOutcome::Loaded => "loaded",
                CacheOutcome::Built => "built and cached",
                CacheOutcome::Rebuilt => "rebuilt and cached",
            };
            lines.push(format!("tables: {verb} limit {limit} in {}", dir.display()));
            Ok(tables)
        }
        None => HeckeTables::build_with(limit, options),
    }
}

fn dispatch(config: &ExperimentConfig, outputs: &mut Outputs) -> Result<(bool, Vec<String>)> {
    match config.command {
        Command::TauTable => tau_table(config, outputs),
        Command::Psprimes => psprimes(config, outputs),
        Command::VaalerCheck => vaaler(config, outputs),
        Command::ExpsumBench => bench(config, outputs),
        Command::Typesum => typesum(config, outputs),
        Command::MainSum => main_sum(config, outputs),
    }
}

fn tau_table(config: &ExperimentConfig, outputs: &mut Outputs) -> Result<(bool, Vec<String>)> {
    let limit = config.limit.ok_or_else(|| Error::Config("tau-table requires `limit`".into()))?;
    let mut lines = Vec::new();
    let tables = obtain_tables(config, limit, &mut lines)?;
    let deligne = deligne_check_with(&tables.tau, &tables.arith);
    let cap = limit.min(HECKE_PAIR_CAP);
    let mut pairs = 0u64;
    let mut failures = Vec::new();
    for m in 1..=cap {
        for n in m..=cap / m {
            pairs += 1;
            if !hecke_relation_check(m, n, &tables.tau)? {
                failures.push((m, n));
            }
        }
    }
    lines.push(format!(
        "deligne {}: {} entries, {} violations, max |lambda|/d = {}",
        status(deligne.passed()),
        deligne.checked,
        deligne.violations.len(),
        format_f64(deligne.max_ratio)
    ));
    lines.push(format!(
        "hecke {}: {pairs} pairs with mn <= {cap}, {} failures",
        status(failures.is_empty()),
        failures.len()
    ));
    if let Some(p) = &config.out {
        outputs.write(p, |w| write_tau_csv(&tables.tau, w))?;
    }
    if let Some(p) = &config.arith_out {
        outputs.write(p, |w| write_arith_csv(&tables.arith, w))?;
    }
    Ok((deligne.passed() && failures.is_empty(), lines))
}

fn psprimes(config: &ExperimentConfig, outputs: &mut Outputs) -> Result<(bool, Vec<String>)> {
    let g = selected_g(config)?;
    let limit = config.limit.ok_or_else(|| Error::Config("psprimes requires `limit`".into()))?;
    let hits = enumerate_floor_prime_hits(&g, limit)?;
    if let Some(p) = &config.out {
        outputs.write(p, |w| {
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(["n", "m", "is_prime"])?;
            for r in &hits {
                csv.write_record([r.n.to_string(), r.m.to_string(), r.is_prime.to_string()])?;
            }
            csv.flush().map_err(|e| Error::io(p, e))
        })?;
    }
    Ok((true, vec![format!("{}: {} of n <= {limit} have [g(n)] prime", g.label(), hits.len())]))
}

fn vaaler(config: &ExperimentConfig, outputs: &mut Outputs) -> Result<(bool, Vec<String>)> {
    let grid = unit_grid(config.grid);
    let approxes = config.j_values.iter().map(|&j| build_vaaler(j)).collect::<Result<Vec<_>>>()?;
    let reports: Vec<MajorantReport> = approxes.iter().map(|a| majorant_check(a, &grid)).collect();
    let passed = reports.iter().all(MajorantReport::passed);
    let worst = reports.iter().min_by(|a, b| a.worst_margin.total_cmp(&b.worst_margin)).expect("J is non-empty");
    let js: Vec<String> = config.j_values.iter().map(|j| j.to_string()).collect();
    let line = format!(
        "vaaler-check {} J={} grid={} violations={} worst margin {} at J={} x={}",
        status(passed),
        js.join(","),
        config.grid,
        reports.iter().map(|r| r.violations.len()).sum::<usize>(),
        format_f64(worst.worst_margin),
        worst.j_max,
        format_f64(worst.worst_x)
    );
    if let Some(p) = &config.dump {
        let approx = &approxes[0];
        outputs.write(p, |w| {
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(["x", "psi", "psi_star", "delta"])?;
            for &x in &grid {
                let (psi_star, delta) = approx.eval(x);
                csv.write_record([format_f64(x), format_f64(sawtooth(x)), format_f64(psi_star), format_f64(delta)])?;
            }
            csv.flush().map_err(|e| Error::io(p, e))
        })?;
    }
    let points: Vec<(f64, f64)> = reports.iter().map(|r| (r.j_max as f64, r.worst_margin)).collect();
    outputs.plot(&config.plot, "J worst_margin", &points)?;
    Ok((passed, vec![line]))
}

#[derive(Serialize)]
struct BenchExport<'a> {
    config: &'a ExperimentConfig,
    report: &'a crate::expsums::suites::BenchReport,
    max_ratio: f64,
}

fn bench(config: &ExperimentConfig, outputs: &mut Outputs) -> Result<(bool, Vec<String>)> {
    let suite: Suite = config.suite.ok_or_else(|| Error::Config("expsum-bench requires `suite`".into()))?;
    let mut lines = Vec::new();
    let tables = obtain_tables(config, suite.required_limit(), &mut lines)?;
    let report = run_suite(suite, &tables.tau)?;
    let passed = report.within(config.k);
    lines.push(format!(
        "{suite} {}: {} rows, max ratio {} (K = {})",
        status(passed),
        report.rows.len(),
        format_f64(report.max_ratio()),
        config.k
    ));
    if let Some(p) = &config.out {
        outputs.write(p, |w| report.write_csv(w))?;
    }
    outputs.json(&config.json, &BenchExport { config, report: &report, max_ratio: report.max_ratio() })?;
    let points: Vec<(f64, f64)> = report.rows.iter().enumerate().map(|(i, r)| (i as f64, r.ratio)).collect();
    outputs.plot(&config.plot, "row ratio", &points)?;
    Ok((passed, lines))
}

#[derive(Serialize)]
struct TypesumExport<'a> {
    config: &'a ExperimentConfig,
    convention: &'static str,
    rewrites: &'a [RewriteReport],
    splits: &'a [SplitReport],
    bounds: &'a [BoundReport],
}

fn typesum(config: &ExperimentConfig, outputs: &mut Outputs) -> Result<(bool, Vec<String>)> {
    let g = selected_g(config)?;
    let mut grids: Vec<Vec<BoundPoint>> = Vec::new();
    let mut limit = 1u64;
    for &n in &config.n_values {
        let nf = n as f64;
        let mut points = bound_grid(nf, config.h, config.seed)?;
        for p in &mut points {
            p.config = p.config.clone().with_eta(config.eta);
        }
        grids.push(points);
        floor_g(&g, n)?;
        limit = limit.max((2.0 * g.g(nf)).ceil() as u64 + 2).max(2 * n + 2);
    }
    let mut lines = Vec::new();
    let tables = obtain_tables(config, limit, &mut lines)?;
    let mut passed = true;
    let (mut rewrites, mut splits, mut bounds) = (Vec::new(), Vec::new(), Vec::new());
    for (&n, points) in config.n_values.iter().zip(&grids) {
        let rewrite = rewrite_identity_check(&g, n, &tables)?;
        let split = s1_s2_split_check(&g, n, &tables)?;
        let report = type_sum_bound_report(points, &g, &tables.tau)?;
        let skipped = report.rows.iter().filter(|r| r.status == PointStatus::Skipped).count();
        let within = report.measured().all(|r| r.ratio <= config.k);
        lines.push(format!(
            "N={n} rewrite {}: |difference| {} <= {}",
            status(rewrite.ok),
            format_f64(rewrite.difference),
            format_f64(rewrite.slack)
        ));
        lines.push(format!(
            "N={n} split {}: {} terms, {} violations, S - S1 - S2 = {}",
            status(split.ok),
            split.terms,
            split.violations.len(),
            format_f64(split.s - split.s1 - split.s2)
        ));
        lines.push(format!(
            "N={n} bounds {}: {} measured, {skipped} SKIPPED (hypotheses fail), max ratio {} (K = {})",
            status(within),
            report.rows.len() - skipped,
            format_f64(report.max_ratio()),
            config.k
        ));
        passed &= rewrite.ok && split.ok && within;
        rewrites.push(rewrite);
        splits.push(split);
        bounds.push(report);
    }
    if let Some(p) = &config.out {
        outputs.write(p, |w| write_bound_csv(&bounds, w))?;
    }
    outputs.json(
        &config.json,
        &TypesumExport { config, convention: DYADIC_CONVENTION, rewrites: &rewrites, splits: &splits, bounds: &bounds },
    )?;
    let points: Vec<(f64, f64)> =
        bounds.iter().flat_map(|b| b.measured()).enumerate().map(|(i, r)| (i as f64, r.ratio)).collect();
    outputs.plot(&config.plot, "measured_row ratio", &points)?;
    Ok((passed, lines))
}

fn write_bound_csv<W: Write>(reports: &[BoundReport], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "kind", "N", "X", "Y", "H", "d", "f_N", "status", "window", "terms", "measured", "target", "ratio",
    ])?;
    for r in reports.iter().flat_map(|b| &b.rows) {
        w.write_record([
            match r.kind {
                SumKind::K => "K",
                SumKind::L => "L",
            }
            .to_string(),
            format_f64(r.n),
            format_f64(r.x),
            format_f64(r.y),
            format_f64(r.h),
            r.d.to_string(),
            format_f64(r.f_n),
            match r.status {
                PointStatus::Measured => "MEASURED",
                PointStatus::Skipped => "SKIPPED",
            }
            .to_string(),
            r.window.unwrap_or("").to_string(),
            r.terms.to_string(),
            format_f64(r.measured),
            format_f64(r.target),
            format_f64(r.ratio),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))
}

fn main_sum(config: &ExperimentConfig, outputs: &mut Outputs) -> Result<(bool, Vec<String>)> {
    let g = selected_g(config)?;
    let options = ExperimentOptions { c: config.c, timing: config.timing };
    let mut limit = 1u64;
    for &n in &config.n_values {
        limit = limit.max(floor_g(&g, n)?);
    }
    let mut lines = Vec::new();
    let tables = obtain_tables(config, limit, &mut lines)?;
    let records = main_theorem_experiment(&g, &config.n_values, &tables.tau, options)?;
    let mut passed = true;
    for r in &records {
        let ok = r.a.abs() <= r.majorant;
        passed &= ok;
        lines.push(format!(
            "N={} {}: hits {}, A = {}, quotient {}, envelope {}",
            r.n,
            status(ok),
            r.hits,
            format_f64(r.a),
            format_f64(r.quotient),
            format_f64(r.envelope)
        ));
    }
    if let Some(p) = &config.out {
        outputs.write(p, |w| write_run_csv(&records, w))?;
    }
    let export = RunExport::new(g.label(), &config.n_values, options, tables.limit(), &records);
    if let Some(p) = &config.json {
        outputs.write(p, |w| write_run_json(&export, w))?;
    }
    let points: Vec<(f64, f64)> = records.iter().map(|r| (r.n as f64, r.quotient)).collect();
    outputs.plot(&config.plot, "N quotient", &points)?;
    Ok((passed, lines))
}
