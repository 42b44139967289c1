use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expsums::suites::{Suite, DEFAULT_EMPIRICAL_CONSTANT};
use crate::gfunc::parse_g;
use crate::typesums::{DEFAULT_ENVELOPE_C, DEFAULT_ETA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Subcommand)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Build the τ/λ table and arithmetic sidecar, check them, export CSV.
    TauTable,
    /// List n <= limit with [g(n)] prime.
    Psprimes,
    /// Check |ψ* - ψ| <= δ on a grid for each J.
    VaalerCheck,
    /// Run one exponential-sum bound suite.
    ExpsumBench,
    /// Reduction identities and K_d/L_d bound ratios.
    Typesum,
    /// Cancellation experiment over an N grid.
    MainSum,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::TauTable,
        Command::Psprimes,
        Command::VaalerCheck,
        Command::ExpsumBench,
        Command::Typesum,
        Command::MainSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::TauTable => "tau-table",
            Command::Psprimes => "psprimes",
            Command::VaalerCheck => "vaaler-check",
            Command::ExpsumBench => "expsum-bench",
            Command::Typesum => "typesum",
            Command::MainSum => "main-sum",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("command: unknown value `{s}`")))
    }
}

/// Raw command line. Every option is also a `key = value` config-file key
/// (the long name without dashes); flags win over the file.
#[derive(Debug, Parser)]
#[command(name = "heckeps", version, about = "Hecke eigenvalues at primes of the form [g(n)]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    /// `key = value` config file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Growth function: identity, power:<c> or xexp-sqrtlog.
    #[arg(long, global = true)]
    pub g: Option<String>,
    /// Comma-separated N values, e.g. 1e3,1e4.
    #[arg(long = "N", global = true)]
    pub n: Option<String>,
    /// Comma-separated Vaaler orders.
    #[arg(long = "J", global = true)]
    pub j: Option<String>,
    /// Frequency range of the type sums.
    #[arg(long = "H", global = true)]
    pub h: Option<String>,
    #[arg(long, global = true)]
    pub eta: Option<String>,
    /// Envelope constant of N exp(-C sqrt(log N)).
    #[arg(long = "C", global = true)]
    pub c: Option<String>,
    /// Empirical constant for ratio checks.
    #[arg(long = "K", global = true)]
    pub k: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<String>,
    /// vdc|slemma|delta|shifted|perron
    #[arg(long, global = true)]
    pub suite: Option<String>,
    /// Table limit or enumeration bound.
    #[arg(long, global = true)]
    pub limit: Option<String>,
    /// Grid size for vaaler-check.
    #[arg(long, global = true)]
    pub grid: Option<String>,
    /// vaaler-check: CSV of `x,psi,psi_star,delta`.
    #[arg(long, global = true)]
    pub dump: Option<String>,
    #[arg(long, global = true)]
    pub out: Option<String>,
    #[arg(long, global = true)]
    pub json: Option<String>,
    /// Two-column `x y` plot data.
    #[arg(long, global = true)]
    pub plot: Option<String>,
    /// Arithmetic sidecar CSV (tau-table).
    #[arg(long = "arith-out", global = true)]
    pub arith_out: Option<String>,
    /// Table cache directory; defaults to $HECKEPS_CACHE.
    #[arg(long, global = true)]
    pub cache: Option<String>,
    /// Omit wall-clock timings so outputs are byte-reproducible.
    #[arg(long = "no-timing", global = true)]
    pub no_timing: bool,
    /// Build the τ table with the parallel kernel.
    #[arg(long, global = true)]
    pub parallel: bool,
}

const KEYS: [&str; 21] = [
    "command",
    "g",
    "N",
    "J",
    "H",
    "eta",
    "C",
    "K",
    "seed",
    "suite",
    "limit",
    "grid",
    "dump",
    "out",
    "json",
    "plot",
    "arith-out",
    "cache",
    "timing",
    "parallel",
    "config",
];

/// Validated configuration of one run.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub g: Option<String>,
    #[serde(rename = "N")]
    pub n_values: Vec<u64>,
    #[serde(rename = "J")]
    pub j_values: Vec<usize>,
    #[serde(rename = "H")]
    pub h: f64,
    pub eta: f64,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub seed: u64,
    pub suite: Option<Suite>,
    pub limit: Option<u64>,
    pub grid: usize,
    pub dump: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub json: Option<PathBuf>,
    pub plot: Option<PathBuf>,
    pub arith_out: Option<PathBuf>,
    pub cache: Option<PathBuf>,
    pub timing: bool,
    pub parallel: bool,
}

/// Why a command line did not produce a config.
#[derive(Debug)]
pub enum ParseFailure {
    /// Help, version, or a malformed command line.
    Clap(clap::Error),
    /// Nothing to run.
    Usage(String),
    Invalid(Error),
}

impl From<Error> for ParseFailure {
    fn from(e: Error) -> Self {
        ParseFailure::Invalid(e)
    }
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`, got `{line}`", i + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) || key == "config" {
            return Err(Error::Config(format!("line {}: unknown key `{key}`", i + 1)));
        }
        if map.insert(key.to_string(), value.to_string()).is_some() {
            return Err(Error::Config(format!("line {}: duplicate key `{key}`", i + 1)));
        }
    }
    Ok(map)
}

/// Command line (with an optional `--config` file) to a validated config.
pub fn parse_config<I, T>(args: I) -> std::result::Result<ExperimentConfig, ParseFailure>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(ParseFailure::Clap)?;
    let mut map = match &cli.config {
        Some(path) => parse_config_text(&read(path)?)?,
        None => BTreeMap::new(),
    };
    let mut set = |key: &str, v: &Option<String>| {
        if let Some(v) = v {
            map.insert(key.to_string(), v.clone());
        }
    };
    set("command", &cli.command.map(|c| c.name().to_string()));
    set("g", &cli.g);
    set("N", &cli.n);
    set("J", &cli.j);
    set("H", &cli.h);
    set("eta", &cli.eta);
    set("C", &cli.c);
    set("K", &cli.k);
    set("seed", &cli.seed);
    set("suite", &cli.suite);
    set("limit", &cli.limit);
    set("grid", &cli.grid);
    set("dump", &cli.dump);
    set("out", &cli.out);
    set("json", &cli.json);
    set("plot", &cli.plot);
    set("arith-out", &cli.arith_out);
    set("cache", &cli.cache);
    if cli.no_timing {
        map.insert("timing".into(), "false".into());
    }
    if cli.parallel {
        map.insert("parallel".into(), "true".into());
    }
    if !map.contains_key("command") {
        return Err(ParseFailure::Usage(usage()));
    }
    Ok(from_map(&map)?)
}

pub fn usage() -> String {
    use clap::CommandFactory;
    Cli::command().render_help().to_string()
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn bad(key: &str, value: &str, expected: &str) -> Error {
    Error::Config(format!("{key}: `{value}` is not {expected}"))
}

fn real(key: &str, value: &str) -> Result<f64> {
    value.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| bad(key, value, "a finite real number"))
}

/// Accepts `1000` and `1e3`, rejects non-integral or non-positive values.
fn positive_integer(key: &str, value: &str) -> Result<u64> {
    let v = value.trim();
    if let Ok(n) = v.parse::<u64>() {
        if n > 0 {
            return Ok(n);
        }
    }
    match v.parse::<f64>() {
        Ok(x) if x >= 1.0 && x.fract() == 0.0 && x < 1.8e19 => Ok(x as u64),
        _ => Err(bad(key, value, "a positive integer (e.g. 1000 or 1e3)")),
    }
}

fn list(key: &str, value: &str) -> Result<Vec<u64>> {
    value.split(',').map(|s| positive_integer(key, s)).collect()
}

fn boolean(key: &str, value: &str) -> Result<bool> {
    match value.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(bad(key, value, "a boolean (true or false)")),
    }
}

fn from_map(map: &BTreeMap<String, String>) -> Result<ExperimentConfig> {
    let get = |k: &str| map.get(k).map(String::as_str);
    let command: Command = get("command").unwrap_or_default().parse()?;
    let mut cfg = ExperimentConfig {
        command,
        g: None,
        n_values: Vec::new(),
        j_values: vec![1, 5, 10, 100],
        h: 1.0,
        eta: DEFAULT_ETA,
        c: DEFAULT_ENVELOPE_C,
        k: DEFAULT_EMPIRICAL_CONSTANT,
        seed: 1,
        suite: None,
        limit: None,
        grid: 10_000,
        dump: get("dump").map(PathBuf::from),
        out: get("out").map(PathBuf::from),
        json: get("json").map(PathBuf::from),
        plot: get("plot").map(PathBuf::from),
        arith_out: get("arith-out").map(PathBuf::from),
        cache: get("cache").map(PathBuf::from),
        timing: true,
        parallel: false,
    };
    if let Some(v) = get("g") {
        parse_g(v).map_err(|e| Error::Config(format!("g: {e}")))?;
        cfg.g = Some(v.to_string());
    }
    if let Some(v) = get("N") {
        cfg.n_values = list("N", v)?;
    }
    if let Some(v) = get("J") {
        cfg.j_values = list("J", v)?.into_iter().map(|j| j as usize).collect();
    }
    if let Some(v) = get("H") {
        cfg.h = real("H", v)?;
        if cfg.h < 1.0 {
            return Err(bad("H", v, "a real >= 1"));
        }
    }
    if let Some(v) = get("eta") {
        cfg.eta = real("eta", v)?;
        if !(cfg.eta > 0.0 && cfg.eta < 1.0) {
            return Err(bad("eta", v, "a real in (0, 1)"));
        }
    }
    if let Some(v) = get("C") {
        cfg.c = real("C", v)?;
        if cfg.c <= 0.0 {
            return Err(bad("C", v, "a positive real"));
        }
    }
    if let Some(v) = get("K") {
        cfg.k = real("K", v)?;
        if cfg.k <= 0.0 {
            return Err(bad("K", v, "a positive real"));
        }
    }
    if let Some(v) = get("seed") {
        cfg.seed = v.trim().parse().map_err(|_| bad("seed", v, "a non-negative integer"))?;
    }
    if let Some(v) = get("suite") {
        cfg.suite = Some(v.trim().parse().map_err(|_| bad("suite", v, "one of vdc|slemma|delta|shifted|perron"))?);
    }
    if let Some(v) = get("limit") {
        cfg.limit = Some(positive_integer("limit", v)?);
    }
    if let Some(v) = get("grid") {
        cfg.grid = positive_integer("grid", v)? as usize;
    }
    if let Some(v) = get("timing") {
        cfg.timing = boolean("timing", v)?;
    }
    if let Some(v) = get("parallel") {
        cfg.parallel = boolean("parallel", v)?;
    }
    validate(&mut cfg)?;
    Ok(cfg)
}

fn require<T>(value: &Option<T>, key: &str, command: Command) -> Result<()> {
    if value.is_none() {
        return Err(Error::Config(format!("{command} requires `{key}`")));
    }
    Ok(())
}

/// Command-specific requirements and defaults.
fn validate(cfg: &mut ExperimentConfig) -> Result<()> {
    let outputs: &[&str] = match cfg.command {
        Command::TauTable => &["out", "arith-out"],
        Command::Psprimes => &["out"],
        Command::VaalerCheck => &["dump", "plot"],
        Command::ExpsumBench | Command::Typesum | Command::MainSum => &["out", "json", "plot"],
    };
    for (key, path) in [
        ("out", &cfg.out),
        ("json", &cfg.json),
        ("plot", &cfg.plot),
        ("arith-out", &cfg.arith_out),
        ("dump", &cfg.dump),
    ] {
        if path.is_some() && !outputs.contains(&key) {
            return Err(Error::Config(format!("{}: {} does not write `{key}`", key, cfg.command)));
        }
    }
    match cfg.command {
        Command::TauTable => require(&cfg.limit, "limit", cfg.command)?,
        Command::Psprimes => {
            require(&cfg.g, "g", cfg.command)?;
            require(&cfg.limit, "limit", cfg.command)?;
        }
        Command::VaalerCheck => {
            if cfg.dump.is_some() && cfg.j_values.len() != 1 {
                return Err(Error::Config("dump: needs exactly one value of `J`".into()));
            }
        }
        Command::ExpsumBench => require(&cfg.suite, "suite", cfg.command)?,
        Command::Typesum => {
            cfg.g.get_or_insert_with(|| "power:1.02".into());
            if cfg.n_values.is_empty() {
                cfg.n_values = vec![1000, 10_000];
            }
        }
        Command::MainSum => {
            require(&cfg.g, "g", cfg.command)?;
            if cfg.n_values.is_empty() {
                return Err(Error::Config("main-sum requires `N`".into()));
            }
        }
    }
    Ok(())
}
