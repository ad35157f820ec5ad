//! Command-line driver: argument parsing, run configuration and reports.
//!
//! Exit status is 0 when every selected check passed, 1 when any item failed
//! or ran out of pole retries, and 2 on configuration or cost-guard errors.

mod report;

pub use report::{render_text, Item, ItemKind, Report, Summary};

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::certs::{all_proof_ids, certify, CertifyOptions};
use crate::error::{Error, Result};
use crate::identities::sampling::DEFAULT_MAX_ABS;
use crate::identities::{eval_sides, list_identities, resolve, verify, Mutation, VerifyOptions};
use crate::psers::{check_series, find_series, series_ids, SeriesOptions, DEFAULT_ORDER};
use crate::qcore::ParamPoint;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qcert", version, about = "Exact random-point verification of q-series identities and their proof certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify terminating identities at random rational points.
    Verify {
        /// Identity ids, comma separated, or `all`.
        #[arg(long = "id", value_delimiter = ',', default_value = "all")]
        ids: Vec<String>,
        /// Multiply every right side by q before comparing (a self-test that
        /// must fail).
        #[arg(long)]
        mutate_rhs: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Replay proof certificates at random rational points.
    Certify {
        /// Proof ids, comma separated, or `all`.
        #[arg(long = "proof", value_delimiter = ',', default_value = "all")]
        proofs: Vec<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check infinite identities as truncated power series.
    Series {
        /// Series ids, comma separated, or `all`.
        #[arg(long = "id", value_delimiter = ',', default_value = "all")]
        ids: Vec<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Every identity, proof certificate and series identity.
    All {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Evaluate both sides of one identity at a given point.
    Eval {
        #[arg(long)]
        id: String,
        /// Point as `name=value` pairs, e.g. `a=3,b=1/2,c=5,d=1/7,q=2,n=3`.
        #[arg(long)]
        point: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List registered ids.
    List,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Random points per item (identities and proofs default to 20, series to 5).
    #[arg(long, env = "QCERT_TRIALS")]
    pub trials: Option<u64>,
    #[arg(long, env = "QCERT_SEED", default_value_t = 42)]
    pub seed: u64,
    /// Upper bound for `n` (identities) or the certificate level (proofs).
    #[arg(long)]
    pub n_max: Option<i64>,
    #[arg(long)]
    pub m_max: Option<i64>,
    #[arg(long)]
    pub r_max: Option<i64>,
    /// Series order N.
    #[arg(long)]
    pub order: Option<usize>,
    /// Bound on sampled numerators and denominators.
    #[arg(long, default_value_t = DEFAULT_MAX_ABS)]
    pub max_abs: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Suppress progress lines on standard error.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// Everything that determines a run. Echoed at the top of the report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub identities: Vec<String>,
    pub proofs: Vec<String>,
    pub series: Vec<String>,
    pub trials: Option<u64>,
    pub seed: u64,
    pub n_max: Option<i64>,
    pub m_max: Option<i64>,
    pub r_max: Option<i64>,
    pub order: usize,
    pub max_abs: i64,
    pub mutate_rhs: bool,
    #[serde(skip)]
    pub progress: bool,
}

impl RunConfig {
    fn new(command: &str, common: &CommonArgs) -> Self {
        RunConfig {
            command: command.to_string(),
            identities: Vec::new(),
            proofs: Vec::new(),
            series: Vec::new(),
            trials: common.trials,
            seed: common.seed,
            n_max: common.n_max,
            m_max: common.m_max,
            r_max: common.r_max,
            order: common.order.unwrap_or(DEFAULT_ORDER),
            max_abs: common.max_abs,
            mutate_rhs: false,
            progress: !common.quiet,
        }
    }

    pub fn verify_options(&self) -> VerifyOptions {
        let mut o = VerifyOptions { seed: self.seed, max_abs: self.max_abs, ..Default::default() };
        if let Some(t) = self.trials {
            o.trials = t;
        }
        if self.mutate_rhs {
            o.mutation = Mutation::ScaleRhsByQ;
        }
        for (name, v) in [("n", self.n_max), ("m", self.m_max), ("r", self.r_max)] {
            if let Some(v) = v {
                o.index_max.insert(name.to_string(), v);
            }
        }
        o
    }

    pub fn certify_options(&self) -> CertifyOptions {
        let mut o = CertifyOptions { seed: self.seed, max_abs: self.max_abs, ..Default::default() };
        if let Some(t) = self.trials {
            o.trials = t;
        }
        if let Some(n) = self.n_max {
            o.n_max = n;
            o.replay_n_max = o.replay_n_max.min(n);
        }
        if let Some(r) = self.r_max {
            o.r_max = r;
        }
        o
    }

    pub fn series_options(&self) -> SeriesOptions {
        let mut o = SeriesOptions { seed: self.seed, max_abs: self.max_abs, order: self.order, ..Default::default() };
        if let Some(t) = self.trials {
            o.trials = t;
        }
        o
    }
}

fn expand(selectors: &[String], all: Vec<&'static str>, check: impl Fn(&str) -> Result<()>) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for s in selectors {
        if s == "all" {
            out.extend(all.iter().map(|s| s.to_string()));
        } else {
            check(s)?;
            out.push(s.clone());
        }
    }
    if out.is_empty() {
        return Err(Error::Config("no items selected".into()));
    }
    Ok(out)
}

fn identity_ids() -> Vec<&'static str> {
    list_identities().iter().map(|d| d.id).collect()
}

fn check_proof(id: &str) -> Result<()> {
    if all_proof_ids().contains(&id) {
        Ok(())
    } else {
        Err(Error::UnknownProof(id.to_string()))
    }
}

/// Runs every selected item in order and assembles the report.
pub fn run(config: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let total = config.identities.len() + config.proofs.len() + config.series.len();
    let mut items = Vec::with_capacity(total);
    let mut done = 0;
    let mut progress = |kind: &str, id: &str| {
        done += 1;
        if config.progress {
            eprintln!("[{done}/{total}] {kind} {id}");
        }
    };
    let vopts = config.verify_options();
    for id in &config.identities {
        progress("identity", id);
        items.push(Item::from_verification(verify(id, &vopts)?));
    }
    let copts = config.certify_options();
    for id in &config.proofs {
        progress("proof", id);
        items.push(Item::from_certificate(certify(id, &copts)?));
    }
    let sopts = config.series_options();
    for id in &config.series {
        progress("series", id);
        items.push(Item::from_series(check_series(id, &sopts)?));
    }
    Ok(Report::new(config.clone(), items, start.elapsed().as_millis() as u64))
}

/// Builds the run configuration for a check command; `None` for the
/// commands that do not run checks.
pub fn config_for(command: &Command) -> Result<Option<(RunConfig, Format, Option<PathBuf>)>> {
    let (cfg, common) = match command {
        Command::Verify { ids, mutate_rhs, common } => {
            let mut c = RunConfig::new("verify", common);
            c.mutate_rhs = *mutate_rhs;
            c.identities = expand(ids, identity_ids(), |id| resolve(id).map(|_| ()))?;
            (c, common)
        }
        Command::Certify { proofs, common } => {
            let mut c = RunConfig::new("certify", common);
            c.proofs = expand(proofs, all_proof_ids(), check_proof)?;
            (c, common)
        }
        Command::Series { ids, common } => {
            let mut c = RunConfig::new("series", common);
            c.series = expand(ids, series_ids(), |id| find_series(id).map(|_| ()))?;
            (c, common)
        }
        Command::All { common } => {
            let mut c = RunConfig::new("all", common);
            c.identities = identity_ids().into_iter().map(String::from).collect();
            c.proofs = all_proof_ids().into_iter().map(String::from).collect();
            c.series = series_ids().into_iter().map(String::from).collect();
            (c, common)
        }
        Command::Eval { .. } | Command::List => return Ok(None),
    };
    Ok(Some((cfg, common.format, common.out.clone())))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Error::Config(format!("stdout: {e}")))
        }
    }
}

fn eval_command(id: &str, point: &str, format: Format) -> Result<i32> {
    let p: ParamPoint = point.parse()?;
    let (lhs, rhs) = eval_sides(id, &p)?;
    let equal = lhs == rhs;
    let text = match format {
        Format::Text => format!("lhs = {lhs}\nrhs = {rhs}\n{}\n", if equal { "EQUAL" } else { "DIFFERENT" }),
        Format::Json => {
            let v = serde_json::json!({ "id": id, "point": p, "lhs": lhs, "rhs": rhs, "equal": equal });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
    };
    emit(&text, None)?;
    Ok(if equal { EXIT_PASS } else { EXIT_FAIL })
}

fn list_command() -> Result<i32> {
    let mut text = String::from("identities:\n");
    for d in list_identities() {
        text += &format!("  {:<28} {}\n", d.id, d.title);
        for s in d.specializations {
            text += &format!("  {:<28} alias of {}\n", s.alias, d.id);
        }
    }
    text += "proofs:\n";
    for id in all_proof_ids() {
        text += &format!("  {id}\n");
    }
    text += "series:\n";
    for s in crate::psers::list_series() {
        text += &format!("  {:<28} {}\n", s.id, s.title);
    }
    emit(&text, None)?;
    Ok(EXIT_PASS)
}

fn execute(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Eval { id, point, format } => return eval_command(id, point, *format),
        Command::List => return list_command(),
        _ => {}
    }
    let (cfg, format, out) = config_for(&cli.command)?.expect("check command");
    let report = run(&cfg)?;
    let text = match format {
        Format::Text => render_text(&report),
        Format::Json => report.to_json(),
    };
    emit(&text, out.as_ref())?;
    Ok(if report.summary.all_passed { EXIT_PASS } else { EXIT_FAIL })
}

/// Parses `args` (program name first), runs, and returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}
