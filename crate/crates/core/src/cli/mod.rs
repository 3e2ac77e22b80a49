//! Command-line front end. [`run`] parses arguments, runs one family of
//! checks and writes the report; the process exit code is its return value:
//! `0` when every check passes, `2` on a mathematical mismatch, `3` on a
//! usage or configuration error.

pub mod report;
pub mod suite;

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{EngineMode, PresentationError, RankEngine};
pub use report::{Check, ReportDocument, Status, Summary};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

/// Largest field size accepted on the command line.
pub const MAX_Q: u64 = 9;
/// Largest `q^{rn}` accepted on the command line.
pub const MAX_SPACE: u64 = 4096;
/// Largest `q^dim` for the identity suite.
pub const MAX_IDENTITY_SPACE: u64 = 27;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Engine(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => EXIT_CONFIG,
            CliError::Engine(_) => EXIT_MISMATCH,
        }
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        match e {
            PresentationError::TooLarge { .. } | PresentationError::ExactBudget { .. } => CliError::Config(e.to_string()),
            e => CliError::Engine(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum EngineKind {
    Prob,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Identities of the universal reciprocal map
    Identities,
    /// Graded dimensions against the closed formula
    Dims,
    /// Free basis of special products
    Basis,
    /// Boundary ideal: kernel route against generators
    Boundary,
    /// Invariants under U and under reduction kernels
    Invariants,
    /// Drinfeld module roundtrips for the built-in constructions
    Drinfeld,
    /// Free submodules per rank and classification of constructed maps
    Strata,
    /// Cusp form dimensions index·C(d−1, r−1)
    Cuspdims,
    /// The full acceptance grid
    Report,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Identities => "identities",
            Command::Dims => "dims",
            Command::Basis => "basis",
            Command::Boundary => "boundary",
            Command::Invariants => "invariants",
            Command::Drinfeld => "drinfeld",
            Command::Strata => "strata",
            Command::Cuspdims => "cuspdims",
            Command::Report => "report",
        }
    }
}

/// Everything a run depends on; echoed in the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Args)]
pub struct RunConfig {
    /// Size of the finite field
    #[arg(long, global = true, default_value_t = 2)]
    pub q: u64,
    /// Rank
    #[arg(long, global = true, default_value_t = 2)]
    pub r: usize,
    /// Level exponent: N = (t^n)
    #[arg(long, global = true, default_value_t = 1)]
    pub n: usize,
    #[arg(long = "dmin", global = true, default_value_t = 1)]
    pub d_min: usize,
    #[arg(long = "dmax", global = true, default_value_t = 3)]
    pub d_max: usize,
    #[arg(long, global = true, value_enum, default_value_t = EngineKind::Prob)]
    pub engine: EngineKind,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Agreeing trials required by the probabilistic engine
    #[arg(long, global = true, default_value_t = 3)]
    pub trials: usize,
    /// Extension degree for evaluation points; default is the least m with q^m ≥ 2^20
    #[arg(long = "ext-m", global = true)]
    pub ext_m: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write data here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// Subgroup index for `cuspdims`; defaults to |U|
    #[arg(long, global = true)]
    pub index: Option<u64>,
    /// Dimensions for `identities`, comma separated; defaults to 1,2,3 for q = 2 and 1,2 otherwise
    #[arg(long, global = true, value_delimiter = ',')]
    pub dims: Vec<usize>,
    /// Construction for `drinfeld`; all of them when absent
    #[arg(long, global = true)]
    pub construction: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q: 2,
            r: 2,
            n: 1,
            d_min: 1,
            d_max: 3,
            engine: EngineKind::Prob,
            seed: 1,
            trials: 3,
            ext_m: None,
            format: Format::Json,
            out: None,
            index: None,
            dims: Vec::new(),
            construction: None,
        }
    }
}

impl RunConfig {
    /// Rejects configurations beyond desk scale, naming the bound.
    pub fn validate(&self, command: Command) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if crate::fields::prime_power(self.q).is_none() {
            return bad(format!("q = {} is not a prime power", self.q));
        }
        if self.q > MAX_Q {
            return bad(format!("q = {} exceeds the limit q ≤ {MAX_Q}", self.q));
        }
        if self.r == 0 || self.n == 0 {
            return bad("r and n must be at least 1".into());
        }
        let size = self.q.checked_pow((self.r * self.n) as u32);
        if size.is_none_or(|s| s > MAX_SPACE) {
            return bad(format!(
                "q^(rn) = {}^{} exceeds the limit q^(rn) ≤ {MAX_SPACE}",
                self.q,
                self.r * self.n
            ));
        }
        if self.d_min > self.d_max {
            return bad(format!("dmin = {} is larger than dmax = {}", self.d_min, self.d_max));
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.ext_m == Some(0) {
            return bad("ext-m must be at least 1".into());
        }
        if command == Command::Identities {
            for &d in &self.identity_dims() {
                if d == 0 || self.q.checked_pow(d as u32).is_none_or(|s| s > MAX_IDENTITY_SPACE) {
                    return bad(format!(
                        "identity suite for dim {d} needs 1 ≤ q^dim ≤ {MAX_IDENTITY_SPACE}"
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn identity_dims(&self) -> Vec<usize> {
        match (self.dims.is_empty(), self.q) {
            (false, _) => self.dims.clone(),
            (true, 2) => vec![1, 2, 3],
            (true, _) => vec![1, 2],
        }
    }

    pub fn engine(&self) -> RankEngine {
        match self.engine {
            EngineKind::Prob => {
                RankEngine::new(EngineMode::Probabilistic { seed: self.seed, trials: self.trials, ext_m: self.ext_m })
            }
            EngineKind::Exact => RankEngine::exact(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "recipmaps", version, about = "Reciprocal maps, Drinfeld modules and graded dimension checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

/// CSV columns for subcommands with a fixed table layout.
pub fn csv_columns(command: Command) -> Option<&'static [&'static str]> {
    match command {
        Command::Dims => Some(&["q", "r", "n", "d", "dim_formula", "dim_engine", "match"]),
        Command::Cuspdims => Some(&["q", "r", "n", "d", "index", "expected", "computed", "match"]),
        _ => None,
    }
}

/// Runs one subcommand and collects its report.
pub fn execute(command: Command, config: &RunConfig) -> Result<ReportDocument, CliError> {
    config.validate(command)?;
    let start = Instant::now();
    let engine = config.engine();
    let ds = config.d_min..=config.d_max;
    let checks = match command {
        Command::Identities => {
            let dims = config.identity_dims();
            let mut c = suite::identity_checks(config.q, &dims)?;
            c.extend(suite::tau_form_checks(config.q, &dims)?);
            c
        }
        Command::Report => suite::report_checks(&engine)?,
        Command::Drinfeld => suite::drinfeld_checks(config.construction.as_deref())?,
        _ => {
            let space = suite::space(config.q, config.r, config.n)?;
            match command {
                Command::Dims => suite::dims_checks(&engine, &space, ds)?,
                Command::Basis => suite::basis_checks(&engine, &space, ds)?,
                Command::Boundary => {
                    let mut c = suite::boundary_checks(&engine, &space, ds.clone())?;
                    if config.n == 1 {
                        c.extend(suite::iv_checks(&engine, config.q, config.r, ds)?);
                    }
                    c
                }
                Command::Invariants => {
                    let mut c = suite::u_invariant_checks(&engine, &space, ds.clone())?;
                    if config.n >= 2 {
                        c.extend(suite::reduction_checks(&engine, &space, ds)?);
                    }
                    c
                }
                Command::Strata => {
                    let mut c = suite::strata_checks(&space);
                    c.extend(suite::classification_checks()?);
                    c
                }
                Command::Cuspdims => suite::cusp_checks(&engine, &space, ds, config.index)?,
                _ => unreachable!(),
            }
        }
    };
    Ok(ReportDocument::new(command.name(), config, checks, start.elapsed().as_millis() as u64))
}

/// Renders a report in the configured format.
pub fn render(doc: &ReportDocument, command: Command) -> String {
    match doc.config.format {
        Format::Json => doc.to_json(),
        Format::Csv => doc.to_csv(csv_columns(command)),
        Format::Text => doc.to_text(),
    }
}

fn write_out(config: &RunConfig, data: &str) -> Result<(), CliError> {
    match &config.out {
        Some(path) => std::fs::write(path, data)?,
        None => std::io::stdout().lock().write_all(data.as_bytes())?,
    }
    Ok(())
}

/// Parses `args` (program name first), runs, writes output and returns the exit code.
pub fn run<I, T>(args: I) -> i32
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
    let doc = match execute(cli.command, &cli.config) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("recipmaps {}: {e}", cli.command.name());
            return e.exit_code();
        }
    };
    if let Err(e) = write_out(&cli.config, &render(&doc, cli.command)) {
        eprintln!("recipmaps: {e}");
        return e.exit_code();
    }
    for c in doc.checks.iter().filter(|c| !c.passed()) {
        eprintln!("FAIL {} {} {}", c.group, c.name, serde_json::Value::Object(c.parameters.clone()));
    }
    eprintln!(
        "recipmaps {}: {} passed, {} failed in {} ms",
        doc.command, doc.summary.pass, doc.summary.fail, doc.summary.elapsed_ms
    );
    if doc.all_pass() {
        EXIT_PASS
    } else {
        EXIT_MISMATCH
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use serde_json::json;

    fn cfg(q: u64, r: usize, n: usize, d_min: usize, d_max: usize) -> RunConfig {
        RunConfig { q, r, n, d_min, d_max, ..RunConfig::default() }
    }

    fn tmp(name: &str) -> String {
        std::env::temp_dir().join(format!("recipmaps-{}-{name}", std::process::id())).display().to_string()
    }

    #[test]
    fn dims_examples_and_csv_layout() {
        for ((r, n, dmax), want) in [((2, 1, 3), vec![3, 5, 7]), ((1, 2, 3), vec![2, 2, 2]), ((2, 2, 1), vec![12])] {
            let doc = execute(Command::Dims, &cfg(2, r, n, 1, dmax)).unwrap();
            let got: Vec<u64> = doc.checks.iter().map(|c| c.computed.as_u64().unwrap()).collect();
            assert_eq!(got, want);
            assert!(doc.all_pass());
        }
        let doc = execute(Command::Dims, &cfg(2, 2, 1, 1, 1)).unwrap();
        assert_eq!(
            doc.to_csv(csv_columns(Command::Dims)),
            "q,r,n,d,dim_formula,dim_engine,match\n2,2,1,1,3,3,true\n"
        );
    }

    #[test]
    fn strata_and_cusp_examples() {
        let doc = execute(Command::Strata, &cfg(2, 2, 1, 1, 1)).unwrap();
        let counts: Vec<(u64, u64)> = doc
            .checks
            .iter()
            .filter(|c| c.name == "free-submodules")
            .map(|c| (c.param("s").unwrap(), c.expected.as_u64().unwrap()))
            .collect();
        assert_eq!(counts, [(1, 3), (2, 1)]);
        assert!(doc.all_pass());
        let mut c = cfg(2, 2, 1, 3, 3);
        c.index = Some(2);
        let doc = execute(Command::Cuspdims, &c).unwrap();
        assert_eq!(doc.checks[0].computed, json!(4));
    }

    #[test]
    fn identities_and_drinfeld_pass() {
        let doc = execute(Command::Identities, &RunConfig { dims: vec![1, 2], ..RunConfig::default() }).unwrap();
        assert!(doc.all_pass());
        let mut c = RunConfig { construction: Some("carlitz-n2".into()), ..RunConfig::default() };
        let doc = execute(Command::Drinfeld, &c).unwrap();
        assert_eq!(doc.checks.len(), 1);
        assert!(doc.all_pass());
        c.construction = Some("nope".into());
        assert!(matches!(execute(Command::Drinfeld, &c), Err(CliError::Config(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["recipmaps", "dims", "--q", "6"]), EXIT_CONFIG);
        assert_eq!(run(["recipmaps", "dims", "--q", "11"]), EXIT_CONFIG);
        assert_eq!(run(["recipmaps", "dims", "--r", "7", "--n", "2"]), EXIT_CONFIG);
        assert_eq!(run(["recipmaps", "dims", "--dmin", "3", "--dmax", "2"]), EXIT_CONFIG);
        assert_eq!(run(["recipmaps", "frobnicate"]), EXIT_CONFIG);
        assert_eq!(run(["recipmaps", "identities", "--dims", "4", "--q", "3"]), EXIT_CONFIG);
        let out = tmp("dims.csv");
        assert_eq!(run(["recipmaps", "dims", "--dmax", "2", "--format", "csv", "--out", &out]), EXIT_PASS);
        let text = std::fs::read_to_string(&out).unwrap();
        assert!(text.starts_with("q,r,n,d,dim_formula,dim_engine,match\n"));
        assert!(!text.contains('\r'));
        let _ = std::fs::remove_file(out);
    }

    #[test]
    fn exact_budget_is_a_config_error() {
        let mut c = cfg(2, 4, 1, 2, 2);
        c.engine = EngineKind::Exact;
        assert_eq!(execute(Command::Dims, &c).unwrap_err().exit_code(), EXIT_CONFIG);
    }

    #[test]
    fn same_seed_same_json() {
        let c = cfg(2, 2, 2, 1, 2);
        let a = execute(Command::Basis, &c).unwrap();
        let b = execute(Command::Basis, &c).unwrap();
        assert_eq!(a.without_timing().to_json(), b.without_timing().to_json());
        let exact = execute(Command::Dims, &RunConfig { engine: EngineKind::Exact, ..cfg(2, 2, 1, 1, 4) }).unwrap();
        let prob = execute(Command::Dims, &cfg(2, 2, 1, 1, 4)).unwrap();
        let dims = |d: &ReportDocument| d.checks.iter().map(|c| c.computed.clone()).collect::<Vec<_>>();
        assert_eq!(dims(&exact), dims(&prob));
    }

    fn arb_value() -> impl Strategy<Value = serde_json::Value> {
        prop_oneof![
            any::<u64>().prop_map(|x| json!(x)),
            any::<bool>().prop_map(|x| json!(x)),
            "[a-z0-9 ,\"τ]{0,12}".prop_map(|s| json!(s)),
        ]
    }

    proptest! {
        #[test]
        fn json_roundtrip(
            entries in proptest::collection::vec(("[a-z]{1,6}", arb_value(), arb_value(), any::<bool>(), any::<u64>()), 0..6),
            seed in any::<u64>(),
        ) {
            let checks = entries
                .into_iter()
                .map(|(name, e, c, ok, ms)| Check {
                    group: "g".into(),
                    name: name.clone(),
                    parameters: serde_json::Map::from_iter([(name, e.clone())]),
                    expected: e,
                    computed: c,
                    status: Status::from_bool(ok),
                    elapsed_ms: ms,
                    provenance: "p".into(),
                })
                .collect();
            let doc = ReportDocument::new("dims", &RunConfig { seed, ..RunConfig::default() }, checks, 5);
            prop_assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
        }
    }
}
