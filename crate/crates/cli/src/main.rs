//! Command-line front end: parameter ingestion, suite selection, and JSON
//! report emission with a stable schema.

mod config;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use cowreath::casimir::{self, classify, FamilyTag};
use cowreath::cowreath::CheckMode;
use cowreath::report::{Status, VerificationReport};
use cowreath::setcombin::{enumerate_matchings, matching_sign};
use cowreath::suites;

use config::{parse_subset, resolve, FileConfig, Mode, Overrides, RunConfig};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "cowreath", version)]
#[command(about = "Exact verifier for the separability of Clifford/E(n) cowreaths")]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Run verification suites and emit a JSON report
    Verify(VerifyArgs),
    /// Emit a right-trivial Casimir table as JSON
    Table(TableArgs),
    /// List the perfect matchings of an integer set with signs
    Matchings {
        /// The set, e.g. `{2,3,5,8}` or `2,3,5,8`
        set: String,
    },
    /// Brute-force sweep of the position-sum identities and matching laws
    Lemmas {
        /// Upper bound of the ground set `{1..bound}`
        #[arg(default_value_t = 8)]
        bound: u8,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Suppress the timestamp and zero all timings (byte-reproducible output)
        #[arg(long)]
        no_timestamp: bool,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// JSON config file; flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of odd generators (1 ≤ n ≤ 16)
    #[arg(long)]
    n: Option<usize>,
    /// Parameter family: zero | alpha | custom
    #[arg(long)]
    family: Option<String>,
    /// Casimir shape: rt | rth
    #[arg(long)]
    mode: Option<String>,
    /// Seed for randomized specialization (repeatable)
    #[arg(long = "seed")]
    seeds: Vec<u64>,
    /// Force exact symbolic evaluation at any n (warn-and-proceed)
    #[arg(long)]
    symbolic: bool,
    /// Write JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Suppress the timestamp and zero all timings (byte-reproducible output)
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Suite to run (repeatable): lemmas | hopf | comodule | cowreath |
    /// casimir-rt | casimir-rth | general
    #[arg(long = "suite")]
    suites: Vec<String>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Serialize)]
struct Tool {
    name: &'static str,
    version: &'static str,
}

#[derive(Serialize)]
struct Report {
    schema: u32,
    tool: Tool,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
    n: usize,
    family: String,
    mode: String,
    classified: String,
    suites: Vec<VerificationReport>,
    passed: bool,
}

#[derive(Serialize)]
struct TableReport {
    schema: u32,
    tool: Tool,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
    n: usize,
    mode: String,
    right_trivial: bool,
    entries: std::collections::BTreeMap<String, cowreath::linalg::AlgebraElement>,
}

fn tool() -> Tool {
    Tool {
        name: "cowreath",
        version: env!("CARGO_PKG_VERSION"),
    }
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn family_tag_name(tag: FamilyTag) -> &'static str {
    match tag {
        FamilyTag::ZeroFamily => "zero-family",
        FamilyTag::AlphaFamily => "alpha-family",
        FamilyTag::NotRT => "not-rt",
    }
}

fn load_file_config(path: &Option<PathBuf>) -> Result<FileConfig> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .with_context(|| format!("cannot read config {}", p.display()))?;
            serde_json::from_str(&text)
                .with_context(|| format!("cannot parse config {}", p.display()))
        }
    }
}

fn make_run_config(common: CommonArgs, suites: Vec<String>) -> Result<RunConfig> {
    let file = load_file_config(&common.config)?;
    resolve(
        file,
        Overrides {
            n: common.n,
            family: common.family,
            mode: common.mode,
            suites,
            seeds: common.seeds,
            symbolic: common.symbolic,
            out: common.out,
            no_timestamp: common.no_timestamp,
        },
    )
}

fn emit_json<T: Serialize>(value: &T, out: &Option<PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => fs::write(path, text.as_bytes())
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::ProbabilisticPass => "probabilistic-pass",
        Status::Fail => "FAIL",
    }
}

fn print_suite(report: &VerificationReport) {
    for c in &report.conditions {
        eprintln!(
            "[{}] {}: {} ({} instances, {} failures, {} ms)",
            report.suite,
            c.id,
            status_word(c.status),
            c.instances,
            c.failures,
            c.millis
        );
        for w in &c.witnesses {
            eprintln!("    witness {} → {}", w.instantiation, w.difference);
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let cfg = make_run_config(args.common, args.suites)?;
    let mut reports: Vec<VerificationReport> = Vec::new();
    for suite in &cfg.suites {
        let mut report = match suite.as_str() {
            "lemmas" => suites::suite_lemmas(8),
            "hopf" => suites::suite_hopf(cfg.n),
            "comodule" => suites::suite_comodule(&cfg.params, &cfg.strategy)?,
            "cowreath" => suites::suite_cowreath(&cfg.params, &cfg.strategy)?,
            "casimir-rt" => {
                suites::suite_casimir_rt(&cfg.params, &cfg.eta, &cfg.mu, &cfg.strategy)?
            }
            "casimir-rth" => suites::suite_casimir_rth(&cfg.params, &cfg.mu, &cfg.strategy)?,
            "general" => {
                let check_mode = match cfg.mode {
                    Mode::Rt => CheckMode::Rt,
                    Mode::Rth => CheckMode::Rth,
                };
                suites::suite_general(&cfg.params, &cfg.eta, &cfg.mu, check_mode, &cfg.strategy)?
            }
            other => return Err(anyhow!("unknown suite `{other}`")),
        };
        if cfg.no_timestamp {
            report.strip_timings();
        }
        print_suite(&report);
        reports.push(report);
    }
    let passed = reports.iter().all(|r| r.passed);
    let report = Report {
        schema: SCHEMA_VERSION,
        tool: tool(),
        timestamp: (!cfg.no_timestamp).then(now),
        n: cfg.n,
        family: cfg.family.to_string(),
        mode: cfg.mode.to_string(),
        classified: family_tag_name(classify(&cfg.params)).to_string(),
        suites: reports,
        passed,
    };
    emit_json(&report, &cfg.out)?;
    eprintln!("{}", if passed { "PASS" } else { "FAIL" });
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_table(args: TableArgs) -> Result<ExitCode> {
    let cfg = make_run_config(args.common, vec!["casimir-rt".into()])?;
    let table = match cfg.mode {
        Mode::Rt => casimir::build_casimir_rt(&cfg.params, &cfg.eta, &cfg.mu)?,
        Mode::Rth => casimir::build_casimir_rth(&cfg.params, &cfg.mu)?,
    };
    let mut entries = std::collections::BTreeMap::new();
    for ((h, hp), _) in table.materialize() {
        entries.insert(format!("{h}|{hp}"), table.b_a(h, hp));
    }
    let report = TableReport {
        schema: SCHEMA_VERSION,
        tool: tool(),
        timestamp: (!cfg.no_timestamp).then(now),
        n: cfg.n,
        mode: cfg.mode.to_string(),
        right_trivial: table.is_rt(),
        entries,
    };
    emit_json(&report, &cfg.out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_matchings(set: &str) -> Result<ExitCode> {
    let s = parse_subset(set)?;
    let matchings = enumerate_matchings(s).map_err(|e| anyhow!("{e}"))?;
    let mut sum = 0i64;
    for m in &matchings {
        let sign = matching_sign(m);
        sum += sign;
        println!("{m}  sgn={}", if sign > 0 { "+1" } else { "-1" });
    }
    println!("count = {}", matchings.len());
    println!("sum of signs = {sum}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_lemmas(bound: u8, out: Option<PathBuf>, no_timestamp: bool) -> Result<ExitCode> {
    if bound == 0 || bound > 10 {
        return Err(anyhow!("bound must satisfy 1 ≤ bound ≤ 10, got {bound}"));
    }
    let mut report = suites::suite_lemmas(bound);
    if no_timestamp {
        report.strip_timings();
    }
    print_suite(&report);
    let passed = report.passed;
    emit_json(&report, &out)?;
    eprintln!("{}", if passed { "PASS" } else { "FAIL" });
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Commands::Verify(args) => cmd_verify(args),
        Commands::Table(args) => cmd_table(args),
        Commands::Matchings { set } => cmd_matchings(&set),
        Commands::Lemmas {
            bound,
            out,
            no_timestamp,
        } => cmd_lemmas(bound, out, no_timestamp),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
