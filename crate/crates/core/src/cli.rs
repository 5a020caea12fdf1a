//! Command-line front end.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::dk::{parse_document, print_document, Document, Item};
use crate::drv::parse_trace;
use crate::kernel::{CheckOptions, KernelError, DEFAULT_BUDGET};
use crate::translate::{translate, Sorry, TranslateOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_SORRY: i32 = 3;
pub const EXIT_PARSE: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "lampi", version, about = "Superposition traces to lambda-Pi modulo proof scripts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Translate a .drv trace into a .dk script.
    Translate {
        input: PathBuf,
        /// Script path; defaults to the input with a .dk extension.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Check a .dk script with the embedded kernel.
    Check {
        script: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Translate and check in memory.
    E2e {
        input: PathBuf,
        /// Also write the script to this path.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Succeed even when some steps are proved by sorry axioms.
    #[arg(long)]
    pub allow_sorry: bool,
    /// Reduction step budget per entry.
    #[arg(long, env = "LAMPI_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Write the run report as JSON to this path.
    #[arg(long)]
    pub report_json: Option<PathBuf>,
    /// Omit the header comment of generated scripts.
    #[arg(long)]
    pub no_prelude_banner: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timings {
    pub parse_ms: f64,
    pub translate_ms: f64,
    pub check_ms: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct RunReport {
    pub command: String,
    pub steps_translated: usize,
    pub sorry_count: usize,
    pub sorry_steps: Vec<Sorry>,
    pub entries_checked: usize,
    pub reduction_steps: u64,
    pub failed_entry: Option<String>,
    pub error: Option<String>,
    pub notes: Vec<String>,
    pub timings: Timings,
    pub exit_status: i32,
}

impl RunReport {
    /// Line-oriented `key=value` rendering.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let ids: Vec<String> = self.sorry_steps.iter().map(|s| s.step.to_string()).collect();
        let _ = writeln!(out, "command={}", self.command);
        let _ = writeln!(out, "steps_translated={}", self.steps_translated);
        let _ = writeln!(out, "sorry_count={}", self.sorry_count);
        let _ = writeln!(out, "sorry_steps={}", ids.join(","));
        let _ = writeln!(out, "entries_checked={}", self.entries_checked);
        let _ = writeln!(out, "reduction_steps={}", self.reduction_steps);
        if let Some(e) = &self.failed_entry {
            let _ = writeln!(out, "failed_entry={e}");
        }
        let _ = writeln!(out, "parse_ms={:.3}", self.timings.parse_ms);
        let _ = writeln!(out, "translate_ms={:.3}", self.timings.translate_ms);
        let _ = writeln!(out, "check_ms={:.3}", self.timings.check_ms);
        let _ = writeln!(out, "exit_status={}", self.exit_status);
        out
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1000.0
}

/// Outcome of a command: the report plus diagnostics for stderr.
pub struct Outcome {
    pub report: RunReport,
    pub warnings: Vec<String>,
    pub error: Option<String>,
}

fn fail(mut report: RunReport, status: i32, msg: String, warnings: Vec<String>) -> Outcome {
    report.exit_status = status;
    report.error = Some(msg.clone());
    Outcome { report, warnings, error: Some(msg) }
}

/// Sorry steps of a script, from its `sorry:` notes.
fn script_sorries(doc: &Document) -> Vec<Sorry> {
    doc.items()
        .filter_map(|i| match i {
            Item::Note(text) => {
                let mut w = text.strip_prefix("sorry: step ")?.split_whitespace();
                let step = w.next()?.parse().ok()?;
                let rule = w.nth(1)?.to_string();
                Some(Sorry { step, rule })
            }
            _ => None,
        })
        .collect()
}

fn check_into(doc: &Document, common: &Common, report: &mut RunReport) -> Result<(), (i32, String)> {
    let t = Instant::now();
    let (_, check) = crate::check_document(doc, CheckOptions { budget: common.budget, keep_going: false });
    report.timings.check_ms = ms(t);
    report.entries_checked = check.entries.len();
    report.reduction_steps = check.steps;
    match check.first_error() {
        None => Ok(()),
        Some((label, err)) => {
            report.failed_entry = Some(label.to_string());
            let status = if matches!(err, KernelError::Budget(_)) { EXIT_BUDGET } else { EXIT_CHECK };
            Err((status, format!("{label}: {err}")))
        }
    }
}

fn sorry_warnings(sorries: &[Sorry]) -> Vec<String> {
    sorries.iter().map(|s| format!("sorry: step {} rule {}", s.step, s.rule)).collect()
}

fn finish(mut report: RunReport, common: &Common, mut warnings: Vec<String>) -> Outcome {
    warnings.extend(report.notes.iter().cloned());
    if report.sorry_count > 0 && !common.allow_sorry {
        let msg = format!("{} step(s) proved by sorry; pass --allow-sorry to accept", report.sorry_count);
        return fail(report, EXIT_SORRY, msg, warnings);
    }
    report.exit_status = EXIT_OK;
    Outcome { report, warnings, error: None }
}

/// Translates `input`, optionally checking the result.
fn run_translate(input: &Path, common: &Common, check: bool, write: Option<&Path>, command: &str) -> Outcome {
    let mut report = RunReport { command: command.to_string(), ..Default::default() };
    let t = Instant::now();
    let src = match std::fs::read_to_string(input) {
        Ok(s) => s,
        Err(e) => return fail(report, EXIT_PARSE, format!("{}: {e}", input.display()), Vec::new()),
    };
    let trace = match parse_trace(&src) {
        Ok(t) => t,
        Err(e) => return fail(report, EXIT_PARSE, format!("{}: {e}", input.display()), Vec::new()),
    };
    report.timings.parse_ms = ms(t);
    let t = Instant::now();
    let translation = match translate(&trace, TranslateOptions { banner: !common.no_prelude_banner }) {
        Ok(tr) => tr,
        Err(e) => return fail(report, EXIT_INTERNAL, e.to_string(), Vec::new()),
    };
    report.timings.translate_ms = ms(t);
    report.steps_translated = translation.report.steps;
    report.sorry_count = translation.report.sorries.len();
    report.sorry_steps = translation.report.sorries.clone();
    report.notes = translation.report.notes.clone();
    let warnings = sorry_warnings(&report.sorry_steps);
    if let Some(path) = write {
        if let Err(e) = std::fs::write(path, print_document(&translation.document)) {
            return fail(report, EXIT_INTERNAL, format!("{}: {e}", path.display()), warnings);
        }
    }
    if check {
        if let Err((status, msg)) = check_into(&translation.document, common, &mut report) {
            return fail(report, status, msg, warnings);
        }
    }
    finish(report, common, warnings)
}

fn run_check(script: &Path, common: &Common) -> Outcome {
    let mut report = RunReport { command: "check".into(), ..Default::default() };
    let t = Instant::now();
    let src = match std::fs::read_to_string(script) {
        Ok(s) => s,
        Err(e) => return fail(report, EXIT_PARSE, format!("{}: {e}", script.display()), Vec::new()),
    };
    let doc = match parse_document(&src) {
        Ok(d) => d,
        Err(e) => return fail(report, EXIT_PARSE, format!("{}: {e}", script.display()), Vec::new()),
    };
    report.timings.parse_ms = ms(t);
    report.sorry_steps = script_sorries(&doc);
    report.sorry_count = report.sorry_steps.len();
    let warnings = sorry_warnings(&report.sorry_steps);
    if let Err((status, msg)) = check_into(&doc, common, &mut report) {
        return fail(report, status, msg, warnings);
    }
    finish(report, common, warnings)
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Translate { input, output, common } => {
            let out = output.clone().unwrap_or_else(|| input.with_extension("dk"));
            run_translate(input, common, false, Some(&out), "translate")
        }
        Command::Check { script, common } => run_check(script, common),
        Command::E2e { input, emit, common } => run_translate(input, common, true, emit.as_deref(), "e2e"),
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    let outcome = execute(&cli);
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(e) = &outcome.error {
        eprintln!("error: {e}");
    }
    print!("{}", outcome.report.to_kv());
    let common = match &cli.command {
        Command::Translate { common, .. } | Command::Check { common, .. } | Command::E2e { common, .. } => common,
    };
    if let Some(path) = &common.report_json {
        let json = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
        if let Err(e) = std::fs::write(path, json + "\n") {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_INTERNAL;
        }
    }
    outcome.report.exit_status
}
