//! Command-line front end: argument parsing, batch runs and exit codes.

pub mod catalog;
pub mod selftest;

use std::io::Write;
use std::path::PathBuf;
use std::thread;

use clap::{Parser, Subcommand, ValueEnum};
use wdefect_core::engine::{analyze, koszul_report, AnalyzeOptions, Verdict};
use wdefect_core::report::{emit_analysis, emit_koszul, emit_search, Format};
use wdefect_core::search::{desmit_search, SearchConfig};
use wdefect_core::problem::Problem;
use wdefect_core::{Error, ErrorClass};

pub const EXIT_OK: i32 = 0;
pub const EXIT_HYPOTHESES: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Text,
    Machine,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Machine => Format::Machine,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "wdefect", version, about = "Congruence modules, Wiles defects and Koszul checks over Z_(p)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: FormatArg,
    /// Worker threads for batch runs and searches.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    /// Degree cap for Buchberger's algorithm.
    #[arg(long, default_value_t = wdefect_core::groebner::DEFAULT_DEGREE_CAP, global = true)]
    pub degree_cap: u32,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Attempts for cut-chain search (analyze) or instances (desmit).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify the defect of each problem file.
    Analyze { files: Vec<PathBuf> },
    /// Koszul homology and wedge criteria for a problem file.
    Koszul { file: PathBuf },
    /// Random search over artinian rings, extensions and modules.
    Desmit {
        #[arg(long, default_value_t = 2)]
        prime: u64,
        #[arg(long, default_value_t = 2)]
        max_vars: usize,
        #[arg(long, default_value_t = 3)]
        max_power: u32,
        #[arg(long, default_value_t = 2)]
        max_rank: usize,
    },
    /// Run the built-in invariant suites.
    Selftest,
    /// List the worked examples, or run / show one.
    Catalog {
        #[arg(value_parser = ["list", "run", "show"], default_value = "list")]
        action: String,
        name: Option<String>,
    },
}

pub fn error_code(e: &Error) -> i32 {
    match e.class() {
        ErrorClass::Hypotheses => EXIT_HYPOTHESES,
        ErrorClass::Input => EXIT_INPUT,
        ErrorClass::Internal => EXIT_INTERNAL,
    }
}

/// Output of one unit of work, buffered so parallel runs never interleave.
struct Job {
    stdout: String,
    stderr: String,
    code: i32,
}

fn analyze_text(label: &str, text: &str, opts: &AnalyzeOptions, format: Format) -> Job {
    let result = Problem::parse(text).and_then(|p| analyze(&p, opts));
    match result {
        Ok(r) => {
            let code = if r.has_inconsistency() {
                EXIT_INTERNAL
            } else if r.verdict == Verdict::OutsideHypotheses {
                EXIT_HYPOTHESES
            } else {
                EXIT_OK
            };
            Job { stdout: emit_analysis(&r, format), stderr: String::new(), code }
        }
        Err(e) => Job { stdout: String::new(), stderr: format!("{label}: {e}\n"), code: error_code(&e) },
    }
}

fn read(path: &PathBuf) -> Result<String, Job> {
    std::fs::read_to_string(path).map_err(|e| Job { stdout: String::new(), stderr: format!("{}: {e}\n", path.display()), code: EXIT_INPUT })
}

fn run_parallel<T: Sync>(items: &[T], jobs: usize, f: impl Fn(&T) -> Job + Sync) -> Vec<Job> {
    let jobs = jobs.clamp(1, items.len().max(1));
    let mut slots: Vec<Option<Job>> = (0..items.len()).map(|_| None).collect();
    thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                let f = &f;
                s.spawn(move || items.iter().enumerate().skip(j).step_by(jobs).map(|(i, x)| (i, f(x))).collect::<Vec<_>>())
            })
            .collect();
        for h in handles {
            for (i, job) in h.join().expect("worker panicked") {
                slots[i] = Some(job);
            }
        }
    });
    slots.into_iter().map(|j| j.expect("every item ran")).collect()
}

fn flush(jobs: Vec<Job>, many: bool, labels: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut code = EXIT_OK;
    for (job, label) in jobs.into_iter().zip(labels) {
        if many && !job.stdout.is_empty() {
            let _ = writeln!(out, "== {label}");
        }
        let _ = out.write_all(job.stdout.as_bytes());
        let _ = err.write_all(job.stderr.as_bytes());
        code = code.max(job.code);
    }
    code
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let format: Format = cli.format.into();
    let opts = AnalyzeOptions {
        degree_cap: cli.degree_cap,
        seed: cli.seed,
        chain_budget: cli.budget.map_or(AnalyzeOptions::default().chain_budget, |b| b as usize),
    };
    match &cli.command {
        Command::Analyze { files } => {
            if files.is_empty() {
                let _ = writeln!(err, "analyze: no problem files given");
                return EXIT_INPUT;
            }
            let labels: Vec<String> = files.iter().map(|f| f.display().to_string()).collect();
            let jobs = run_parallel(files, cli.jobs, |path| match read(path) {
                Ok(text) => analyze_text(&path.display().to_string(), &text, &opts, format),
                Err(job) => job,
            });
            flush(jobs, files.len() > 1, &labels, out, err)
        }
        Command::Koszul { file } => {
            let text = match read(file) {
                Ok(t) => t,
                Err(job) => return flush(vec![job], false, &[String::new()], out, err),
            };
            match Problem::parse(&text).and_then(|p| koszul_report(&p, &opts)) {
                Ok(r) => {
                    let _ = out.write_all(emit_koszul(&r, format).as_bytes());
                    EXIT_OK
                }
                Err(e) => {
                    let _ = writeln!(err, "{}: {e}", file.display());
                    error_code(&e)
                }
            }
        }
        Command::Desmit { prime, max_vars, max_power, max_rank } => {
            let cfg = SearchConfig { p: *prime, max_vars: *max_vars, max_power: *max_power, max_rank: *max_rank, ..SearchConfig::default() };
            match desmit_search(&cfg, cli.budget.unwrap_or(1000), cli.seed, cli.jobs) {
                Ok(r) => {
                    let _ = out.write_all(emit_search(&r, format).as_bytes());
                    if r.violations.is_empty() && r.errors.is_empty() {
                        EXIT_OK
                    } else {
                        EXIT_INTERNAL
                    }
                }
                Err(e) => {
                    let _ = writeln!(err, "desmit: {e}");
                    error_code(&e)
                }
            }
        }
        Command::Selftest => selftest::run(cli.jobs, out),
        Command::Catalog { action, name } => catalog_command(action, name.as_deref(), &opts, format, cli.jobs, out, err),
    }
}

fn catalog_command(
    action: &str,
    name: Option<&str>,
    opts: &AnalyzeOptions,
    format: Format,
    jobs: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let selected: Vec<&catalog::Entry> = match name {
        Some(n) => match catalog::find(n) {
            Some(e) => vec![e],
            None => {
                let _ = writeln!(err, "catalog: no entry named `{n}`");
                return EXIT_INPUT;
            }
        },
        None => catalog::ENTRIES.iter().collect(),
    };
    match action {
        "list" => {
            for e in &selected {
                let _ = writeln!(out, "{:<15} codim {}  {}", e.name, e.codimension, e.summary);
            }
            EXIT_OK
        }
        "show" => {
            for e in &selected {
                let _ = out.write_all(e.text.as_bytes());
            }
            EXIT_OK
        }
        _ => {
            let labels: Vec<String> = selected.iter().map(|e| e.name.to_string()).collect();
            let results = run_parallel(&selected, jobs, |e| analyze_text(e.name, e.text, opts, format));
            flush(results, selected.len() > 1, &labels, out, err)
        }
    }
}
