//! `nhband` — configuration-driven front end for the nhband library.
//!
//! A run is described by a flat `key = value` config file; the subcommand
//! picks the task. Artifacts are CSV/JSON files plus a manifest with
//! checksums. Exit codes: 0 success, 1 config or I/O problems, 2
//! numerical-domain failures (gapless winding, exceeded dilation window,
//! and friends).

mod config;
mod manifest;
mod tasks;

use clap::{Parser, Subcommand};
use config::{ConfigMap, ModelSpec};
use manifest::OutputWriter;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use tasks::TaskPlan;

/// Either a numerical failure from the library or an I/O failure while
/// emitting artifacts; they map to different exit codes.
#[derive(Debug)]
pub enum TaskFailure {
    Numerical(nhband::Error),
    Io(std::io::Error),
}

impl From<nhband::Error> for TaskFailure {
    fn from(e: nhband::Error) -> Self {
        TaskFailure::Numerical(e)
    }
}

impl From<std::io::Error> for TaskFailure {
    fn from(e: std::io::Error) -> Self {
        TaskFailure::Io(e)
    }
}

#[derive(Parser)]
#[command(name = "nhband", version, about = "Band topology and quench dynamics of 1D chiral non-Hermitian lattice models")]
struct Cli {
    /// Run configuration file (flat `section.key = value` lines)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for CSV/JSON artifacts
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// Worker threads (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    /// Seed for randomized drivers; recorded in the manifest, unused by the
    /// deterministic tasks
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    task: Task,
}

#[derive(Subcommand, Clone, Copy)]
enum Task {
    /// Complex band structure E(k) over the Brillouin zone
    Spectrum,
    /// Winding number over a 2D parameter grid
    PhaseDiagram,
    /// Rate function g(t) with predicted critical times and detected cusps
    Quench,
    /// Geometric-phase winding (dynamical topological order parameter) series
    Dtop,
    /// Hermitian dilation vs direct non-Hermitian evolution
    DilationCheck,
    /// Winding / critical-structure correspondence report
    Report,
}

impl Task {
    fn name(self) -> &'static str {
        match self {
            Task::Spectrum => "spectrum",
            Task::PhaseDiagram => "phase-diagram",
            Task::Quench => "quench",
            Task::Dtop => "dtop",
            Task::DilationCheck => "dilation-check",
            Task::Report => "report",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let task_name = cli.task.name();

    let Some(config_path) = cli.config.as_ref() else {
        eprintln!("config error: --config <path> is required");
        return ExitCode::from(1);
    };
    let text = match std::fs::read_to_string(config_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("config error: cannot read {}: {e}", config_path.display());
            return ExitCode::from(1);
        }
    };

    let mut cfg = ConfigMap::parse(&text);
    // the config may restate the task; if it does, it has to agree
    if cfg.has("task") {
        let stated = cfg.take_str("task", task_name);
        if stated != task_name {
            cfg.error(
                "task",
                format!("config says task `{stated}` but the `{task_name}` subcommand was invoked"),
            );
        }
    }
    let spec = ModelSpec::from_config(&mut cfg);
    let plan = spec
        .as_ref()
        .and_then(|s| TaskPlan::from_config(task_name, &mut cfg, s));
    let echo = cfg.echo();
    let errors = cfg.finish();
    if !errors.is_empty() {
        for e in &errors {
            eprintln!("config error: {e}");
        }
        return ExitCode::from(1);
    }
    let (spec, plan) = (spec.expect("no errors"), plan.expect("no errors"));

    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if cli.workers > 0 {
            builder = builder.num_threads(cli.workers);
        }
        match builder.build() {
            Ok(p) => p,
            Err(e) => {
                eprintln!("config error: cannot build worker pool: {e}");
                return ExitCode::from(1);
            }
        }
    };

    let mut out = match OutputWriter::new(&cli.out) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("i/o error: cannot create {}: {e}", cli.out.display());
            return ExitCode::from(1);
        }
    };

    let started = Instant::now();
    let result = pool.install(|| plan.execute(&spec, &mut out));
    match result {
        Ok(()) => {}
        Err(TaskFailure::Numerical(e)) => {
            eprintln!("numerical error: {e}");
            return ExitCode::from(2);
        }
        Err(TaskFailure::Io(e)) => {
            eprintln!("i/o error: {e}");
            return ExitCode::from(1);
        }
    }

    let mut echo = echo;
    if let Some(seed) = cli.seed {
        echo.insert("cli.seed".into(), seed.to_string());
    }
    if let Err(e) = out.finish(task_name, echo, started.elapsed().as_secs_f64()) {
        eprintln!("i/o error: cannot write manifest: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
