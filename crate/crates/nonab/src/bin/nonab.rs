use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nonab::report::Report;
use nonab::scenario::{exit_code_for, Scenario};
use nonab::suites::{run_suite, SuiteConfig, SUITE_NAMES};
use nonab::{Error, Limits};

#[derive(Parser)]
#[command(
    name = "nonab",
    version,
    about = "Checks for group cohomology, extensions and induction on small finite groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the tasks of a scenario file against their expectations.
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Run a built-in verification suite over a grid of small groups.
    Verify {
        /// One of: shapiro1, shapiro2-holt, prop-ext, sections-transport, anabelian.
        suite: String,
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Args)]
struct Flags {
    /// Worker count; defaults to NAB_JOBS or the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
    /// Largest ambient group order admitted into suite grids.
    #[arg(long, default_value_t = 12)]
    max_group_order: usize,
    /// Largest subgroup index admitted into suite grids.
    #[arg(long, default_value_t = 4)]
    max_index: usize,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Also write the machine-format report to this path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cross-check induced extensions against the enumerative search.
    #[arg(long)]
    fallback_search: bool,
}

fn default_jobs() -> usize {
    if let Ok(v) = std::env::var("NAB_JOBS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                return n;
            }
        }
    }
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn emit(report: &Report, flags: &Flags) -> std::io::Result<()> {
    match flags.format {
        Format::Human => print!("{}", report.render_human()),
        Format::Machine => print!("{}", report.render_machine()),
    }
    if let Some(path) = &flags.out {
        std::fs::write(path, report.render_machine())?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.cmd {
        Cmd::Run { scenario, flags: _ } => {
            let limits = Limits::default();
            let text = std::fs::read_to_string(scenario)
                .map_err(|e| Error::Parse(format!("{}: {e}", scenario.display())))?;
            let sc = Scenario::parse(&text, &limits)?;
            let name = sc.name.clone();
            let rep = sc.run(&limits)?;
            Ok(Report::new(name, vec![rep]))
        }
        Cmd::Verify { suite, flags } => {
            let cfg = SuiteConfig {
                jobs: flags.jobs.unwrap_or_else(default_jobs),
                max_group_order: flags.max_group_order,
                max_index: flags.max_index,
                fallback_search: flags.fallback_search,
                limits: Limits::default(),
            };
            if !SUITE_NAMES.contains(&suite.as_str()) {
                return Err(Error::Parse(format!(
                    "unknown suite {suite:?}; available: {}",
                    SUITE_NAMES.join(", ")
                )));
            }
            run_suite(suite, &cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let flags = match &cli.cmd {
                Cmd::Run { flags, .. } | Cmd::Verify { flags, .. } => flags,
            };
            if let Err(e) = emit(&report, flags) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e) as u8)
        }
    }
}
