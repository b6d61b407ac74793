use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mesoq_cli::config::RunConfig;
use mesoq_cli::error::CliError;
use mesoq_cli::experiments::EXPERIMENTS;
use mesoq_cli::run::{policy_for, run, with_threads, RunOptions};
use mesoq_cli::verify::{verify, SUITES};

#[derive(Parser)]
#[command(name = "mesoq", version, about = "Figure data and oracle checks for nonclassical microwave drives")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one experiment config, writing CSV tables and manifest.json.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory (beats MESOQ_OUT and the config).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest truncation dimension tried.
        #[arg(long)]
        dim_cap: Option<usize>,
        /// Worker threads; output does not depend on it.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run an oracle suite and print a JSON report.
    Verify {
        suite: String,
        #[arg(long)]
        dim_cap: Option<usize>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// List experiment ids.
    ListExperiments,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mesoq: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Run { config, out, dim_cap, threads } => {
            let cfg = RunConfig::from_file(&config)?;
            let (dir, _) = run(&cfg, &RunOptions { out, dim_cap, threads })?;
            println!("{}", dir.display());
            Ok(())
        }
        Cmd::Verify { suite, dim_cap, threads } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(CliError::Config(format!("unknown suite '{suite}'; expected one of {}", SUITES.join(", "))));
            }
            let cfg = RunConfig { experiment: suite.clone(), params: Default::default(), truncation: None, output_dir: None };
            let policy = policy_for(&cfg, dim_cap)?;
            let report = with_threads(threads, || verify(&suite, &policy))??;
            println!("{}", serde_json::to_string_pretty(&report).map_err(|e| CliError::Failed(e.to_string()))?);
            if report.pass {
                Ok(())
            } else {
                let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
                Err(CliError::Failed(failed.join(", ")))
            }
        }
        Cmd::ListExperiments => {
            for (id, about) in EXPERIMENTS {
                println!("{id:<8} {about}");
            }
            Ok(())
        }
    }
}
