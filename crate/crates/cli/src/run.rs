//! Running a config: compute, then write CSVs and the manifest in order.

use std::path::{Path, PathBuf};

use mesoq::fockbench::TruncationPolicy;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::experiments::run_experiment;
use crate::output::{FileEntry, Manifest, PolicyEcho};

/// Environment variable overriding the output directory of a config.
pub const OUT_ENV: &str = "MESOQ_OUT";

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// `--out`; beats `MESOQ_OUT` and the config.
    pub out: Option<PathBuf>,
    /// `--dim-cap`; beats the config.
    pub dim_cap: Option<usize>,
    /// Worker threads; results do not depend on it.
    pub threads: Option<usize>,
}

pub fn policy_for(cfg: &RunConfig, dim_cap: Option<usize>) -> Result<TruncationPolicy, CliError> {
    let mut p = TruncationPolicy::default();
    if let Some(t) = &cfg.truncation {
        if let Some(d) = t.initial_dim {
            p.initial_dim = Some(d);
        }
        if let Some(tol) = t.tolerance {
            p.tolerance = tol;
        }
        if let Some(c) = t.cap {
            p.cap = c;
        }
    }
    if let Some(c) = dim_cap {
        p.cap = c;
    }
    if !(p.tolerance > 0.0 && p.tolerance.is_finite()) {
        return Err(CliError::Config(format!("truncation tolerance must be positive, got {}", p.tolerance)));
    }
    if p.cap < 2 || p.initial_dim.is_some_and(|d| d < 2) {
        return Err(CliError::Config("truncation dimensions must be at least 2".into()));
    }
    Ok(p)
}

pub fn output_dir(cfg: &RunConfig, out: Option<&Path>) -> PathBuf {
    if let Some(o) = out {
        return o.to_path_buf();
    }
    if let Some(o) = std::env::var_os(OUT_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(o);
    }
    match &cfg.output_dir {
        Some(d) => PathBuf::from(d),
        None => Path::new("out").join(&cfg.experiment),
    }
}

/// Runs `f` on a pool of `threads` workers, or the global pool.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, CliError> {
    match threads {
        Some(0) => Err(CliError::Config("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| CliError::Config(e.to_string()))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

/// Runs one config and writes `<table>.csv` files plus `manifest.json`.
pub fn run(cfg: &RunConfig, opts: &RunOptions) -> Result<(PathBuf, Manifest), CliError> {
    let policy = policy_for(cfg, opts.dim_cap)?;
    let outcome = with_threads(opts.threads, || run_experiment(cfg, &policy))??;
    let dir = output_dir(cfg, opts.out.as_deref());
    std::fs::create_dir_all(&dir)?;

    let mut outputs = Vec::new();
    for t in &outcome.tables {
        let file = format!("{}.csv", t.name);
        std::fs::write(dir.join(&file), t.to_csv())?;
        outputs.push(FileEntry { file, rows: t.rows.len(), columns: t.columns.clone(), singular_points: t.singular_count() });
    }
    let manifest = Manifest {
        experiment: cfg.experiment.clone(),
        library_version: mesoq::VERSION.to_string(),
        config: cfg.clone(),
        truncation_policy: PolicyEcho { initial_dim: policy.initial_dim, growth: policy.growth, tolerance: policy.tolerance, cap: policy.cap },
        outputs,
        convergence: outcome.convergence.clone(),
        summary: outcome.summary.clone(),
    };
    let mut text = serde_json::to_string_pretty(&manifest).map_err(|e| CliError::Failed(e.to_string()))?;
    text.push('\n');
    std::fs::write(dir.join("manifest.json"), text)?;

    if let Some(t) = outcome.tables.iter().find(|t| t.all_singular()) {
        return Err(CliError::SingularOnly(format!("every value in {} is singular", t.name)));
    }
    Ok((dir, manifest))
}
