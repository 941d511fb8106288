//! Command-line front end.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use polybgk_core::diagnostics::{check_lemma_suite, theta_zero_reduction, DiagnosticsReport};
use polybgk_core::init::init_distribution_checked;
use polybgk_core::params::{lambda_delta, lemma_constants};
use polybgk_core::random_field::{random_bumps, BumpConfig};
use polybgk_core::solver::{picard_iterate, run_simulation_with, Mode, RunSummary};
use polybgk_core::{build_grid, CellExecutor, Distribution, PhaseSpaceGrid};

use crate::config::{parse_config, InitSource, RunConfig};
use crate::exec::Pool;
use crate::fieldio::read_field;
use crate::output::write_csv;

/// Bounds accepted by `reduce-theta0`.
pub const FACTORIZATION_TOLERANCE: f64 = 1e-12;
pub const REDUCTION_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "polybgk", version, about = "Polyatomic ellipsoidal BGK solver and checks")]
struct Cli {
    /// Worker threads (overrides the config file).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Random seed (overrides the config file).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (overrides the config file).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evolve the configured initial state and write the CSV time series.
    Run { config: PathBuf },
    /// Evaluate the moment and norm inequalities on random fields.
    Check { config: PathBuf },
    /// Print the model constants.
    Constants { config: PathBuf },
    /// Successive approximations on the homogeneous problem.
    Picard { config: PathBuf },
    /// Compare the theta = 0 model with the monatomic one.
    #[command(name = "reduce-theta0")]
    ReduceTheta0 { config: PathBuf },
}

type Failure = Box<dyn std::error::Error>;

/// Parses `args` (program name first) and runs the subcommand. Returns the
/// process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<bool, Failure> {
    let (Command::Run { config }
    | Command::Check { config }
    | Command::Constants { config }
    | Command::Picard { config }
    | Command::ReduceTheta0 { config }) = &cli.command;
    let mut cfg = load_config(config)?;
    if let Some(t) = cli.threads {
        cfg.threads = t;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(p) = &cli.out {
        cfg.output_path = Some(p.clone());
    }
    if cfg.threads == 0 {
        return Err("threads must be at least 1".into());
    }
    let base = config.parent().unwrap_or(Path::new("."));
    match &cli.command {
        Command::Run { .. } => run(&cfg, base, out),
        Command::Check { .. } => check(&cfg, out),
        Command::Constants { .. } => constants(&cfg, out),
        Command::Picard { .. } => picard(&cfg, base, out),
        Command::ReduceTheta0 { .. } => reduce(&cfg, base, out),
    }
}

fn load_config(path: &Path) -> Result<RunConfig, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(parse_config(&text)?)
}

fn initial_state(cfg: &RunConfig, grid: &PhaseSpaceGrid, base: &Path) -> Result<Distribution, Failure> {
    match &cfg.init {
        InitSource::Preset(spec) => Ok(init_distribution_checked(spec, grid, cfg.tail_fraction)?),
        InitSource::File(path) => {
            let path = if path.is_relative() { base.join(path) } else { path.clone() };
            let file = File::open(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok(read_field(BufReader::new(file), grid)?)
        }
    }
}

fn open_output<'a>(cfg: &RunConfig, out: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>, Failure> {
    Ok(match &cfg.output_path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| format!("{}: {e}", p.display()))?)),
        None => Box::new(out),
    })
}

fn run(cfg: &RunConfig, base: &Path, out: &mut dyn Write) -> Result<bool, Failure> {
    if cfg.solver.mode == Mode::Picard {
        return picard(cfg, base, out);
    }
    let grid = build_grid(&cfg.grid, cfg.params.delta())?;
    let f0 = initial_state(cfg, &grid, base)?;
    let pool = Pool::new(cfg.threads)?;
    log::info!("running {} steps on {} threads", cfg.solver.steps(), pool.threads());
    let result = run_simulation_with(&pool, &cfg.solver, &grid, &cfg.params, &f0)?;
    {
        let sink = open_output(cfg, out)?;
        write_csv(sink, &result.records)?;
    }
    report_summary(&result.summary);
    Ok(result.summary.assertions_passed())
}

fn report_summary(s: &RunSummary) {
    log::info!(
        "steps {} min rho {:.6e} min T {:.6e} min f {:.6e} clipped {:.3e} drift {:?}",
        s.steps,
        s.min_rho,
        s.min_t_total,
        s.min_value,
        s.clipped_mass,
        s.max_invariant_drift
    );
    if !s.assertions_passed() {
        log::warn!(
            "run assertions failed: min f {:e}, envelope {:?} (worst ratio {:e}), density bound {}, H check {:?}",
            s.min_value,
            s.envelope_ok,
            s.worst_envelope_ratio,
            s.density_bound_ok,
            s.entropy_check
        );
    }
}

fn check(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, Failure> {
    let grid = build_grid(&cfg.grid, cfg.params.delta())?;
    let pool = Pool::new(cfg.threads)?;
    let bumps = BumpConfig::default();
    let reports = pool.map_cells(cfg.check_samples, |k| {
        let f = random_bumps(&grid, cfg.seed, k as u64, &bumps);
        check_lemma_suite(&f, &cfg.params, &grid)
    });
    let mut total: Option<DiagnosticsReport> = None;
    for r in reports {
        let r = r?;
        match &mut total {
            Some(t) => t.merge(r),
            None => total = Some(r),
        }
    }
    let Some(report) = total else {
        writeln!(out, "no samples drawn")?;
        return Ok(true);
    };
    writeln!(out, "samples: {}", cfg.check_samples)?;
    write!(out, "{}", report.to_text())?;
    if let Some(p) = &cfg.output_path {
        std::fs::write(p, report.to_csv()).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    Ok(report.passed())
}

fn constants(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, Failure> {
    let p = &cfg.params;
    let c = lemma_constants(p)?;
    let rows = [
        ("nu", p.nu()),
        ("theta", p.theta()),
        ("delta", p.delta()),
        ("q", p.q()),
        ("A", p.a()),
        ("Lambda_delta", lambda_delta(p.delta())),
        ("C_nu", c.c_nu),
        ("C_density", c.c_density),
        ("C_tail", c.c_tail),
        ("C_momentum", c.c_momentum),
        ("C_gaussian", c.c_gaussian),
        ("C_growth", c.c_growth),
    ];
    for (k, v) in rows {
        writeln!(out, "{k}={v:.14e}")?;
    }
    Ok(true)
}

fn picard(cfg: &RunConfig, base: &Path, out: &mut dyn Write) -> Result<bool, Failure> {
    let grid = build_grid(&cfg.grid, cfg.params.delta())?;
    let f0 = initial_state(cfg, &grid, base)?;
    let r = picard_iterate(&f0, cfg.picard_time, &cfg.params, &grid, cfg.solver.picard_iterations, cfg.solver.picard_time_nodes)?;
    let ratios = r.ratios();
    writeln!(out, "t={:.14e}", r.t)?;
    writeln!(out, "initial_norm={:.14e}", r.initial_norm)?;
    writeln!(out, "envelope_constant={:.14e}", r.envelope_constant)?;
    writeln!(out, "k,d_k,ratio,iterate_norm")?;
    for (k, d) in r.differences.iter().enumerate() {
        let ratio = if k == 0 { f64::NAN } else { ratios[k - 1] };
        writeln!(out, "{k},{d:.14e},{ratio:.14e},{:.14e}", r.iterate_norms[k])?;
    }
    Ok(true)
}

fn reduce(cfg: &RunConfig, base: &Path, out: &mut dyn Write) -> Result<bool, Failure> {
    let grid = build_grid(&cfg.grid, cfg.params.delta())?;
    let f0 = initial_state(cfg, &grid, base)?;
    let r = theta_zero_reduction(&f0, cfg.solver.dt, &cfg.params, &grid)?;
    writeln!(out, "factorization_residual={:.14e}", r.factorization_residual)?;
    writeln!(out, "step_difference={:.14e}", r.step_difference)?;
    Ok(r.factorization_residual <= FACTORIZATION_TOLERANCE && r.step_difference <= REDUCTION_TOLERANCE)
}
