//! Command-line front end for the advection experiments.
//!
//! [`parse_args`] resolves a [`CliConfig`]; [`execute`] runs it, writes one
//! CSV per run into the output directory and prints a summary table.

mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use bvd_core::experiments::{convergence_study, Benchmark, ConvergenceRow, Figure, CONVERGENCE_GRIDS};
use bvd_core::RunResult;

pub use config::{parse_args, CliConfig, Command, OUT_DIR_ENV};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Help and version requests also land here, with exit status 0.
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("{0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) if e.exit_code() == 0 => 0,
            CliError::Clap(_) => 1,
            CliError::Usage(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<bvd_core::Error> for CliError {
    fn from(e: bvd_core::Error) -> Self {
        use bvd_core::Error as E;
        match e {
            E::NonFinite { .. } => CliError::Numerical(e.to_string()),
            E::Io(_) | E::Csv(_) => CliError::Io(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Files written by one command.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Outputs {
    pub files: Vec<PathBuf>,
}

/// Run the configured command, printing tables to `out`.
pub fn execute<W: Write>(cfg: &CliConfig, out: &mut W) -> Result<Outputs, CliError> {
    std::fs::create_dir_all(&cfg.out_dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", cfg.out_dir.display())))?;
    let mut outputs = Outputs::default();
    match cfg.command {
        Command::Run => {
            let bench = benchmark(cfg);
            let result = bench.run()?;
            let stem = format!("{}_{}_n{}", cfg.profile.name(), result.label, cfg.n_cells);
            save(cfg, &result, &stem, &mut outputs)?;
            write_summary(out, cfg, &[result])?;
        }
        Command::Reproduce(fig) => {
            let result = fig.benchmark(cfg.n_cells, cfg.periods).with_cfl(cfg.cfl).run()?;
            save(cfg, &result, &figure_stem(fig, &result, cfg), &mut outputs)?;
            write_summary(out, cfg, &[result])?;
        }
        Command::Sweep => {
            let results = sweep(cfg)?;
            for (fig, result) in Figure::ALL.into_iter().zip(&results) {
                save(cfg, result, &figure_stem(fig, result, cfg), &mut outputs)?;
            }
            write_summary(out, cfg, &results)?;
        }
        Command::Convergence => {
            let rows = run_convergence(cfg)?;
            let path = cfg.out_dir.join(format!(
                "convergence_{}_{}.csv",
                cfg.profile.name(),
                cfg.scheme
            ));
            write_convergence_csv(&path, &rows)?;
            outputs.files.push(path);
            write_convergence_table(out, cfg, &rows)?;
        }
    }
    Ok(outputs)
}

fn benchmark(cfg: &CliConfig) -> Benchmark {
    Benchmark::new(cfg.profile, cfg.n_cells, cfg.scheme_config())
        .with_periods(cfg.periods)
        .with_cfl(cfg.cfl)
}

fn figure_stem(fig: Figure, result: &RunResult, cfg: &CliConfig) -> String {
    format!("fig{}_{}_n{}", fig as u32, result.label, cfg.n_cells)
}

/// The six complex-wave configurations on one scoped thread each; results
/// come back in figure order.
pub fn sweep(cfg: &CliConfig) -> Result<Vec<RunResult>, CliError> {
    let results: Vec<bvd_core::Result<RunResult>> = std::thread::scope(|s| {
        let handles: Vec<_> = Figure::ALL
            .into_iter()
            .map(|fig| s.spawn(move || fig.benchmark(cfg.n_cells, cfg.periods).with_cfl(cfg.cfl).run()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    results.into_iter().map(|r| r.map_err(CliError::from)).collect()
}

fn save(cfg: &CliConfig, result: &RunResult, stem: &str, outputs: &mut Outputs) -> Result<(), CliError> {
    let csv_name = format!("{stem}.csv");
    let csv_path = cfg.out_dir.join(&csv_name);
    result.save_csv(&csv_path)?;
    outputs.files.push(csv_path);
    if cfg.plot {
        let gp_path = cfg.out_dir.join(format!("{stem}.gp"));
        std::fs::write(&gp_path, result.gnuplot_script(&csv_name, &format!("{stem}.png")))?;
        outputs.files.push(gp_path);
    }
    Ok(())
}

/// One-period L1 errors on the standard grids with `dt ∝ Δx^{5/3}`.
pub fn run_convergence(cfg: &CliConfig) -> Result<Vec<ConvergenceRow>, CliError> {
    Ok(convergence_study(
        cfg.profile,
        cfg.scheme_config(),
        &CONVERGENCE_GRIDS,
        cfg.cfl,
    )?)
}

fn write_convergence_csv(path: &Path, rows: &[ConvergenceRow]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Io(e.to_string()))?;
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(["n_cells", "l1_error", "order"]).map_err(io)?;
    for r in rows {
        let order = r.order.map(|o| o.to_string()).unwrap_or_default();
        w.write_record([r.n_cells.to_string(), r.l1_error.to_string(), order])
            .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_convergence_table<W: Write>(
    out: &mut W,
    cfg: &CliConfig,
    rows: &[ConvergenceRow],
) -> std::io::Result<()> {
    writeln!(out, "# {} on {}, cfl {}, seed {}", cfg.scheme, cfg.profile.name(), cfg.cfl, cfg.seed)?;
    writeln!(out, "{:>6}  {:>12}  {:>7}", "N", "L1", "order")?;
    for r in rows {
        let order = r.order.map(|o| format!("{o:.3}")).unwrap_or_else(|| "-".into());
        writeln!(out, "{:>6}  {:>12.4e}  {:>7}", r.n_cells, r.l1_error, order)?;
    }
    Ok(())
}

fn format_widths(widths: &[usize]) -> String {
    if widths.is_empty() {
        return "-".into();
    }
    widths.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("/")
}

fn format_time(d: Duration) -> String {
    format!("{:.1}ms", d.as_secs_f64() * 1e3)
}

/// Summary table: scheme, N, L1, Linf, widths, T-cell fraction, wall time.
pub fn write_summary<W: Write>(out: &mut W, cfg: &CliConfig, results: &[RunResult]) -> std::io::Result<()> {
    writeln!(
        out,
        "# {}, {} period(s), cfl {}, seed {}",
        results.first().map_or(cfg.profile, |r| r.benchmark.profile).name(),
        cfg.periods,
        cfg.cfl,
        cfg.seed
    )?;
    writeln!(
        out,
        "{:<12} {:>5} {:>11} {:>11} {:>7} {:>7} {:>10}",
        "scheme", "N", "L1", "Linf", "widths", "T-frac", "wall"
    )?;
    for r in results {
        writeln!(
            out,
            "{:<12} {:>5} {:>11.4e} {:>11.4e} {:>7} {:>7.4} {:>10}",
            r.label,
            r.final_field.len(),
            r.l1_error,
            r.linf_error,
            format_widths(&r.transition_widths),
            r.t_cell_fraction,
            format_time(r.wall_time)
        )?;
    }
    Ok(())
}
