//! Argument parsing, the optional key=value config file and validation.

use std::path::{Path, PathBuf};

use bvd_core::experiments::{Figure, Profile};
use bvd_core::{Scheme, SchemeConfig, ThincParams, TimeConfig};
use clap::{Args, Parser, Subcommand};

use crate::CliError;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "BVD_OUT_DIR";
pub const DEFAULT_OUT_DIR: &str = "out";
pub const DEFAULT_N_CELLS: usize = 200;
pub const MIN_N_CELLS: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "bvd", version, about = "Linear advection with WENO-Z and BVD hybrid reconstructions")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Advect one profile with one scheme.
    Run(Flags),
    /// Re-run one of the six complex-wave configurations (1 = WENO-Z .. 6 = BVD(IV), β = 4).
    Reproduce {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=6))]
        figure: u32,
        #[command(flatten)]
        flags: Flags,
    },
    /// L1 errors and observed orders on N = 25, 50, 100, 200, 400.
    Convergence(Flags),
    /// All six complex-wave configurations, run in parallel.
    Sweep(Flags),
}

#[derive(Debug, Default, Args)]
struct Flags {
    /// wenoz, bvd1, bvd2, bvd3 or bvd4.
    #[arg(long)]
    scheme: Option<String>,
    /// Number of cells.
    #[arg(long = "n")]
    n_cells: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    cfl: Option<f64>,
    /// THINC steepness.
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// BVD(III) smoothness cutoff.
    #[arg(long = "s-cutoff", allow_negative_numbers = true)]
    s_cutoff: Option<f64>,
    /// THINC admissibility margin.
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    /// Advection time in periods of the domain.
    #[arg(long, allow_negative_numbers = true)]
    periods: Option<f64>,
    /// complex_waves, square, sine, gaussian or constant.
    #[arg(long)]
    profile: Option<String>,
    /// Output directory.
    #[arg(long = "out")]
    out_dir: Option<PathBuf>,
    /// Recorded in the summary; the runs themselves are deterministic.
    #[arg(long)]
    seed: Option<u64>,
    /// key=value file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also write a gnuplot script next to each CSV.
    #[arg(long)]
    plot: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Run,
    Reproduce(Figure),
    Convergence,
    Sweep,
}

/// Fully resolved and validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub command: Command,
    pub scheme: Scheme,
    pub n_cells: usize,
    pub cfl: f64,
    pub beta: f64,
    pub s_cutoff: f64,
    pub delta: f64,
    pub periods: f64,
    pub profile: Profile,
    pub out_dir: PathBuf,
    pub seed: u64,
    pub plot: bool,
}

impl CliConfig {
    pub fn defaults(command: Command) -> Self {
        Self {
            command,
            scheme: Scheme::WenoZ,
            n_cells: DEFAULT_N_CELLS,
            cfl: TimeConfig::DEFAULT_CFL,
            beta: ThincParams::DEFAULT_BETA,
            s_cutoff: bvd_core::bvd::BVD3_S_CUTOFF,
            delta: SchemeConfig::DEFAULT_DELTA,
            periods: 1.0,
            profile: match command {
                Command::Convergence => Profile::Sine,
                _ => Profile::ComplexWaves,
            },
            out_dir: PathBuf::from(DEFAULT_OUT_DIR),
            seed: 0,
            plot: false,
        }
    }

    pub fn scheme_config(&self) -> SchemeConfig {
        SchemeConfig::new(self.scheme)
            .with_beta(self.beta)
            .with_delta(self.delta)
            .with_s_cutoff(self.s_cutoff)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(CliError::Usage(format!("--cfl must be in (0, 1], got {}", self.cfl)));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(CliError::Usage(format!("--beta must be positive, got {}", self.beta)));
        }
        if self.n_cells < MIN_N_CELLS {
            return Err(CliError::Usage(format!(
                "--n must be at least {MIN_N_CELLS}, got {}",
                self.n_cells
            )));
        }
        if !(self.periods > 0.0 && self.periods.is_finite()) {
            return Err(CliError::Usage(format!(
                "--periods must be positive, got {}",
                self.periods
            )));
        }
        self.scheme_config()
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "scheme" => self.scheme = parse_scheme(value)?,
            "n" | "n_cells" => self.n_cells = parse_num(key, value)?,
            "cfl" => self.cfl = parse_num(key, value)?,
            "beta" => self.beta = parse_num(key, value)?,
            "s-cutoff" | "s_cutoff" => self.s_cutoff = parse_num(key, value)?,
            "delta" => self.delta = parse_num(key, value)?,
            "periods" => self.periods = parse_num(key, value)?,
            "profile" => self.profile = parse_profile(value)?,
            "out" | "out_dir" => self.out_dir = PathBuf::from(value),
            "seed" => self.seed = parse_num(key, value)?,
            "plot" => self.plot = parse_num(key, value)?,
            _ => return Err(CliError::Usage(format!("unknown setting `{key}`"))),
        }
        Ok(())
    }

    fn apply_flags(&mut self, flags: Flags) -> Result<(), CliError> {
        if let Some(s) = flags.scheme {
            self.scheme = parse_scheme(&s)?;
        }
        if let Some(p) = flags.profile {
            self.profile = parse_profile(&p)?;
        }
        self.n_cells = flags.n_cells.unwrap_or(self.n_cells);
        self.cfl = flags.cfl.unwrap_or(self.cfl);
        self.beta = flags.beta.unwrap_or(self.beta);
        self.s_cutoff = flags.s_cutoff.unwrap_or(self.s_cutoff);
        self.delta = flags.delta.unwrap_or(self.delta);
        self.periods = flags.periods.unwrap_or(self.periods);
        self.seed = flags.seed.unwrap_or(self.seed);
        self.plot |= flags.plot;
        if let Some(dir) = flags.out_dir {
            self.out_dir = dir;
        }
        Ok(())
    }
}

fn parse_scheme(s: &str) -> Result<Scheme, CliError> {
    s.parse().map_err(|e: bvd_core::Error| CliError::Usage(e.to_string()))
}

fn parse_profile(s: &str) -> Result<Profile, CliError> {
    s.parse().map_err(|e: bvd_core::Error| CliError::Usage(e.to_string()))
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid value `{value}` for `{key}`")))
}

/// Apply a `key = value` file; blank lines and `#` comments are ignored.
fn apply_config_file(cfg: &mut CliConfig, path: &Path) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!(
                "{}:{}: expected key = value",
                path.display(),
                lineno + 1
            )));
        };
        cfg.apply(key.trim(), value.trim())?;
    }
    Ok(())
}

/// Parse `argv` (without the program name).
///
/// Precedence is command-line flags, then the `--config` file, then
/// `BVD_OUT_DIR` for the output directory, then built-in defaults.
pub fn parse_args<I, T>(argv: I) -> Result<CliConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once(std::ffi::OsString::from("bvd")).chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(args)?;
    let (command, flags) = match cli.command {
        Sub::Run(f) => (Command::Run, f),
        Sub::Reproduce { figure, flags } => {
            let fig = Figure::from_number(figure)
                .ok_or_else(|| CliError::Usage(format!("no figure {figure}")))?;
            (Command::Reproduce(fig), flags)
        }
        Sub::Convergence(f) => (Command::Convergence, f),
        Sub::Sweep(f) => (Command::Sweep, f),
    };

    let mut cfg = CliConfig::defaults(command);
    if let Some(dir) = std::env::var_os(OUT_DIR_ENV).filter(|d| !d.is_empty()) {
        cfg.out_dir = PathBuf::from(dir);
    }
    if let Some(path) = &flags.config {
        apply_config_file(&mut cfg, path)?;
    }
    cfg.apply_flags(flags)?;
    if let Command::Reproduce(fig) = command {
        let sc = fig.scheme();
        cfg.scheme = sc.scheme;
        cfg.beta = sc.thinc.beta;
        cfg.profile = Profile::ComplexWaves;
    }
    cfg.validate()?;
    Ok(cfg)
}
