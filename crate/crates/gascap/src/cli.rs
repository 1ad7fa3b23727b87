//! Argument parsing and dispatch. [`run`] is the whole program minus the
//! process boundary, so tests can drive it in-process.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands;
use crate::config::{species_from_parts, trap_from_parts, ConfigFile, Normalize, SpeciesChoice, TrapChoice};
use crate::error::{CliError, Result};
use crate::RunConfig;

/// Channel capacities of ideal quantum gases in traps, as CSV data.
#[derive(Debug, Parser)]
#[command(name = "gascap", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Capacity, energy, chemical potential and ground fraction over a grid.
    Capacity(RunArgs),
    /// dC/dT at interior grid nodes.
    Derivative(RunArgs),
    /// Energy and dE/dT.
    Energy(RunArgs),
    /// Exact versus series capacities at high temperature.
    SeriesCheck(SeriesArgs),
    /// Condensation and Fermi temperatures in natural units.
    ReferenceTemps(TrapArgs),
    /// Grouped spectrum as `energy,degeneracy`.
    Levels(TrapArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// TOML file with the same keys as the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    trap: Option<TrapChoice>,
    #[arg(long)]
    dim: Option<usize>,
    /// Integer frequency ratios, comma separated (harmonic only).
    #[arg(long, value_delimiter = ',')]
    ratios: Option<Vec<u32>>,
    #[arg(long)]
    cutoff: Option<u32>,
    #[arg(long, value_enum)]
    species: Option<SpeciesChoice>,
    /// Spin degeneracy of fermions.
    #[arg(long)]
    g: Option<u32>,
    /// Mean particle number.
    #[arg(long)]
    n: Option<f64>,
    /// Grid start in units of the reference temperature.
    #[arg(long, allow_negative_numbers = true)]
    tmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    tmax: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, value_enum)]
    normalize: Option<Normalize>,
    /// Emit the derivative (for `capacity`: switch to the dC/dT table).
    #[arg(long, overrides_with = "no_derivative")]
    derivative: bool,
    #[arg(long)]
    no_derivative: bool,
    /// Add the fracture report above the header.
    #[arg(long)]
    fracture: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    /// Peak-over-median ratio of the kink criterion.
    #[arg(long)]
    kink_ratio: Option<f64>,
    /// Fraction of second differences ignored at each grid end.
    #[arg(long)]
    kink_guard: Option<f64>,
    /// Spin degeneracy used for the Fermi temperature (defaults to --g).
    #[arg(long)]
    ref_g: Option<u32>,
}

impl RunArgs {
    fn flags(&self) -> ConfigFile {
        ConfigFile {
            trap: self.trap,
            dim: self.dim,
            ratios: self.ratios.clone(),
            cutoff: self.cutoff,
            species: self.species,
            g: self.g,
            n: self.n,
            tmin: self.tmin,
            tmax: self.tmax,
            points: self.points,
            normalize: self.normalize,
            derivative: match (self.derivative, self.no_derivative) {
                (true, _) => Some(true),
                (_, true) => Some(false),
                _ => None,
            },
            fracture: self.fracture.then_some(true),
            out: self.out.clone(),
            threads: self.threads,
            kink_ratio: self.kink_ratio,
            kink_guard: self.kink_guard,
            ref_g: self.ref_g,
        }
    }

    fn resolve(&self, derivative_default: bool) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        RunConfig::resolve(file.overlay(self.flags()), derivative_default)
    }
}

#[derive(Debug, Args)]
struct TrapArgs {
    #[arg(long, value_enum, default_value = "harmonic")]
    trap: TrapChoice,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    ratios: Option<Vec<u32>>,
    #[arg(long)]
    cutoff: Option<u32>,
    #[arg(long, default_value_t = 1.0)]
    n: f64,
    #[arg(long, default_value_t = 1)]
    g: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SeriesArgs {
    /// Exponent of the power-law potential.
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    gamma: f64,
    #[arg(long, default_value_t = 3)]
    dim: u32,
    #[arg(long, default_value_t = 100.0)]
    n: f64,
    /// Temperatures in natural units, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "25,50,100", allow_negative_numbers = true)]
    temps: Vec<f64>,
    /// Per-axis cutoff; defaults to 40 times the hottest temperature.
    #[arg(long)]
    cutoff: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => stdout
            .write_all(text.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|source| CliError::Write {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::Capacity(a) => {
            let cfg = a.resolve(false)?;
            emit(&commands::capacity(&cfg)?, cfg.out.as_ref(), stdout)
        }
        Command::Derivative(a) => {
            let cfg = a.resolve(true)?;
            if !cfg.derivative {
                return Err(CliError::usage("the derivative command cannot turn the derivative off"));
            }
            emit(&commands::derivative(&cfg)?, cfg.out.as_ref(), stdout)
        }
        Command::Energy(a) => {
            let cfg = a.resolve(true)?;
            emit(&commands::energy(&cfg)?, cfg.out.as_ref(), stdout)
        }
        Command::SeriesCheck(a) => {
            let text = commands::series_check(a.gamma, a.dim, a.n, &a.temps, a.cutoff)?;
            emit(&text, a.out.as_ref(), stdout)
        }
        Command::ReferenceTemps(a) => {
            let trap = trap_from_parts(a.trap, a.dim, a.ratios, a.cutoff)?;
            species_from_parts(SpeciesChoice::Fermion, Some(a.g))?;
            emit(&commands::reference_temps(&trap, a.n, a.g)?, a.out.as_ref(), stdout)
        }
        Command::Levels(a) => {
            let trap = trap_from_parts(a.trap, a.dim, a.ratios, a.cutoff)?;
            let mut text = String::new();
            trap.levels()?.write_csv(&mut text).expect("writing to a String");
            emit(&text, a.out.as_ref(), stdout)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status: 0 success, 1 numerical failure, 2 usage error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code() as u8;
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "gascap: {e}");
            if !matches!(e, CliError::Numerical { .. } | CliError::Core(_)) {
                let mut source = std::error::Error::source(&e);
                while let Some(s) = source {
                    let _ = writeln!(stderr, "  caused by: {s}");
                    source = s.source();
                }
            }
            e.exit_code()
        }
    }
}
