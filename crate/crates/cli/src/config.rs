use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pdm_core::masstransform::{MassProfile, PotentialSpec, TabulatedPotential};
use pdm_core::oracle::Grid;
use pdm_core::spectra::{MAX_TANH_COUNT, MAX_TANH_V0};

use crate::error::{CliError, CliResult};

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "PDM_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "pdm", version, about = "Bound states for a sech² position-dependent mass")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalue table for one case.
    Eigen(EigenArgs),
    /// Sampled, normalised ψ(x) and φ(z) for one state.
    Wavefn(WavefnArgs),
    /// Run the invariant suite and report pass/fail per check.
    Validate(ValidateArgs),
    /// Kinematic potential of a von Roos ordering.
    Ordering(OrderingArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Case {
    V0,
    Sinh2,
    Tanh,
    Ordering,
    Custom,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::V0 => "v0",
            Case::Sinh2 => "sinh2",
            Case::Tanh => "tanh",
            Case::Ordering => "ordering",
            Case::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Solver {
    /// Closed form or series root where available, FD oracle otherwise.
    Auto,
    /// Always the finite-difference oracle.
    Fd,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Scaled V0 for the tanh case (V0 divided by a²ħ²/2m0).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub v0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub m0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    /// Number of states.
    #[arg(long, default_value_t = 6)]
    pub count: usize,
    /// CSV with header `z,v`: scaled Ṽ(z) samples for the custom case.
    #[arg(long)]
    pub potential_file: Option<PathBuf>,
    /// Grid points for the finite-difference oracle.
    #[arg(long, default_value_t = Grid::DEFAULT_POINTS)]
    pub grid_points: usize,
    /// Distance of the grid ends from ±π/2 [default: 1e-12 for sinh2,
    /// 1e-6 otherwise].
    #[arg(long)]
    pub grid_inset: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; defaults to `$PDM_OUTPUT_DIR/<command>-<case>.<ext>`,
    /// or stdout when that is unset.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EigenArgs {
    #[arg(long, value_enum)]
    pub case: Case,
    #[arg(long, value_enum, default_value_t = Solver::Auto)]
    pub solver: Solver,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WavefnArgs {
    #[arg(long, value_enum)]
    pub case: Case,
    #[arg(long, value_enum, default_value_t = Solver::Auto)]
    pub solver: Solver,
    /// State index (1-based).
    #[arg(long, conflicts_with = "eps")]
    pub n: Option<usize>,
    /// Scaled eigenvalue; must be an eigenvalue of the chosen case.
    #[arg(long, allow_negative_numbers = true)]
    pub eps: Option<f64>,
    #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// Restrict the suite to one case; all cases by default.
    #[arg(long, value_enum)]
    pub case: Option<Case>,
    /// Shift every eigenvalue fed to the residual checks (fault injection).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub perturb_eps: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub gamma: f64,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OrderingArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub m0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = -10.0, allow_negative_numbers = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Validated model configuration shared by the commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub case: Case,
    pub mass: MassProfile,
    pub v0_scaled: f64,
    pub count: usize,
    pub grid: Grid,
    pub potential: Option<PotentialSpec>,
}

impl RunConfig {
    pub fn build(case: Case, m: &ModelArgs, solver: Solver) -> CliResult<Self> {
        if m.count == 0 {
            return Err(CliError::Config("--count must be at least 1".into()));
        }
        let mass = MassProfile::new(m.m0, m.a, m.hbar).map_err(CliError::config)?;
        if !m.v0.is_finite() {
            return Err(CliError::Config("--v0 must be finite".into()));
        }
        if case == Case::Tanh && solver == Solver::Auto {
            if m.count > MAX_TANH_COUNT {
                return Err(CliError::Config(format!(
                    "the series solver handles at most {MAX_TANH_COUNT} states"
                )));
            }
            if m.v0.abs() > MAX_TANH_V0 {
                return Err(CliError::Config(format!(
                    "the series solver needs |V0| <= {MAX_TANH_V0}; use --solver fd"
                )));
            }
        }
        let default_inset = if case == Case::Sinh2 { 1e-12 } else { Grid::DEFAULT_INSET };
        let inset = m.grid_inset.unwrap_or(default_inset);
        if inset.is_nan() || inset <= 0.0 {
            return Err(CliError::Config("--grid-inset must be positive".into()));
        }
        let grid = Grid::symmetric(inset, m.grid_points).map_err(CliError::config)?;
        let potential = match case {
            Case::V0 => Some(PotentialSpec::Zero),
            Case::Sinh2 => Some(PotentialSpec::sinh_squared_box(&mass)),
            Case::Tanh => Some(PotentialSpec::tanh_scaled(&mass, m.v0)),
            Case::Ordering => None,
            Case::Custom => {
                let path = m.potential_file.as_deref().ok_or_else(|| {
                    CliError::Config("the custom case needs --potential-file".into())
                })?;
                Some(PotentialSpec::CustomZ(read_potential(path)?))
            }
        };
        Ok(Self {
            case,
            mass,
            v0_scaled: m.v0,
            count: m.count,
            grid,
            potential,
        })
    }

    pub fn potential(&self) -> CliResult<&PotentialSpec> {
        self.potential.as_ref().ok_or_else(|| {
            CliError::Config("the ordering case has no spectrum; use `pdm ordering`".into())
        })
    }
}

#[derive(Debug, serde::Deserialize)]
struct PotentialRow {
    z: f64,
    v: f64,
}

fn read_potential(path: &Path) -> CliResult<TabulatedPotential> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut z = Vec::new();
    let mut v = Vec::new();
    for row in reader.deserialize::<PotentialRow>() {
        let row = row.map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        z.push(row.z);
        v.push(row.v);
    }
    TabulatedPotential::new(z, v).map_err(CliError::config)
}

/// Explicit `--output`, else `$PDM_OUTPUT_DIR/<stem>.<ext>`, else stdout.
pub fn resolve_output(out: &OutputArgs, stem: &str) -> CliResult<Option<PathBuf>> {
    if let Some(path) = &out.output {
        return Ok(Some(path.clone()));
    }
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if !dir.is_empty() => {
            let dir = PathBuf::from(dir);
            std::fs::create_dir_all(&dir)?;
            Ok(Some(dir.join(format!("{stem}.{}", out.format.extension()))))
        }
        _ => Ok(None),
    }
}
