use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qcorr::correlation::OptimizerConfig;
use qcorr::ising::ChainLength;
use qcorr::qpt::ScalingTarget;

#[derive(Debug, Parser)]
#[command(
    name = "qcorr",
    version,
    about = "Rényi and Tsallis quantum correlations of two-qubit states and the transverse-field Ising chain"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    /// Write the result to this file instead of stdout. CSV output also writes
    /// `<FILE>.meta.json` with provenance.
    #[arg(long, short, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for every randomized multistart.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: logical cores). QCORR_THREADS takes precedence.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = LogLevel::Warn)]
    #[serde(skip)]
    pub log_level: LogLevel,
    /// Record wall-clock start and finish times in the provenance.
    #[arg(long, global = true)]
    pub stamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LogLevel {
    Off,
    Error,
    Warn,
    Info,
    Debug,
    Trace,
}

impl From<LogLevel> for log::LevelFilter {
    fn from(l: LogLevel) -> Self {
        match l {
            LogLevel::Off => log::LevelFilter::Off,
            LogLevel::Error => log::LevelFilter::Error,
            LogLevel::Warn => log::LevelFilter::Warn,
            LogLevel::Info => log::LevelFilter::Info,
            LogLevel::Debug => log::LevelFilter::Debug,
            LogLevel::Trace => log::LevelFilter::Trace,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Relative entropy between two states read from JSON files.
    Entropy(EntropyArgs),
    /// Total, classical and quantum correlation of one state.
    Discord(DiscordArgs),
    /// Correlations of a state family across a parameter grid (CSV param,I,J,D).
    Sweep(SweepArgs),
    /// Nearest-neighbour state and correlators of the Ising ring.
    IsingState(IsingStateArgs),
    /// Quantum correlation of the Ising nearest-neighbour state across λ
    /// (CSV lambda,D,dD_dlambda).
    IsingSweep(IsingSweepArgs),
    /// Finite-size scaling of the derivative peak over ring sizes.
    Scaling(ScalingArgs),
    /// Regenerate the data behind a figure or the exponent table.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct KindArgs {
    /// renyi-s, renyi-t, tsallis-s, tsallis-t, min, max, collision, linear or vn.
    #[arg(long, default_value = "renyi-s")]
    pub kind: String,
    /// Order α; required by renyi-s, renyi-t, tsallis-s and tsallis-t.
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OptimizerArgs {
    /// Local searches per minimization [default: 64, or 4 for Ising sweeps].
    #[arg(long)]
    pub starts: Option<usize>,
    /// Nelder–Mead objective tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 2000)]
    pub max_iters: usize,
    /// Grid points per measurement angle [default: 24, or 6 for Ising sweeps].
    #[arg(long)]
    pub measurement_grid: Option<usize>,
}

impl OptimizerArgs {
    pub fn config(&self, base: OptimizerConfig, seed: u64) -> OptimizerConfig {
        OptimizerConfig {
            starts: self.starts.unwrap_or(base.starts),
            measurement_grid: self.measurement_grid.unwrap_or(base.measurement_grid),
            objective_tol: self.tol,
            max_iters: self.max_iters,
            seed,
            ..base
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StateFamily {
    /// `√λ|00⟩ + √(1-λ)|11⟩`.
    Pure,
    /// `p|ψ⁻⟩⟨ψ⁻| + (1-p)I/4`.
    Werner,
    /// `p|φ⁺⟩⟨φ⁺| + (1-p)|φ⁻⟩⟨φ⁻|`.
    Bellmix,
    /// `p|φ⁺⟩⟨φ⁺| + (1-p)|00⟩⟨00|`.
    Bellnoise,
}

impl StateFamily {
    pub fn state(self, p: f64) -> qcorr::DensityMatrix {
        use qcorr::states;
        match self {
            StateFamily::Pure => states::schmidt_pure(p),
            StateFamily::Werner => states::werner(p),
            StateFamily::Bellmix => states::bell_mixture(p),
            StateFamily::Bellnoise => states::bell_noise(p),
        }
    }
}

/// `MIN:MAX:STEPS`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, steps] = parts.as_slice() else {
            return Err(format!("expected MIN:MAX:STEPS, got {s:?}"));
        };
        let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
        let grid = GridSpec {
            min: num(min)?,
            max: num(max)?,
            steps: steps.trim().parse().map_err(|e| format!("{steps:?}: {e}"))?,
        };
        if !(grid.max > grid.min) || grid.steps < 2 {
            return Err(format!("grid {s:?} needs MIN < MAX and STEPS >= 2"));
        }
        Ok(grid)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.steps)
    }
}

fn chain_length(s: &str) -> Result<ChainLength, String> {
    ChainLength::parse(s).map_err(|e| e.to_string())
}

fn scaling_target(s: &str) -> Result<ScalingTarget, String> {
    ScalingTarget::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EntropyArgs {
    #[arg(long, value_name = "FILE")]
    pub rho: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub sigma: PathBuf,
    #[command(flatten)]
    pub kind: KindArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["state", "family"])))]
pub struct DiscordArgs {
    /// Two-qubit state in the JSON state format.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["family", "param"])]
    pub state: Option<PathBuf>,
    #[arg(long, value_enum, requires = "param")]
    pub family: Option<StateFamily>,
    /// Family parameter in [0, 1].
    #[arg(long)]
    pub param: Option<f64>,
    #[command(flatten)]
    pub kind: KindArgs,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub family: StateFamily,
    /// Parameter grid inside [0, 1].
    #[arg(long, value_name = "MIN:MAX:STEPS")]
    pub param_grid: GridSpec,
    #[command(flatten)]
    pub kind: KindArgs,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IsingStateArgs {
    /// Field ratio h/J.
    #[arg(long)]
    pub lambda: f64,
    /// Ring length (even, at least 4) or `inf`.
    #[arg(long, value_parser = chain_length, default_value = "inf")]
    pub n: ChainLength,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IsingSweepArgs {
    #[arg(long, value_name = "MIN:MAX:STEPS", default_value = "0.8:1.2:401")]
    pub lambda: GridSpec,
    #[arg(long, value_parser = chain_length, default_value = "inf")]
    pub n: ChainLength,
    #[command(flatten)]
    pub kind: KindArgs,
    /// Also sweep the von Neumann discord (columns D_vn, dD_vn_dlambda).
    #[arg(long)]
    pub compare_vn: bool,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScalingArgs {
    /// Comma-separated ring sizes.
    #[arg(long, value_delimiter = ',', default_value = "64,128,256,512,1024,2048,4096")]
    pub n_list: Vec<usize>,
    #[command(flatten)]
    pub kind: KindArgs,
    /// Observable to fit: fwhm or lambda-c.
    #[arg(long, value_parser = scaling_target, default_value = "fwhm")]
    pub target: ScalingTarget,
    #[arg(long, value_name = "MIN:MAX:STEPS", default_value = "0.8:1.2:401")]
    pub lambda: GridSpec,
    /// Points of the second, finer sweep around each coarse peak (0 disables).
    #[arg(long, default_value_t = 81)]
    pub refine_points: usize,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(group(clap::ArgGroup::new("artifact").required(true).args(["figure", "table"])))]
pub struct ReproduceArgs {
    /// 1: pure states, 3: Werner, 4: Bell mixture, 5: Bell state with |00⟩
    /// noise, 8: infinite Ising chain.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["1", "3", "4", "5", "8"]))]
    pub figure: Option<String>,
    /// 1: λ_c scaling exponents for Rényi and Tsallis at α = 2, 10, 50.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["1"]))]
    pub table: Option<String>,
}
