use crate::output::Format;
use crate::presets::Preset;
use crate::scan::OutputKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "kgpdm",
    version,
    about = "Klein-Gordon bound states in a screened Coulomb potential with position-dependent mass"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Physical parameters and output options, accepted before or after the subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// Rest mass [default: 1].
    #[arg(long, global = true)]
    pub m0: Option<f64>,
    /// Position-dependent mass amplitude [default: 0].
    #[arg(long, global = true)]
    pub m1: Option<f64>,
    /// Screening parameter, > 0 [default: 0.01].
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    /// Coupling strength [default: 0.1].
    #[arg(long, global = true)]
    pub eta: Option<f64>,
    /// Coupling scale, in the role of 1/(hbar c) [default: 1].
    #[arg(long, global = true)]
    pub beta: Option<f64>,
    /// Reduced Planck constant [default: 1].
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    /// Speed of light [default: 1].
    #[arg(long, global = true)]
    pub c: Option<f64>,
    /// key=value parameter file, applied under explicit flags.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Parameter and range bundle for one of the reference figures.
    #[arg(long, global = true, value_enum)]
    pub preset: Option<Preset>,
    /// Output file (stdout if omitted).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Output format [default: csv].
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

impl GlobalArgs {
    pub fn flag_params(&self) -> Vec<(&'static str, f64)> {
        [
            ("m0", self.m0),
            ("m1", self.m1),
            ("alpha", self.alpha),
            ("eta", self.eta),
            ("beta", self.beta),
            ("hbar", self.hbar),
            ("c", self.c),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Yukawa, Hulthén-form and Coulomb potentials with the mass profile versus r.
    Potential(PotentialArgs),
    /// Energy levels over a one- or two-parameter grid.
    Spectrum(ScanArgs),
    /// Normalization constants of the s-states for m1 = 0 and m1 = 0.1.
    TableNorms(TableArgs),
    /// Normalized radial eigenfunction on a grid.
    Wavefunction(WaveArgs),
    /// Parameter value where the two closed-form levels merge.
    Critical(CriticalArgs),
    /// Non-relativistic energies over a grid.
    Schrodinger(ScanArgs),
    /// Compare closed-form, exact and shooting energies; JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PotentialArgs {
    #[arg(long)]
    pub r_min: Option<f64>,
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    /// First axis, name:lo:hi:count with name one of alpha, eta, m1.
    #[arg(long, value_name = "AXIS")]
    pub vary: Option<String>,
    /// Optional second axis, varied fastest.
    #[arg(long, value_name = "AXIS")]
    pub vary2: Option<String>,
    /// State as n,l; repeatable.
    #[arg(long = "qn", value_name = "N,L")]
    pub qn: Vec<String>,
    /// Comma-separated subset of closed, exact, schrodinger.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub outputs: Vec<OutputKind>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnergySource {
    Exact,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormMethod {
    /// Quadrature of |phi|² dr.
    Dr,
    /// Quadrature in z.
    Dz,
    /// Quadrature in s = 1 - 2z.
    Ds,
    /// Finite-sum closed form.
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Plus,
    Minus,
}

impl From<BranchArg> for kgpdm::Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Plus => kgpdm::Branch::Plus,
            BranchArg::Minus => kgpdm::Branch::Minus,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 10)]
    pub n_max: u32,
    #[arg(long, value_enum, default_value = "exact")]
    pub energy: EnergySource,
    #[arg(long, value_enum, default_value = "dr")]
    pub method: NormMethod,
    /// Emit the JSON comparison of every energy/method combination against the reference table.
    #[arg(long)]
    pub discrepancy: bool,
}

#[derive(Debug, Clone, Args)]
pub struct WaveArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long, value_enum)]
    pub branch: Option<BranchArg>,
    #[arg(long, value_enum, default_value = "exact")]
    pub energy: EnergySource,
    /// Outer radius; defaults to where the density is negligible.
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VaryArg {
    Eta,
    Alpha,
}

#[derive(Debug, Clone, Args)]
pub struct CriticalArgs {
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    #[arg(long, value_enum, default_value = "eta")]
    pub vary: VaryArg,
    #[arg(long)]
    pub lo: Option<f64>,
    #[arg(long)]
    pub hi: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// JSON file `{"cases": [{"n": 1, "l": 0, "alpha": 0.01, ...}]}`; built-in suite if omitted.
    #[arg(long, value_name = "PATH")]
    pub suite: Option<PathBuf>,
}
