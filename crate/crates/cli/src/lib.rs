//! Command-line front end for `kgpdm`.
//!
//! Each subcommand resolves its parameters (defaults, preset, config file,
//! flags), computes a table or report and writes it to stdout or `--out`.

pub mod args;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod scan;
pub mod table;
pub mod verify;

use args::{
    Cli, Command, CriticalArgs, EnergySource, GlobalArgs, PotentialArgs, ScanArgs, TableArgs, VaryArg, VerifyArgs,
    WaveArgs,
};
use error::CliError;
use kgpdm::model;
use kgpdm::spectrum::{self, Branch, SpectrumError, Vary};
use kgpdm::wavefunction::{self, WaveError, WaveSolution};
use kgpdm::{PhysicalConfig, QuantumNumbers};
use output::{emit, token, Cell, Format, Table};
use presets::PresetSpec;
use scan::{Axis, OutputKind, ScanSpec};

/// Either a table honouring `--format`, or a JSON report.
#[derive(Debug)]
pub enum Output {
    Table(Table),
    Json(String),
}

impl Output {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match self {
            Output::Table(t) => t.render(format),
            Output::Json(s) => Ok(s.clone()),
        }
    }
}

/// Compute the output of a parsed command line. Verification failures are
/// reported through the returned flag so the report is still written.
pub fn execute(cli: &Cli) -> Result<(Output, Option<CliError>), CliError> {
    let preset = cli.global.preset.map(|p| p.spec());
    let cfg = config::resolve(&cli.global, preset.as_ref())?;
    let preset = preset.unwrap_or_default();
    match &cli.command {
        Command::Potential(a) => Ok((Output::Table(potential(&cfg, a, &preset)?), None)),
        Command::Spectrum(a) => spectrum_cmd(&cfg, a, &preset, false),
        Command::Schrodinger(a) => spectrum_cmd(&cfg, a, &preset, true),
        Command::TableNorms(a) => table_norms(&cfg, a),
        Command::Wavefunction(a) => Ok((Output::Table(wavefunction_cmd(&cfg, a, &preset)?), None)),
        Command::Critical(a) => Ok((Output::Table(critical(&cfg, a)?), None)),
        Command::Verify(a) => verify_cmd(&cfg, a),
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let (out, failure) = execute(cli)?;
    let text = out.render(cli.global.format.unwrap_or(Format::Csv))?;
    emit(&text, cli.global.out.as_deref())?;
    failure.map_or(Ok(()), Err)
}

pub fn potential(cfg: &PhysicalConfig, a: &PotentialArgs, preset: &PresetSpec) -> Result<Table, CliError> {
    let d = preset.potential;
    let r_min = a.r_min.or(d.map(|d| d.r_min)).unwrap_or(0.1);
    let r_max = a.r_max.or(d.map(|d| d.r_max)).unwrap_or(10.0);
    let samples = a.samples.or(d.map(|d| d.samples)).unwrap_or(100);
    if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) {
        return Err(CliError::usage(format!("radius range must satisfy 0 < r-min < r-max, got {r_min}..{r_max}")));
    }
    if samples < 2 {
        return Err(CliError::usage("samples must be at least 2"));
    }
    let mut t = Table::new(["r", "V_yukawa", "V_hulthen", "V_coulomb", "m_profile"]);
    let step = (r_max - r_min) / (samples - 1) as f64;
    for i in 0..samples {
        let r = if i + 1 == samples { r_max } else { r_min + step * i as f64 };
        t.push(vec![
            Cell::num(r),
            Cell::num(model::yukawa_exact(r, cfg)?),
            Cell::num(model::yukawa_hulthen(r, cfg)?),
            Cell::num(model::coulomb(r, cfg)?),
            Cell::num(model::mass_profile(r, cfg)?),
        ]);
    }
    Ok(t)
}

fn scan_spec(cfg: &PhysicalConfig, a: &ScanArgs, preset: &PresetSpec, schrodinger: bool) -> Result<ScanSpec, CliError> {
    let d = preset.scan.as_ref();
    let vary1: Axis = match &a.vary {
        Some(s) => s.parse()?,
        None => d
            .map(|d| d.vary1)
            .ok_or_else(|| CliError::usage("--vary is required without a scan preset"))?,
    };
    // an explicit first axis drops the preset's second one
    let vary2: Option<Axis> = match &a.vary2 {
        Some(s) => Some(s.parse()?),
        None if a.vary.is_none() => d.and_then(|d| d.vary2),
        None => None,
    };
    let qn_list = if a.qn.is_empty() {
        d.map(|d| d.qn_list.clone()).unwrap_or_else(|| vec![QuantumNumbers::new(0, 0)])
    } else {
        a.qn.iter().map(|s| scan::parse_qn(s)).collect::<Result<_, _>>()?
    };
    let outputs = if schrodinger {
        vec![OutputKind::Schrodinger]
    } else if a.outputs.is_empty() {
        d.map(|d| d.outputs.clone()).unwrap_or_else(|| vec![OutputKind::Closed])
    } else {
        a.outputs.clone()
    };
    ScanSpec::new(vary1, vary2, *cfg, qn_list, outputs)
}

fn spectrum_cmd(
    cfg: &PhysicalConfig,
    a: &ScanArgs,
    preset: &PresetSpec,
    schrodinger: bool,
) -> Result<(Output, Option<CliError>), CliError> {
    let spec = scan_spec(cfg, a, preset, schrodinger)?;
    let out = scan::run_scan(&spec);
    let failure = (!out.table.rows.is_empty() && out.failed_rows == out.table.rows.len())
        .then(|| CliError::Verification("every grid point failed".into()));
    Ok((Output::Table(out.table), failure))
}

fn table_norms(cfg: &PhysicalConfig, a: &TableArgs) -> Result<(Output, Option<CliError>), CliError> {
    if a.discrepancy {
        let report = table::discrepancy_report(cfg);
        return Ok((Output::Json(serde_json::to_string_pretty(&report)? + "\n"), None));
    }
    Ok((Output::Table(table::norms_table(cfg, a.n_max, a.energy, a.method)?), None))
}

pub fn wavefunction_cmd(cfg: &PhysicalConfig, a: &WaveArgs, preset: &PresetSpec) -> Result<Table, CliError> {
    let d = preset.wave;
    let qn = QuantumNumbers::new(
        a.n.or(d.map(|d| d.qn.n)).unwrap_or(0),
        a.l.or(d.map(|d| d.qn.l)).unwrap_or(0),
    );
    let branch: Branch = a.branch.map(Into::into).or(d.map(|d| d.branch)).unwrap_or(Branch::Plus);
    let describe = format!("state n={} l={} ({} branch)", qn.n, qn.l, branch.name());
    let built = match a.energy {
        EnergySource::Exact => WaveSolution::exact(qn, cfg, branch),
        EnergySource::ClosedForm => WaveSolution::closed_form(qn, cfg, branch),
    };
    let sol = match built {
        Ok(s) => s,
        Err(WaveError::Spectrum(SpectrumError::NoBoundState { .. })) => {
            return Err(CliError::NonNormalizable(format!("{describe}: no bound state")));
        }
        Err(e) => return Err(CliError::NonNormalizable(format!("{describe}: {e}"))),
    };
    if let Some(token) = match sol.class() {
        wavefunction::StateClass::Normalizable => None,
        c => Some(c.token()),
    } {
        return Err(CliError::NonNormalizable(format!("{describe} is not normalizable: {token}")));
    }
    if a.samples < 2 {
        return Err(CliError::usage("samples must be at least 2"));
    }
    let r_max = match a.r_max {
        Some(r) if r > 0.0 && r.is_finite() => r,
        Some(r) => return Err(CliError::usage(format!("r-max must be positive, got {r}"))),
        None => wavefunction::support_radius(&sol).expect("normalizable states have exponents"),
    };
    let grid: Vec<f64> = (1..=a.samples).map(|i| r_max * i as f64 / a.samples as f64).collect();
    let samples = wavefunction::normalized_samples(&sol, &grid)
        .map_err(|e| CliError::NonNormalizable(format!("{describe}: {e}")))?;
    let mut t = Table::new(["r", "z", "phi", "phi_sq"]);
    for s in samples {
        t.push(vec![Cell::num(s.r), Cell::num(s.z), Cell::num(s.phi), Cell::num(s.phi * s.phi)]);
    }
    Ok(t)
}

pub fn critical(cfg: &PhysicalConfig, a: &CriticalArgs) -> Result<Table, CliError> {
    let qn = QuantumNumbers::new(a.n, a.l);
    let (vary, lo, hi) = match a.vary {
        VaryArg::Eta => (Vary::Eta, a.lo.unwrap_or(1e-3), a.hi.unwrap_or(20.0)),
        VaryArg::Alpha => (Vary::Alpha, a.lo.unwrap_or(1e-4), a.hi.unwrap_or(2.0)),
    };
    let mut t = Table::new(["n", "l", "vary", "critical", "e_plus", "e_minus"]);
    let mut row = vec![Cell::Int(qn.n.into()), Cell::Int(qn.l.into()), Cell::Text(vary.name().into())];
    match spectrum::critical_parameter(qn, cfg, vary, (lo, hi)) {
        Ok(x) => {
            let pair = spectrum::energy_closed_form(qn, &vary.apply(cfg, x)?);
            row.push(Cell::num(x));
            row.push(scan::level_cell(&pair.e_plus));
            row.push(scan::level_cell(&pair.e_minus));
        }
        Err(SpectrumError::InvalidRange { lo, hi }) => {
            return Err(CliError::usage(format!("invalid range {lo}..{hi}")));
        }
        Err(SpectrumError::Model(e)) => return Err(e.into()),
        Err(_) => row.extend([Cell::Token(token::NONE), Cell::Token(token::NONE), Cell::Token(token::NONE)]),
    }
    t.push(row);
    Ok(t)
}

fn verify_cmd(cfg: &PhysicalConfig, a: &VerifyArgs) -> Result<(Output, Option<CliError>), CliError> {
    let cases = match &a.suite {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read suite {}: {e}", path.display())))?;
            verify::parse_suite(&text, cfg)?
        }
        None => verify::default_suite(cfg),
    };
    let report = verify::run_suite(&cases);
    let failure = (!report.pass).then(|| CliError::Verification(format!("{} of {} cases failed", report.failed, report.cases.len())));
    Ok((Output::Json(serde_json::to_string_pretty(&report)? + "\n"), failure))
}

/// Parameters shared by every command, for programmatic use.
pub fn resolve_config(global: &GlobalArgs) -> Result<PhysicalConfig, CliError> {
    let preset = global.preset.map(|p| p.spec());
    config::resolve(global, preset.as_ref())
}
