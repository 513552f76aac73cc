//! Parameter sweeps over one or two axes for a list of states.

use crate::error::CliError;
use crate::output::{token, Cell, Table};
use kgpdm::spectrum::{self, Branch, EnergyLevel, SpectrumError};
use kgpdm::{PhysicalConfig, QuantumNumbers};
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    Alpha,
    Eta,
    M1,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::Alpha => "alpha",
            Param::Eta => "eta",
            Param::M1 => "m1",
        }
    }
}

impl FromStr for Param {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "alpha" => Ok(Param::Alpha),
            "eta" => Ok(Param::Eta),
            "m1" => Ok(Param::M1),
            _ => Err(CliError::usage(format!("cannot vary '{s}' (expected alpha, eta or m1)"))),
        }
    }
}

/// `count` evenly spaced values from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: Param,
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(param: Param, lo: f64, hi: f64, count: usize) -> Result<Self, CliError> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(CliError::usage(format!("{}: need lo < hi, got {lo}..{hi}", param.name())));
        }
        if count < 2 {
            return Err(CliError::usage(format!("{}: need at least 2 points", param.name())));
        }
        Ok(Self { param, lo, hi, count })
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.hi } else { self.lo + (self.hi - self.lo) * i as f64 / last })
            .collect()
    }
}

/// Parsed from `name:lo:hi:count`.
impl FromStr for Axis {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        let [name, lo, hi, count] = parts[..] else {
            return Err(CliError::usage(format!("axis '{s}' is not name:lo:hi:count")));
        };
        let num = |x: &str| x.trim().parse::<f64>().map_err(|_| CliError::usage(format!("bad number '{x}' in axis '{s}'")));
        let count = count
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::usage(format!("bad count '{count}' in axis '{s}'")))?;
        Axis::new(name.trim().parse()?, num(lo)?, num(hi)?, count)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.param.name(), self.lo, self.hi, self.count)
    }
}

/// Parse `n,l` (also accepts `n:l`).
pub fn parse_qn(s: &str) -> Result<QuantumNumbers, CliError> {
    let bad = || CliError::usage(format!("state '{s}' is not n,l"));
    let (n, l) = s.split_once([',', ':']).ok_or_else(bad)?;
    Ok(QuantumNumbers::new(
        n.trim().parse().map_err(|_| bad())?,
        l.trim().parse().map_err(|_| bad())?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputKind {
    /// Closed-form energies.
    Closed,
    /// Energies from the exact quantization condition.
    Exact,
    /// Non-relativistic comparison energy.
    Schrodinger,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub vary1: Axis,
    pub vary2: Option<Axis>,
    pub fixed: PhysicalConfig,
    pub qn_list: Vec<QuantumNumbers>,
    pub outputs: Vec<OutputKind>,
}

impl ScanSpec {
    pub fn new(
        vary1: Axis,
        vary2: Option<Axis>,
        fixed: PhysicalConfig,
        qn_list: Vec<QuantumNumbers>,
        outputs: Vec<OutputKind>,
    ) -> Result<Self, CliError> {
        if let Some(v2) = vary2 {
            if v2.param == vary1.param {
                return Err(CliError::usage("the two scan axes must vary different parameters"));
            }
        }
        for axis in std::iter::once(vary1).chain(vary2) {
            apply(&fixed, axis.param, axis.lo)?;
            apply(&fixed, axis.param, axis.hi)?;
        }
        if qn_list.is_empty() {
            return Err(CliError::usage("no states requested"));
        }
        if outputs.is_empty() {
            return Err(CliError::usage("no outputs requested"));
        }
        let mut outputs = outputs;
        outputs.dedup();
        Ok(Self {
            vary1,
            vary2,
            fixed,
            qn_list,
            outputs,
        })
    }

    pub fn header(&self) -> Vec<String> {
        let mut h = vec![self.vary1.param.name().to_string()];
        if let Some(v2) = self.vary2 {
            h.push(v2.param.name().to_string());
        }
        h.extend(["n".into(), "l".into()]);
        for o in &self.outputs {
            match o {
                OutputKind::Closed => h.extend(["closed_plus".into(), "closed_minus".into()]),
                OutputKind::Exact => h.extend(["exact_plus".into(), "exact_minus".into()]),
                OutputKind::Schrodinger => h.push("schrodinger".into()),
            }
        }
        h
    }
}

fn apply(cfg: &PhysicalConfig, p: Param, v: f64) -> Result<PhysicalConfig, CliError> {
    Ok(cfg.with_param(p.name(), v)?)
}

pub fn level_cell(level: &EnergyLevel) -> Cell {
    match level.value() {
        Some(v) => Cell::num(v),
        None => Cell::Token(token::IMAGINARY),
    }
}

pub fn exact_cell(r: Result<EnergyLevel, SpectrumError>) -> Cell {
    match r {
        Ok(level) => level_cell(&level),
        Err(SpectrumError::NoBoundState { .. }) => Cell::Token(token::NONE),
        Err(_) => Cell::Token(token::ERROR),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanOutcome {
    pub table: Table,
    /// Rows in which every energy column is an error token.
    pub failed_rows: usize,
}

/// Rows ordered by state, then the first axis, then the second.
pub fn run_scan(spec: &ScanSpec) -> ScanOutcome {
    let v1 = spec.vary1.values();
    let v2: Vec<Option<f64>> = match spec.vary2 {
        Some(a) => a.values().into_iter().map(Some).collect(),
        None => vec![None],
    };
    let mut points = Vec::with_capacity(spec.qn_list.len() * v1.len() * v2.len());
    for &qn in &spec.qn_list {
        for &a in &v1 {
            for &b in &v2 {
                points.push((qn, a, b));
            }
        }
    }
    let rows: Vec<Vec<Cell>> = points.par_iter().map(|&(qn, a, b)| row(spec, qn, a, b)).collect();
    let fixed = 2 + 1 + usize::from(spec.vary2.is_some());
    let failed_rows = rows.iter().filter(|r| r[fixed..].iter().all(Cell::is_error)).count();
    let mut table = Table::new(spec.header());
    for r in rows {
        table.push(r);
    }
    ScanOutcome { table, failed_rows }
}

fn row(spec: &ScanSpec, qn: QuantumNumbers, a: f64, b: Option<f64>) -> Vec<Cell> {
    let mut cells = vec![Cell::num(a)];
    cells.extend(b.map(Cell::num));
    cells.push(Cell::Int(qn.n.into()));
    cells.push(Cell::Int(qn.l.into()));
    let cfg = apply(&spec.fixed, spec.vary1.param, a)
        .and_then(|c| match (spec.vary2, b) {
            (Some(ax), Some(v)) => apply(&c, ax.param, v),
            _ => Ok(c),
        });
    let width: usize = spec
        .outputs
        .iter()
        .map(|o| if *o == OutputKind::Schrodinger { 1 } else { 2 })
        .sum();
    let Ok(cfg) = cfg else {
        cells.extend(std::iter::repeat_n(Cell::Token(token::ERROR), width));
        return cells;
    };
    for o in &spec.outputs {
        match o {
            OutputKind::Closed => {
                let pair = spectrum::energy_closed_form(qn, &cfg);
                cells.push(level_cell(&pair.e_plus));
                cells.push(level_cell(&pair.e_minus));
            }
            OutputKind::Exact => {
                cells.push(exact_cell(spectrum::energy_exact(qn, &cfg, Branch::Plus)));
                cells.push(exact_cell(spectrum::energy_exact(qn, &cfg, Branch::Minus)));
            }
            OutputKind::Schrodinger => cells.push(Cell::num(spectrum::schrodinger_energy(qn, &cfg))),
        }
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_parsing() {
        let a: Axis = "eta:0.01:1:5".parse().unwrap();
        assert_eq!((a.param, a.count), (Param::Eta, 5));
        assert_eq!(a.values(), vec![0.01, 0.2575, 0.505, 0.7525, 1.0]);
        for bad in ["eta:1:0.5:3", "eta:0:1:1", "beta:0:1:3", "eta:0:1", "eta:x:1:3"] {
            assert!(matches!(bad.parse::<Axis>(), Err(CliError::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn two_axis_row_count() {
        let spec = ScanSpec::new(
            "alpha:0.01:0.03:3".parse().unwrap(),
            Some("eta:0.1:0.3:3".parse().unwrap()),
            PhysicalConfig::default(),
            vec![QuantumNumbers::new(1, 0)],
            vec![OutputKind::Closed],
        )
        .unwrap();
        let out = run_scan(&spec);
        assert_eq!(out.table.rows.len(), 9);
        assert_eq!(out.table.header, ["alpha", "eta", "n", "l", "closed_plus", "closed_minus"]);
        assert_eq!(out.failed_rows, 0);
        // first axis is the slower one
        let first = |i: usize| match out.table.rows[i][0] {
            Cell::Num(x) => x,
            _ => panic!("numeric axis"),
        };
        assert_eq!(first(1), 0.01);
        assert!((first(3) - 0.02).abs() < 1e-15);
    }

    #[test]
    fn rejects_invalid_axis_values() {
        let r = ScanSpec::new(
            "alpha:0:0.3:3".parse().unwrap(),
            None,
            PhysicalConfig::default(),
            vec![QuantumNumbers::new(0, 0)],
            vec![OutputKind::Closed],
        );
        assert!(matches!(r, Err(CliError::Usage(_))));
    }

    #[test]
    fn qn_parsing() {
        assert_eq!(parse_qn("2,1").unwrap(), QuantumNumbers::new(2, 1));
        assert_eq!(parse_qn("3:0").unwrap(), QuantumNumbers::new(3, 0));
        assert!(parse_qn("2").is_err());
    }
}
