//! Normalization constants of the s-states and their comparison with the
//! published reference table.

use crate::args::{EnergySource, NormMethod};
use crate::error::CliError;
use crate::output::{token, Cell, Num, Table};
use crate::scan::exact_cell;
use kgpdm::spectrum::{self, Branch, EnergyLevel};
use kgpdm::wavefunction::{self, Measure, StateClass, WaveSolution};
use kgpdm::{MaybeReal, PhysicalConfig, QuantumNumbers};
use rayon::prelude::*;
use serde::Serialize;

pub const N_MAX_LIMIT: u32 = 12;
pub const TOLERANCE: f64 = 0.01;

/// `(branch, m1, column name)` in table order.
pub const COLUMNS: [(Branch, f64, &str); 4] = [
    (Branch::Plus, 0.0, "plus_m1_0"),
    (Branch::Plus, 0.1, "plus_m1_0.1"),
    (Branch::Minus, 0.0, "minus_m1_0"),
    (Branch::Minus, 0.1, "minus_m1_0.1"),
];

/// Reference values at alpha = 0.01, eta = 0.1, m0 = 1; `None` marks a
/// purely imaginary entry.
pub const REFERENCE: [[Option<f64>; 4]; 11] = [
    [Some(2.02568), Some(2.14417), Some(1.25551), Some(2.15323)],
    [Some(4.78012), Some(23.2147), Some(0.89947), Some(23.5816)],
    [Some(15.1767), Some(125.661), Some(2.76688), Some(129.296)],
    [Some(42.3247), Some(425.014), Some(11.1521), Some(444.511)],
    [Some(112.618), Some(1028.11), Some(34.4452), Some(1097.33)],
    [Some(271.253), Some(1822.97), Some(105.462), Some(1991.1)],
    [Some(704.911), Some(2345.5), Some(288.54), Some(2639.1)],
    [Some(1721.39), Some(2050.48), Some(821.447), Some(4327.26)],
    [Some(4501.8), Some(136.028), Some(2196.82), None],
    [Some(11130.9), None, Some(6001.23), None],
    [Some(21574.6), None, Some(13918.7), None],
];

fn level(qn: QuantumNumbers, cfg: &PhysicalConfig, branch: Branch, source: EnergySource) -> Result<EnergyLevel, Cell> {
    match source {
        EnergySource::Exact => spectrum::energy_exact(qn, cfg, branch).map_err(|e| exact_cell(Err(e))),
        EnergySource::ClosedForm => Ok(spectrum::energy_closed_form(qn, cfg).get(branch)),
    }
}

fn class_token(c: StateClass) -> Cell {
    Cell::Token(match c {
        StateClass::ImaginaryNorm => token::IMAGINARY,
        StateClass::Divergent => token::DIVERGENT,
        StateClass::Normalizable => token::ERROR,
    })
}

/// `N′` of one s-state, or the token describing why there is none.
pub fn norm_cell(
    n: u32,
    base: &PhysicalConfig,
    branch: Branch,
    m1: f64,
    source: EnergySource,
    method: NormMethod,
) -> Cell {
    let qn = QuantumNumbers::new(n, 0);
    let Ok(cfg) = base.with_m1(m1) else {
        return Cell::Token(token::ERROR);
    };
    let lvl = match level(qn, &cfg, branch, source) {
        Ok(l) => l,
        Err(cell) => return cell,
    };
    let Ok(sol) = WaveSolution::from_level(qn, &cfg, lvl) else {
        return Cell::Token(token::ERROR);
    };
    let measure = match method {
        NormMethod::Dr => Measure::Dr,
        NormMethod::Dz => Measure::Dz,
        NormMethod::Ds => Measure::Ds,
        NormMethod::ClosedForm => {
            // the closed form only needs real exponents
            if sol.lambda1().is_none() {
                return class_token(sol.class());
            }
            return match wavefunction::norm_closed_form(&sol) {
                Ok(MaybeReal::Real(v)) => Cell::num(v),
                Ok(MaybeReal::Imaginary) => Cell::Token(token::IMAGINARY),
                Err(_) => Cell::Token(token::ERROR),
            };
        }
    };
    if sol.class() != StateClass::Normalizable {
        return class_token(sol.class());
    }
    match wavefunction::norm_in_measure(&sol, measure) {
        Ok(v) => Cell::num(v),
        Err(_) => Cell::Token(token::ERROR),
    }
}

pub fn norms_table(base: &PhysicalConfig, n_max: u32, source: EnergySource, method: NormMethod) -> Result<Table, CliError> {
    if n_max > N_MAX_LIMIT {
        return Err(CliError::usage(format!("n-max must be at most {N_MAX_LIMIT}")));
    }
    let rows: Vec<Vec<Cell>> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut row = vec![Cell::Int(n.into())];
            row.extend(COLUMNS.iter().map(|&(b, m1, _)| norm_cell(n, base, b, m1, source, method)));
            row
        })
        .collect();
    let mut t = Table::new(std::iter::once("n").chain(COLUMNS.iter().map(|c| c.2)));
    for r in rows {
        t.push(r);
    }
    Ok(t)
}

#[derive(Debug, Clone, Serialize)]
pub struct CellReport {
    pub n: u32,
    pub column: &'static str,
    pub value: Cell,
    /// `null` for an imaginary reference entry.
    pub reference: Option<Num>,
    pub rel_error: Option<Num>,
    pub within_tolerance: bool,
    pub pattern_match: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    pub energy: &'static str,
    pub method: &'static str,
    pub real_entries: usize,
    pub matched_real: usize,
    pub pattern_entries: usize,
    pub matched_pattern: usize,
    pub reproduces_table: bool,
    pub cells: Vec<CellReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Parameters {
    pub m0: Num,
    pub alpha: Num,
    pub eta: Num,
    pub beta: Num,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscrepancyReport {
    pub parameters: Parameters,
    pub tolerance: Num,
    pub candidates: Vec<Candidate>,
    /// Candidate with the most real entries within tolerance.
    pub best: (&'static str, &'static str, usize),
    /// The method that reproduces every entry, if any.
    pub locked: Option<(&'static str, &'static str)>,
}

impl DiscrepancyReport {
    pub fn reproduced(&self) -> bool {
        self.locked.is_some()
    }
}

const SOURCES: [(EnergySource, &str); 2] = [(EnergySource::Exact, "exact"), (EnergySource::ClosedForm, "closed-form")];
const METHODS: [(NormMethod, &str); 4] = [
    (NormMethod::Dr, "dr"),
    (NormMethod::Dz, "dz"),
    (NormMethod::Ds, "ds"),
    (NormMethod::ClosedForm, "closed-form"),
];

fn candidate(base: &PhysicalConfig, source: (EnergySource, &'static str), method: (NormMethod, &'static str)) -> Candidate {
    let table = norms_table(base, (REFERENCE.len() - 1) as u32, source.0, method.0).expect("n within limit");
    let mut cells = Vec::new();
    for (n, (row, refs)) in table.rows.iter().zip(REFERENCE.iter()).enumerate() {
        for (j, reference) in refs.iter().enumerate() {
            let value = row[j + 1].clone();
            let rel_error = match (&value, reference) {
                (Cell::Num(v), Some(r)) => Some((v - r).abs() / r.abs()),
                _ => None,
            };
            let is_imaginary = value == Cell::Token(token::IMAGINARY);
            cells.push(CellReport {
                n: n as u32,
                column: COLUMNS[j].2,
                value,
                reference: reference.map(Num),
                rel_error: rel_error.map(Num),
                within_tolerance: rel_error.is_some_and(|e| e <= TOLERANCE),
                pattern_match: reference.is_none() == is_imaginary,
            });
        }
    }
    let real_entries = cells.iter().filter(|c| c.reference.is_some()).count();
    let matched_real = cells.iter().filter(|c| c.within_tolerance).count();
    let matched_pattern = cells.iter().filter(|c| c.pattern_match).count();
    Candidate {
        energy: source.1,
        method: method.1,
        real_entries,
        matched_real,
        pattern_entries: cells.len(),
        matched_pattern,
        reproduces_table: matched_real == real_entries && matched_pattern == cells.len(),
        cells,
    }
}

/// Compare every energy source and normalization method against the reference.
pub fn discrepancy_report(base: &PhysicalConfig) -> DiscrepancyReport {
    let combos: Vec<_> = SOURCES.iter().flat_map(|&s| METHODS.iter().map(move |&m| (s, m))).collect();
    let candidates: Vec<Candidate> = combos.par_iter().map(|&(s, m)| candidate(base, s, m)).collect();
    let best = candidates
        .iter()
        .max_by_key(|c| c.matched_real)
        .map(|c| (c.energy, c.method, c.matched_real))
        .expect("at least one candidate");
    let locked = candidates.iter().find(|c| c.reproduces_table).map(|c| (c.energy, c.method));
    DiscrepancyReport {
        parameters: Parameters {
            m0: Num(base.m0()),
            alpha: Num(base.alpha()),
            eta: Num(base.eta()),
            beta: Num(base.beta()),
        },
        tolerance: Num(TOLERANCE),
        candidates,
        best,
        locked,
    }
}
