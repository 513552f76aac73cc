//! Parameter bundles for regenerating each figure's data.
//!
//! A preset only supplies defaults: physical parameters, and scan, grid or
//! state choices for the commands that use them. Anything given explicitly
//! overrides it. Axis ranges are chosen to cover the plotted region since the
//! figures do not print them.

use crate::scan::{Axis, OutputKind, Param};
use kgpdm::spectrum::Branch;
use kgpdm::QuantumNumbers;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    /// Potentials and mass profile versus r.
    Fig1,
    /// s-state densities, plus branch.
    Fig2,
    /// Effect of m1 on a plus-branch state.
    Fig3,
    /// Effect of m1 on a minus-branch state.
    Fig4,
    /// Plus and minus densities compared.
    Fig5,
    /// Level curves over (m1, alpha).
    Fig6,
    /// Level curves over (eta, alpha).
    Fig7,
    /// Energies versus eta.
    Fig8,
    /// Energies versus alpha.
    Fig9,
    /// Energies versus alpha for two couplings (solid series assumed at eta = 0.01).
    Fig10,
    /// Schrödinger energies versus alpha.
    Fig11,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanDefaults {
    pub vary1: Axis,
    pub vary2: Option<Axis>,
    pub qn_list: Vec<QuantumNumbers>,
    pub outputs: Vec<OutputKind>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveDefaults {
    pub qn: QuantumNumbers,
    pub branch: Branch,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialDefaults {
    pub r_min: f64,
    pub r_max: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PresetSpec {
    pub params: Vec<(&'static str, f64)>,
    pub scan: Option<ScanDefaults>,
    pub wave: Option<WaveDefaults>,
    pub potential: Option<PotentialDefaults>,
}

const FOUR_STATES: [(u32, u32); 4] = [(1, 0), (1, 1), (2, 0), (2, 2)];

fn axis(p: Param, lo: f64, hi: f64, count: usize) -> Axis {
    Axis::new(p, lo, hi, count).expect("preset axes are valid")
}

fn states(list: &[(u32, u32)]) -> Vec<QuantumNumbers> {
    list.iter().map(|&(n, l)| QuantumNumbers::new(n, l)).collect()
}

fn wave(n: u32, branch: Branch) -> Option<WaveDefaults> {
    Some(WaveDefaults {
        qn: QuantumNumbers::new(n, 0),
        branch,
    })
}

impl Preset {
    pub fn spec(self) -> PresetSpec {
        let table = vec![("alpha", 0.01), ("eta", 0.1), ("m0", 1.0)];
        let energies = vec![OutputKind::Closed];
        match self {
            Preset::Fig1 => PresetSpec {
                params: vec![("alpha", 0.3), ("eta", 0.25), ("m1", 0.1)],
                potential: Some(PotentialDefaults {
                    r_min: 0.1,
                    r_max: 10.0,
                    samples: 100,
                }),
                ..Default::default()
            },
            Preset::Fig2 => PresetSpec {
                params: [table, vec![("m1", 0.0)]].concat(),
                wave: wave(0, Branch::Plus),
                ..Default::default()
            },
            Preset::Fig3 | Preset::Fig4 => PresetSpec {
                params: [table, vec![("m1", 0.1)]].concat(),
                wave: wave(1, if self == Preset::Fig3 { Branch::Plus } else { Branch::Minus }),
                ..Default::default()
            },
            Preset::Fig5 => PresetSpec {
                params: [table, vec![("m1", 0.1)]].concat(),
                wave: wave(3, Branch::Plus),
                ..Default::default()
            },
            Preset::Fig6 => PresetSpec {
                params: vec![("eta", 0.01)],
                scan: Some(ScanDefaults {
                    vary1: axis(Param::M1, 0.0, 0.3, 61),
                    vary2: Some(axis(Param::Alpha, 0.001, 0.3, 61)),
                    qn_list: states(&[(1, 0)]),
                    outputs: energies,
                }),
                ..Default::default()
            },
            Preset::Fig7 => PresetSpec {
                params: vec![("m1", 0.0)],
                scan: Some(ScanDefaults {
                    vary1: axis(Param::Eta, 0.001, 0.3, 61),
                    vary2: Some(axis(Param::Alpha, 0.0005, 0.03, 61)),
                    qn_list: states(&[(1, 0)]),
                    outputs: energies,
                }),
                ..Default::default()
            },
            Preset::Fig8 => PresetSpec {
                params: vec![("alpha", 0.01), ("m1", 0.1)],
                scan: Some(ScanDefaults {
                    vary1: axis(Param::Eta, 0.01, 6.0, 600),
                    vary2: None,
                    qn_list: states(&FOUR_STATES),
                    outputs: energies,
                }),
                ..Default::default()
            },
            Preset::Fig9 => PresetSpec {
                params: vec![("eta", 0.01), ("m1", 0.0)],
                scan: Some(ScanDefaults {
                    vary1: axis(Param::Alpha, 1e-4, 0.3, 300),
                    vary2: None,
                    qn_list: states(&FOUR_STATES),
                    outputs: energies,
                }),
                ..Default::default()
            },
            Preset::Fig10 => PresetSpec {
                params: vec![("eta", 0.01), ("m1", 0.0)],
                scan: Some(ScanDefaults {
                    vary1: axis(Param::Alpha, 1e-4, 0.3, 300),
                    vary2: None,
                    qn_list: states(&[(1, 0), (1, 1)]),
                    outputs: energies,
                }),
                ..Default::default()
            },
            Preset::Fig11 => PresetSpec {
                params: vec![("eta", 0.01), ("m1", 0.0)],
                scan: Some(ScanDefaults {
                    vary1: axis(Param::Alpha, 1e-4, 0.3, 300),
                    vary2: None,
                    qn_list: states(&FOUR_STATES),
                    outputs: vec![OutputKind::Schrodinger],
                }),
                ..Default::default()
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::ValueEnum;

    #[test]
    fn every_preset_builds() {
        for p in Preset::value_variants() {
            let s = p.spec();
            let cfg = s
                .params
                .iter()
                .try_fold(kgpdm::PhysicalConfig::default(), |c, &(k, v)| c.with_param(k, v))
                .unwrap();
            if let Some(scan) = s.scan {
                crate::scan::ScanSpec::new(scan.vary1, scan.vary2, cfg, scan.qn_list, scan.outputs).unwrap();
            }
        }
        assert_eq!(Preset::Fig10.to_possible_value().unwrap().get_name(), "fig10");
    }
}
