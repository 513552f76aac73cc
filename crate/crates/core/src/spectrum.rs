//! Eigenvalues of the Hulthén-approximated Klein-Gordon problem.
//!
//! With `y = exp(-2 alpha r)` the radial equation becomes hypergeometric with
//! exponents `±λ₂` at `r = ∞`, `(1 ± 𝓛)/2` at the origin and `±λ₁` at
//! `y = ∞`, where
//!
//! ```text
//! Λ   = -β²m0m1c⁴/(2α²) + β²m1²c⁴/(4α²) - β²η²
//! 𝓛   = sqrt(1 + 4l(l+1) + β²m1²c⁴/α² - 4β²η²)
//! λ₂² = β²(m0²c⁴ - E²)/(4α²)
//! λ₁² = λ₂² + Eβ²η/α + Λ
//! ```
//!
//! A bound state is regular at the origin and decays at infinity, which
//! forces `λ₁ = -(λ₂ + n + (1+𝓛)/2)` with `λ₂ > 0`. The residual used for the
//! exact spectrum is therefore
//!
//! ```text
//! g(E) = |λ₁| - λ₂ - n - (1+𝓛)/2
//! ```
//!
//! Taking both roots positive instead selects solutions that grow at infinity.
//!
//! The closed form, with `N = 2n + 1 + 𝓛` and `D = N² - 4Λ`, is
//!
//! ```text
//! E∓ = αη/(2(N² + β²η²)) [D ∓ N/(βη) sqrt(4β²m0²c⁴/α² (N² + β²η²) - D²)]
//! ```

use crate::model::{ModelError, PhysicalConfig, QuantumNumbers};
use crate::roots;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("energy {energy} outside the exponent domain (λ₁² = {lambda1_sq}, λ₂² = {lambda2_sq})")]
    OutOfDomain {
        energy: f64,
        lambda1_sq: f64,
        lambda2_sq: f64,
    },
    #[error("𝓛 is imaginary for l = {0}")]
    ImaginaryScriptL(u32),
    #[error("no {branch} bound state for n = {}, l = {}", qn.n, qn.l)]
    NoBoundState { qn: QuantumNumbers, branch: Branch },
    #[error("radicand does not change sign on [{lo}, {hi}]")]
    CriticalNotFound { lo: f64, hi: f64 },
    #[error("invalid search range [{lo}, {hi}]")]
    InvalidRange { lo: f64, hi: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A real number or the marker for a negative square-root argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaybeReal {
    Real(f64),
    Imaginary,
}

impl MaybeReal {
    pub fn real(self) -> Option<f64> {
        match self {
            MaybeReal::Real(v) => Some(v),
            MaybeReal::Imaginary => None,
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, MaybeReal::Real(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelStatus {
    Real,
    Imaginary,
}

/// One energy level; an imaginary level carries no value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub branch: Branch,
    pub status: LevelStatus,
    value: Option<f64>,
}

impl EnergyLevel {
    /// Panics if `value` is not finite.
    pub fn real(branch: Branch, value: f64) -> Self {
        assert!(value.is_finite(), "energy must be finite");
        Self {
            branch,
            status: LevelStatus::Real,
            value: Some(value),
        }
    }

    pub fn imaginary(branch: Branch) -> Self {
        Self {
            branch,
            status: LevelStatus::Imaginary,
            value: None,
        }
    }

    pub fn value(&self) -> Option<f64> {
        self.value
    }

    pub fn is_real(&self) -> bool {
        self.status == LevelStatus::Real
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyPair {
    pub e_plus: EnergyLevel,
    pub e_minus: EnergyLevel,
}

impl EnergyPair {
    pub fn get(&self, branch: Branch) -> EnergyLevel {
        match branch {
            Branch::Plus => self.e_plus,
            Branch::Minus => self.e_minus,
        }
    }
}

/// Spectral coefficients at a given energy.
///
/// `lambda1` and `xi*` follow the bound-state sign convention (`λ₁ ≤ 0`) and
/// are `None` when an exponent or `𝓛` is imaginary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralCoefficients {
    pub capital_lambda: f64,
    pub script_l: MaybeReal,
    pub lambda1_sq: f64,
    pub lambda2_sq: f64,
    pub xi1: Option<f64>,
    pub xi2: Option<f64>,
    pub radicand: MaybeReal,
}

impl SpectralCoefficients {
    pub fn evaluate(energy: f64, qn: QuantumNumbers, cfg: &PhysicalConfig) -> Self {
        let (lambda1_sq, lambda2_sq) = lambda_sq_pair(energy, qn, cfg);
        let script_l = script_l(qn.l, cfg);
        let (xi1, xi2) = match script_l {
            MaybeReal::Real(sl) if lambda1_sq >= 0.0 && lambda2_sq >= 0.0 => {
                let s = -lambda1_sq.sqrt() + lambda2_sq.sqrt();
                (Some(s + 0.5 * (1.0 + sl)), Some(s + 0.5 * (1.0 - sl)))
            }
            _ => (None, None),
        };
        Self {
            capital_lambda: capital_lambda(cfg),
            script_l,
            lambda1_sq,
            lambda2_sq,
            xi1,
            xi2,
            radicand: radicand(qn, cfg),
        }
    }
}

pub fn capital_lambda(cfg: &PhysicalConfig) -> f64 {
    let (b2, a2, c4) = (cfg.beta().powi(2), cfg.alpha().powi(2), cfg.c().powi(4));
    let (m0, m1, eta) = (cfg.m0(), cfg.m1(), cfg.eta());
    -b2 * m0 * m1 * c4 / (2.0 * a2) + b2 * m1 * m1 * c4 / (4.0 * a2) - b2 * eta * eta
}

fn script_l_sq(l: u32, cfg: &PhysicalConfig) -> f64 {
    let lf = l as f64;
    let (b2, c4) = (cfg.beta().powi(2), cfg.c().powi(4));
    1.0 + 4.0 * lf * (lf + 1.0) + b2 * cfg.m1().powi(2) * c4 / cfg.alpha().powi(2) - 4.0 * b2 * cfg.eta().powi(2)
}

pub fn script_l(l: u32, cfg: &PhysicalConfig) -> MaybeReal {
    let s = script_l_sq(l, cfg);
    if s >= 0.0 {
        MaybeReal::Real(s.sqrt())
    } else {
        MaybeReal::Imaginary
    }
}

/// `(λ₁², λ₂²)` at energy `E`. `qn` is accepted for symmetry with the other
/// spectral functions; neither square depends on it.
pub fn lambda_sq_pair(energy: f64, _qn: QuantumNumbers, cfg: &PhysicalConfig) -> (f64, f64) {
    let mc2 = cfg.rest_energy();
    let b2 = cfg.beta().powi(2);
    let a = cfg.alpha();
    let l2 = b2 * (mc2 - energy) * (mc2 + energy) / (4.0 * a * a);
    let l1 = l2 + energy * b2 * cfg.eta() / a + capital_lambda(cfg);
    (l1, l2)
}

/// The two terms `t1 - t2` of the radicand, for error estimates.
fn radicand_terms(qn: QuantumNumbers, cfg: &PhysicalConfig) -> Option<(f64, f64)> {
    let sl = script_l(qn.l, cfg).real()?;
    let big_n = 2.0 * qn.n as f64 + 1.0 + sl;
    let d = big_n * big_n - 4.0 * capital_lambda(cfg);
    let mc2 = cfg.rest_energy();
    let (b, a, eta) = (cfg.beta(), cfg.alpha(), cfg.eta());
    let t1 = 4.0 * b * b * mc2 * mc2 / (a * a) * (big_n * big_n + b * b * eta * eta);
    Some((t1, d * d))
}

pub fn radicand(qn: QuantumNumbers, cfg: &PhysicalConfig) -> MaybeReal {
    match radicand_terms(qn, cfg) {
        Some((t1, t2)) => MaybeReal::Real(t1 - t2),
        None => MaybeReal::Imaginary,
    }
}

/// Magnitude of the radicand below which its sign is rounding noise.
pub fn radicand_noise_floor(qn: QuantumNumbers, cfg: &PhysicalConfig) -> f64 {
    match radicand_terms(qn, cfg) {
        Some((t1, t2)) => 16.0 * f64::EPSILON * (t1.abs() + t2.abs()),
        None => 0.0,
    }
}

/// Scale of the radicand's two terms, used for relative tolerances.
pub fn radicand_scale(qn: QuantumNumbers, cfg: &PhysicalConfig) -> f64 {
    radicand_terms(qn, cfg).map_or(0.0, |(t1, t2)| t1.abs() + t2.abs())
}

/// Closed-form energies. A radicand within rounding noise of zero is treated
/// as zero so the two levels coincide exactly at a critical point.
pub fn energy_closed_form(qn: QuantumNumbers, cfg: &PhysicalConfig) -> EnergyPair {
    let imaginary = EnergyPair {
        e_plus: EnergyLevel::imaginary(Branch::Plus),
        e_minus: EnergyLevel::imaginary(Branch::Minus),
    };
    let Some((t1, t2)) = radicand_terms(qn, cfg) else {
        return imaginary;
    };
    let floor = 16.0 * f64::EPSILON * (t1.abs() + t2.abs());
    let rad = t1 - t2;
    let root = if rad.abs() <= floor {
        0.0
    } else if rad < 0.0 {
        return imaginary;
    } else {
        rad.sqrt()
    };
    let sl = script_l(qn.l, cfg).real().expect("checked by radicand_terms");
    let big_n = 2.0 * qn.n as f64 + 1.0 + sl;
    let d = big_n * big_n - 4.0 * capital_lambda(cfg);
    let (a, b, eta) = (cfg.alpha(), cfg.beta(), cfg.eta());
    let denom = 2.0 * (big_n * big_n + b * b * eta * eta);
    let centre = a * eta * d;
    let spread = a * big_n / b * root;
    EnergyPair {
        e_plus: EnergyLevel::real(Branch::Plus, (centre + spread) / denom),
        e_minus: EnergyLevel::real(Branch::Minus, (centre - spread) / denom),
    }
}

/// Quantization residual `g(E) = |λ₁| - λ₂ - n - (1+𝓛)/2`.
pub fn quantization_residual(energy: f64, qn: QuantumNumbers, cfg: &PhysicalConfig) -> Result<f64, SpectrumError> {
    let sl = script_l(qn.l, cfg).real().ok_or(SpectrumError::ImaginaryScriptL(qn.l))?;
    let (l1, l2) = lambda_sq_pair(energy, qn, cfg);
    if l1 < 0.0 || l2 < 0.0 {
        return Err(SpectrumError::OutOfDomain {
            energy,
            lambda1_sq: l1,
            lambda2_sq: l2,
        });
    }
    Ok(l1.sqrt() - l2.sqrt() - qn.n as f64 - 0.5 * (1.0 + sl))
}

/// Default number of scan cells used to bracket the exact root.
pub const SCAN_RESOLUTION: usize = 10_000;

/// Exact level from the quantization condition, scanning the branch's half
/// of `(-m0c², m0c²)` with [`SCAN_RESOLUTION`] cells.
pub fn energy_exact(qn: QuantumNumbers, cfg: &PhysicalConfig, branch: Branch) -> Result<EnergyLevel, SpectrumError> {
    energy_exact_with_resolution(qn, cfg, branch, SCAN_RESOLUTION)
}

pub fn energy_exact_with_resolution(
    qn: QuantumNumbers,
    cfg: &PhysicalConfig,
    branch: Branch,
    resolution: usize,
) -> Result<EnergyLevel, SpectrumError> {
    if script_l(qn.l, cfg).real().is_none() {
        return Ok(EnergyLevel::imaginary(branch));
    }
    let resolution = resolution.max(2);
    let mc2 = cfg.rest_energy();
    let g = |e: f64| quantization_residual(e, qn, cfg).ok();
    let energy_at = |i: usize| branch.sign() * mc2 * i as f64 / resolution as f64;

    let mut prev_e = energy_at(0);
    let mut prev_g = g(prev_e);
    for i in 1..=resolution {
        let e = energy_at(i);
        let ge = g(e);
        if let Some(root) = bracket_root(qn, cfg, (prev_e, prev_g), (e, ge)) {
            // a state at the continuum threshold is not bound
            if root.abs() < mc2 {
                return Ok(EnergyLevel::real(branch, root));
            }
        }
        prev_e = e;
        prev_g = ge;
    }
    Err(SpectrumError::NoBoundState { qn, branch })
}

/// Root inside one scan cell, if the residual changes sign there. Cells that
/// straddle the edge of the `λ₁² ≥ 0` domain are cut at that edge.
fn bracket_root(
    qn: QuantumNumbers,
    cfg: &PhysicalConfig,
    (e0, g0): (f64, Option<f64>),
    (e1, g1): (f64, Option<f64>),
) -> Option<f64> {
    let g = |e: f64| quantization_residual(e, qn, cfg);
    let ((a, ga), (b, gb)) = match (g0, g1) {
        (Some(x), Some(y)) => ((e0, x), (e1, y)),
        (None, None) => return None,
        (Some(x), None) | (None, Some(x)) => {
            let (inside, outside) = if g0.is_some() { (e0, e1) } else { (e1, e0) };
            let (lo, hi) = roots::bisect_predicate(|e| g(e).is_ok(), outside, inside);
            let edge = if g(lo).is_ok() { lo } else { hi };
            let ge = g(edge).ok()?;
            ((edge, ge), (inside, x))
        }
    };
    if ga == 0.0 {
        return Some(a);
    }
    if ga * gb > 0.0 {
        return None;
    }
    // the domain is an interval, so every point between a and b is valid
    Some(roots::refine(|e| g(e).unwrap_or(f64::NAN), a, b, ga, gb))
}

/// Parameter varied by [`critical_parameter`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vary {
    Eta,
    Alpha,
}

impl Vary {
    pub fn name(self) -> &'static str {
        match self {
            Vary::Eta => "eta",
            Vary::Alpha => "alpha",
        }
    }

    pub fn apply(self, cfg: &PhysicalConfig, value: f64) -> Result<PhysicalConfig, ModelError> {
        match self {
            Vary::Eta => cfg.with_eta(value),
            Vary::Alpha => cfg.with_alpha(value),
        }
    }
}

/// Number of cells scanned when the range endpoints do not already bracket
/// a sign change of the radicand.
const CRITICAL_SCAN: usize = 2000;

/// Value of the varied parameter at which the radicand crosses zero.
///
/// Bisection runs down to adjacent floats; the returned endpoint is the one
/// on the real side, so the closed-form levels there coincide.
pub fn critical_parameter(
    qn: QuantumNumbers,
    cfg: &PhysicalConfig,
    vary: Vary,
    (lo, hi): (f64, f64),
) -> Result<f64, SpectrumError> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(SpectrumError::InvalidRange { lo, hi });
    }
    vary.apply(cfg, lo)?;
    vary.apply(cfg, hi)?;
    // +1 real side, -1 imaginary side, None where 𝓛 is imaginary
    let side = |x: f64| -> Option<i8> {
        let c = vary.apply(cfg, x).ok()?;
        let (t1, t2) = radicand_terms(qn, &c)?;
        let floor = 16.0 * f64::EPSILON * (t1.abs() + t2.abs());
        Some(if t1 - t2 >= -floor { 1 } else { -1 })
    };

    let mut cell = None;
    if let (Some(a), Some(b)) = (side(lo), side(hi)) {
        if a != b {
            cell = Some((lo, hi, a));
        }
    }
    if cell.is_none() {
        let at = |i: usize| lo + (hi - lo) * i as f64 / CRITICAL_SCAN as f64;
        let mut prev = side(lo);
        for i in 1..=CRITICAL_SCAN {
            let cur = side(at(i));
            if let (Some(a), Some(b)) = (prev, cur) {
                if a != b {
                    cell = Some((at(i - 1), at(i), a));
                    break;
                }
            }
            prev = cur;
        }
    }
    let (a, b, side_a) = cell.ok_or(SpectrumError::CriticalNotFound { lo, hi })?;
    let (x0, x1) = roots::bisect_predicate(|x| side(x) != Some(side_a), a, b);
    Ok(if side_a == 1 { x0 } else { x1 })
}

/// Non-relativistic comparison energy.
pub fn schrodinger_energy(qn: QuantumNumbers, cfg: &PhysicalConfig) -> f64 {
    let (a, hbar, m0, eta) = (cfg.alpha(), cfg.hbar(), cfg.m0(), cfg.eta());
    let ll = qn.centrifugal();
    let k = (qn.n + qn.l + 1) as f64;
    let pref = a * a * hbar * hbar / (2.0 * m0);
    let bracket = (-2.0 * m0 * eta / (a * hbar * hbar) - k * k - ll) / (2.0 * k);
    pref * ll - pref * bracket * bracket
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(alpha: f64, eta: f64, m1: f64) -> PhysicalConfig {
        PhysicalConfig::new(1.0, m1, alpha, eta, 1.0, 1.0, 1.0).unwrap()
    }

    /// Exact roots of the squared quantization condition, solved as a
    /// quadratic in E independently of the residual scan.
    fn exact_quadratic(qn: QuantumNumbers, c: &PhysicalConfig) -> (f64, f64) {
        let sl = script_l(qn.l, c).real().unwrap();
        let nn = 2.0 * qn.n as f64 + 1.0 + sl;
        let d = nn * nn - 4.0 * capital_lambda(c);
        let (a, b, eta) = (c.alpha(), c.beta(), c.eta());
        let m = c.rest_energy();
        let rad = 4.0 * b * b * m * m * (nn * nn + 4.0 * b * b * eta * eta) / (a * a) - d * d;
        let pref = a * eta / (2.0 * (nn * nn + 4.0 * b * b * eta * eta));
        let s = nn / (b * eta) * rad.sqrt();
        (pref * (2.0 * d + s), pref * (2.0 * d - s))
    }

    #[test]
    fn capital_lambda_values() {
        assert!((capital_lambda(&cfg(0.01, 0.1, 0.0)) + 0.01).abs() < 1e-15);
        assert_eq!(capital_lambda(&cfg(0.01, 0.0, 0.0)), 0.0);
        assert!((capital_lambda(&cfg(0.01, 0.1, 0.1)) + 475.01).abs() < 1e-9);
    }

    #[test]
    fn script_l_values() {
        assert_eq!(script_l(0, &cfg(0.01, 0.0, 0.0)), MaybeReal::Real(1.0));
        assert_eq!(script_l(1, &cfg(0.01, 0.0, 0.0)), MaybeReal::Real(3.0));
        let v = script_l(0, &cfg(0.01, 0.1, 0.1)).real().unwrap();
        assert!((v - 100.96f64.sqrt()).abs() < 1e-12);
        assert!((v - 10.04789).abs() < 1e-5);
        assert_eq!(script_l(0, &cfg(0.01, 0.6, 0.0)), MaybeReal::Imaginary);
    }

    #[test]
    fn lambda_sq_values() {
        let qn = QuantumNumbers::new(0, 0);
        assert_eq!(lambda_sq_pair(1.0, qn, &cfg(0.01, 0.0, 0.0)), (0.0, 0.0));
        let (l1, l2) = lambda_sq_pair(0.0, qn, &cfg(0.01, 0.0, 0.0));
        assert!((l1 - 2500.0).abs() < 1e-9 && (l2 - 2500.0).abs() < 1e-9);
        let c = cfg(0.05, 0.2, 0.1);
        for e in [0.1, 0.5, 0.93] {
            assert_eq!(lambda_sq_pair(e, qn, &c).1, lambda_sq_pair(-e, qn, &c).1);
        }
    }

    #[test]
    fn radicand_values() {
        let qn = QuantumNumbers::new(1, 0);
        assert!(radicand(qn, &cfg(0.01, 1e-6, 0.0)).real().unwrap() > 0.0);
        for n in 0..4u32 {
            let c = cfg(0.01, 0.0, 0.0);
            let v = radicand(QuantumNumbers::new(n, 0), &c).real().unwrap();
            let k = 2.0 * n as f64 + 2.0;
            let expect = k * k * (4.0 / 1e-4 - k * k);
            assert!((v - expect).abs() <= 1e-12 * expect.abs());
        }
        assert_eq!(radicand(qn, &cfg(0.01, 0.6, 0.0)), MaybeReal::Imaginary);
    }

    #[test]
    fn closed_form_limits() {
        let qn = QuantumNumbers::new(1, 0);
        let p = energy_closed_form(qn, &cfg(1e-4, 1e-4, 0.0));
        assert!((p.e_plus.value().unwrap() - 1.0).abs() < 1e-3);
        assert!((p.e_minus.value().unwrap() + 1.0).abs() < 1e-3);
        // the PDM pulls both levels towards zero as alpha shrinks
        let mut last = f64::INFINITY;
        for a in [1e-3, 1e-4, 1e-5, 1e-6] {
            let p = energy_closed_form(qn, &cfg(a, 0.01, 0.1));
            let m = p.e_plus.value().unwrap().abs().max(p.e_minus.value().unwrap().abs());
            assert!(m < last);
            last = m;
        }
        assert!(last < 0.01);
    }

    #[test]
    fn closed_form_close_to_exact_at_table_point() {
        let qn = QuantumNumbers::new(1, 0);
        let c = cfg(0.01, 0.1, 0.0);
        let cf = energy_closed_form(qn, &c).e_plus.value().unwrap();
        let ex = energy_exact(qn, &c, Branch::Plus).unwrap().value().unwrap();
        assert!(((cf - ex) / ex).abs() < 1e-2);
        let res = quantization_residual(cf, qn, &c).unwrap();
        // nonzero, but well under one unit of n
        assert!(res != 0.0 && res.abs() < 1.0);
    }

    #[test]
    fn exact_matches_independent_quadratic() {
        let cases = [
            (0, 0, 0.01, 0.1, 0.0, 0.9958869075235536),
            (1, 0, 0.01, 0.1, 0.0, 0.9995414085873082),
            (2, 0, 0.01, 0.1, 0.0, 0.9999938282521068),
            (0, 1, 0.01, 0.1, 0.0, 0.9995485698301259),
            (1, 1, 0.01, 0.1, 0.0, 0.9999943206462417),
        ];
        for (n, l, a, eta, m1, golden) in cases {
            let qn = QuantumNumbers::new(n, l);
            let c = cfg(a, eta, m1);
            let e = energy_exact(qn, &c, Branch::Plus).unwrap().value().unwrap();
            let (q, _) = exact_quadratic(qn, &c);
            assert!((e - q).abs() < 1e-12, "{n},{l}: {e} vs {q}");
            assert!((e - golden).abs() < 1e-12);
            assert!(quantization_residual(e, qn, &c).unwrap().abs() < 1e-10);
        }
        for (n, a, eta, m1) in [(3, 0.01, 0.3, 0.0), (0, 0.1, 0.3, 0.001), (5, 0.001, 0.1, 0.0)] {
            let qn = QuantumNumbers::new(n, 0);
            let c = cfg(a, eta, m1);
            let e = energy_exact(qn, &c, Branch::Plus).unwrap().value().unwrap();
            let (q, _) = exact_quadratic(qn, &c);
            assert!((e - q).abs() < 1e-12 * q.abs().max(1.0), "{e} vs {q}");
        }
    }

    #[test]
    fn exact_reports_missing_states() {
        let c = cfg(0.01, 0.1, 0.0);
        assert!(matches!(
            energy_exact(QuantumNumbers::new(2, 1), &c, Branch::Plus),
            Err(SpectrumError::NoBoundState { .. })
        ));
        assert!(matches!(
            energy_exact(QuantumNumbers::new(0, 0), &c, Branch::Minus),
            Err(SpectrumError::NoBoundState { .. })
        ));
        assert!(matches!(
            energy_exact(QuantumNumbers::new(1, 0), &cfg(0.01, 0.1, 0.1), Branch::Plus),
            Err(SpectrumError::NoBoundState { .. })
        ));
        let l = energy_exact(QuantumNumbers::new(0, 0), &cfg(0.01, 0.6, 0.0), Branch::Plus).unwrap();
        assert_eq!(l.status, LevelStatus::Imaginary);
        assert_eq!(l.value(), None);
    }

    #[test]
    fn exact_independent_of_scan_resolution() {
        let c = cfg(0.01, 0.1, 0.0);
        for n in 0..3 {
            let qn = QuantumNumbers::new(n, 0);
            let a = energy_exact_with_resolution(qn, &c, Branch::Plus, 10_000).unwrap();
            let b = energy_exact_with_resolution(qn, &c, Branch::Plus, 100_000).unwrap();
            assert!((a.value().unwrap() - b.value().unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn residual_changes_sign_across_bracket() {
        let qn = QuantumNumbers::new(1, 0);
        let c = cfg(0.01, 0.1, 0.0);
        let e = energy_exact(qn, &c, Branch::Plus).unwrap().value().unwrap();
        let lo = quantization_residual(e - 1e-6, qn, &c).unwrap();
        let hi = quantization_residual(e + 1e-6, qn, &c).unwrap();
        assert!(lo * hi < 0.0);
        assert!(matches!(
            quantization_residual(2.0, qn, &c),
            Err(SpectrumError::OutOfDomain { .. })
        ));
    }

    #[test]
    fn xi_sum_identity() {
        let qn = QuantumNumbers::new(2, 1);
        let c = cfg(0.05, 0.2, 0.01);
        for e in [0.3, 0.7, 0.95] {
            let s = SpectralCoefficients::evaluate(e, qn, &c);
            let l1 = -s.lambda1_sq.sqrt();
            let l2 = s.lambda2_sq.sqrt();
            assert!((s.xi1.unwrap() + s.xi2.unwrap() - (2.0 * (l1 + l2) + 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn critical_eta_golden() {
        let qn = QuantumNumbers::new(1, 0);
        let c = cfg(0.01, 0.1, 0.1);
        // the radicand stays positive on (0, 1]
        assert!(matches!(
            critical_parameter(qn, &c, Vary::Eta, (1e-3, 1.0)),
            Err(SpectrumError::CriticalNotFound { .. })
        ));
        let eta = critical_parameter(qn, &c, Vary::Eta, (1e-3, 5.0)).unwrap();
        let at = c.with_eta(eta).unwrap();
        let rad = radicand(qn, &at).real().unwrap();
        assert!(rad.abs() <= 1e-6 * radicand_scale(qn, &at));
        let p = energy_closed_form(qn, &at);
        assert_eq!(p.e_plus.value(), p.e_minus.value());
        let beyond = energy_closed_form(qn, &c.with_eta(eta * (1.0 + 1e-6)).unwrap());
        assert!(!beyond.e_plus.is_real() && !beyond.e_minus.is_real());
        let before = energy_closed_form(qn, &c.with_eta(eta * (1.0 - 1e-6)).unwrap());
        assert!(before.e_plus.is_real() && before.e_minus.is_real());
        assert!((eta - CRITICAL_ETA_N1_L0).abs() < 1e-10, "{eta:.17}");
    }

    const CRITICAL_ETA_N1_L0: f64 = 3.831_796_316_840_39;

    #[test]
    fn schrodinger_values() {
        let c = cfg(0.1, 0.0, 0.0);
        let e0 = schrodinger_energy(QuantumNumbers::new(0, 0), &c);
        assert!((e0 + 0.00125).abs() < 1e-15);
        let e1 = schrodinger_energy(QuantumNumbers::new(1, 0), &c);
        assert!((e1 + 0.005).abs() < 1e-15);
        // the hydrogen-like limit is approached with relative error
        // (k² + l(l+1)) α/η, k = n + l + 1
        for n in 0..4 {
            for l in 0..3 {
                let qn = QuantumNumbers::new(n, l);
                let e = schrodinger_energy(qn, &cfg(1e-6, 0.1, 0.0));
                let k = (n + l + 1) as f64;
                let h = -0.01 / (2.0 * k * k);
                let lead = (k * k + qn.centrifugal()) * 1e-6 / 0.1;
                assert!((((e - h) / h).abs() - lead).abs() < 1e-2 * lead);
            }
        }
        let e = schrodinger_energy(QuantumNumbers::new(0, 0), &cfg(1e-6, 0.1, 0.0));
        assert!(((e + 0.005) / 0.005).abs() < 1e-4);
    }
}
