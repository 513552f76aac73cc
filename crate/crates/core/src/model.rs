//! Physical parameters, potentials and the position-dependent mass profile.
//!
//! ```text
//! V_Y(r) = -eta exp(-alpha r) / r
//! V_H(r) = -2 alpha eta exp(-2 alpha r) / (1 - exp(-2 alpha r))
//! m(r)   = m0 + m1 / (exp(2 alpha r) - 1)
//! ```
//!
//! Energies are in units where `m0 c^2` sets the scale. `beta` plays the role
//! of `1/(hbar c)` but is kept as an independent field.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("screening parameter must be positive, got {0}")]
    NonPositiveAlpha(f64),
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
}

/// Validated set of physical parameters.
///
/// Fields are private so every instance satisfies the invariants; use
/// [`PhysicalConfig::new`] or the `with_*` builders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConfig {
    m0: f64,
    m1: f64,
    alpha: f64,
    eta: f64,
    beta: f64,
    hbar: f64,
    c: f64,
}

impl Default for PhysicalConfig {
    /// Table parameters: m0 = 1, m1 = 0, alpha = 0.01, eta = 0.1, beta = hbar = c = 1.
    fn default() -> Self {
        Self {
            m0: 1.0,
            m1: 0.0,
            alpha: 0.01,
            eta: 0.1,
            beta: 1.0,
            hbar: 1.0,
            c: 1.0,
        }
    }
}

fn check(name: &'static str, value: f64, strictly_positive: bool) -> Result<f64, ModelError> {
    if !value.is_finite() {
        return Err(ModelError::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        });
    }
    if strictly_positive && value <= 0.0 {
        return Err(ModelError::InvalidParameter {
            name,
            value,
            reason: "must be > 0",
        });
    }
    if !strictly_positive && value < 0.0 {
        return Err(ModelError::InvalidParameter {
            name,
            value,
            reason: "must be >= 0",
        });
    }
    Ok(value)
}

impl PhysicalConfig {
    pub fn new(
        m0: f64,
        m1: f64,
        alpha: f64,
        eta: f64,
        beta: f64,
        hbar: f64,
        c: f64,
    ) -> Result<Self, ModelError> {
        Ok(Self {
            m0: check("m0", m0, true)?,
            m1: check("m1", m1, false)?,
            alpha: check("alpha", alpha, true)?,
            eta: check("eta", eta, false)?,
            beta: check("beta", beta, true)?,
            hbar: check("hbar", hbar, true)?,
            c: check("c", c, true)?,
        })
    }

    pub fn with_m0(self, v: f64) -> Result<Self, ModelError> {
        Ok(Self { m0: check("m0", v, true)?, ..self })
    }
    pub fn with_m1(self, v: f64) -> Result<Self, ModelError> {
        Ok(Self { m1: check("m1", v, false)?, ..self })
    }
    pub fn with_alpha(self, v: f64) -> Result<Self, ModelError> {
        Ok(Self { alpha: check("alpha", v, true)?, ..self })
    }
    pub fn with_eta(self, v: f64) -> Result<Self, ModelError> {
        Ok(Self { eta: check("eta", v, false)?, ..self })
    }
    pub fn with_beta(self, v: f64) -> Result<Self, ModelError> {
        Ok(Self { beta: check("beta", v, true)?, ..self })
    }
    pub fn with_hbar(self, v: f64) -> Result<Self, ModelError> {
        Ok(Self { hbar: check("hbar", v, true)?, ..self })
    }
    pub fn with_c(self, v: f64) -> Result<Self, ModelError> {
        Ok(Self { c: check("c", v, true)?, ..self })
    }

    /// Set a parameter by name (`m0`, `m1`, `alpha`, `eta`, `beta`, `hbar`, `c`).
    pub fn with_param(self, name: &str, v: f64) -> Result<Self, ModelError> {
        match name {
            "m0" => self.with_m0(v),
            "m1" => self.with_m1(v),
            "alpha" => self.with_alpha(v),
            "eta" => self.with_eta(v),
            "beta" => self.with_beta(v),
            "hbar" => self.with_hbar(v),
            "c" => self.with_c(v),
            _ => Err(ModelError::InvalidParameter {
                name: "unknown",
                value: v,
                reason: "unknown parameter name",
            }),
        }
    }

    pub fn m0(&self) -> f64 {
        self.m0
    }
    pub fn m1(&self) -> f64 {
        self.m1
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn eta(&self) -> f64 {
        self.eta
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn hbar(&self) -> f64 {
        self.hbar
    }
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Rest energy `m0 c^2`.
    pub fn rest_energy(&self) -> f64 {
        self.m0 * self.c * self.c
    }
}

/// Radial and orbital quantum numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: u32,
}

impl QuantumNumbers {
    pub const fn new(n: u32, l: u32) -> Self {
        Self { n, l }
    }

    /// `l(l+1)` as a float.
    pub fn centrifugal(&self) -> f64 {
        let l = self.l as f64;
        l * (l + 1.0)
    }
}

fn positive_radius(r: f64) -> Result<f64, ModelError> {
    if r > 0.0 && r.is_finite() {
        Ok(r)
    } else {
        Err(ModelError::NonPositiveRadius(r))
    }
}

/// `1/(exp(x) - 1)` without cancellation for small `x`.
pub(crate) fn inv_expm1(x: f64) -> f64 {
    if x > 700.0 {
        (-x).exp()
    } else {
        1.0 / x.exp_m1()
    }
}

pub fn yukawa_exact(r: f64, cfg: &PhysicalConfig) -> Result<f64, ModelError> {
    let r = positive_radius(r)?;
    Ok(-cfg.eta * (-cfg.alpha * r).exp() / r)
}

/// Hulthén form of the Yukawa potential; equals `-2 alpha eta / (exp(2 alpha r) - 1)`.
pub fn yukawa_hulthen(r: f64, cfg: &PhysicalConfig) -> Result<f64, ModelError> {
    let r = positive_radius(r)?;
    Ok(hulthen_unchecked(r, cfg))
}

pub(crate) fn hulthen_unchecked(r: f64, cfg: &PhysicalConfig) -> f64 {
    -2.0 * cfg.alpha * cfg.eta * inv_expm1(2.0 * cfg.alpha * r)
}

pub fn coulomb(r: f64, cfg: &PhysicalConfig) -> Result<f64, ModelError> {
    let r = positive_radius(r)?;
    Ok(-cfg.eta / r)
}

pub fn mass_profile(r: f64, cfg: &PhysicalConfig) -> Result<f64, ModelError> {
    let r = positive_radius(r)?;
    Ok(mass_unchecked(r, cfg))
}

pub(crate) fn mass_unchecked(r: f64, cfg: &PhysicalConfig) -> f64 {
    if cfg.m1 == 0.0 {
        cfg.m0
    } else {
        cfg.m0 + cfg.m1 * inv_expm1(2.0 * cfg.alpha * r)
    }
}

/// Greene-Aldrich replacement for `1/r^2`.
pub fn greene_aldrich_factor(r: f64, alpha: f64) -> Result<f64, ModelError> {
    let r = positive_radius(r)?;
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(ModelError::NonPositiveAlpha(alpha));
    }
    Ok(greene_aldrich_unchecked(r, alpha))
}

pub(crate) fn greene_aldrich_unchecked(r: f64, alpha: f64) -> f64 {
    let x = 2.0 * alpha * r;
    let z = -(-x).exp_m1();
    4.0 * alpha * alpha * (-x).exp() / (z * z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(alpha: f64, eta: f64, m1: f64) -> PhysicalConfig {
        PhysicalConfig::default()
            .with_alpha(alpha)
            .and_then(|c| c.with_eta(eta))
            .and_then(|c| c.with_m1(m1))
            .unwrap()
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(PhysicalConfig::default().with_alpha(0.0).is_err());
        assert!(PhysicalConfig::default().with_m0(-1.0).is_err());
        assert!(PhysicalConfig::default().with_m1(-0.1).is_err());
        assert!(PhysicalConfig::default().with_eta(-0.1).is_err());
        assert!(PhysicalConfig::default().with_beta(f64::NAN).is_err());
        assert!(PhysicalConfig::default().with_c(f64::INFINITY).is_err());
        assert!(PhysicalConfig::default().with_param("gamma", 1.0).is_err());
    }

    #[test]
    fn yukawa_exact_values() {
        assert_eq!(yukawa_exact(1.0, &cfg(0.3, 0.0, 0.0)).unwrap(), 0.0);
        let v = yukawa_exact(1.0, &cfg(0.3, 0.25, 0.0)).unwrap();
        assert!((v - (-0.25 * (-0.3f64).exp())).abs() < 1e-15);
        assert!((v + 0.185204).abs() < 1e-6);
        let v = yukawa_exact(1.0, &cfg(1e-8, 0.25, 0.0)).unwrap();
        assert!((v + 0.25).abs() < 1e-8);
        assert!(yukawa_exact(0.0, &cfg(0.3, 0.25, 0.0)).is_err());
    }

    #[test]
    fn hulthen_values() {
        assert_eq!(yukawa_hulthen(1.0, &cfg(0.3, 0.0, 0.0)).unwrap(), 0.0);
        let v = yukawa_hulthen(1.0, &cfg(1e-4, 0.25, 0.0)).unwrap();
        assert!((v / -0.25 - 1.0).abs() < 1e-3);
        let v = yukawa_hulthen(1.0, &cfg(0.3, 0.25, 0.0)).unwrap();
        let direct = -0.25 * 0.6 * (-0.6f64).exp() / (1.0 - (-0.6f64).exp());
        assert!((v - direct).abs() < 1e-15);
        assert!((v + 0.18243).abs() < 1e-4);
        let y = yukawa_exact(1.0, &cfg(0.3, 0.25, 0.0)).unwrap();
        assert!(((v - y) / y).abs() < 0.016);
        assert!(yukawa_hulthen(-1.0, &cfg(0.3, 0.25, 0.0)).is_err());
    }

    #[test]
    fn coulomb_values() {
        let c = cfg(0.3, 0.25, 0.0);
        assert_eq!(coulomb(2.0, &c).unwrap(), -0.125);
        assert_eq!(coulomb(0.5, &c).unwrap(), -0.5);
        assert_eq!(coulomb(1.0, &cfg(0.3, 0.0, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn mass_values() {
        assert_eq!(mass_profile(3.0, &cfg(0.3, 0.1, 0.0)).unwrap(), 1.0);
        let c = cfg(0.3, 0.1, 0.1);
        assert!((mass_profile(100.0 / 0.3, &c).unwrap() - 1.0).abs() < 1e-12);
        let m = mass_profile(0.01, &c).unwrap();
        let direct = 1.0 + 0.1 / ((0.006f64).exp() - 1.0);
        assert!((m - direct).abs() < 1e-12);
        // leading term m1/(2 alpha r) = 16.667, next correction -m1/2
        assert!((m - (1.0 + 16.617)).abs() < 1e-3);
        assert!(mass_profile(0.0, &c).is_err());
    }

    #[test]
    fn greene_aldrich_values() {
        assert!((greene_aldrich_factor(1.0, 1e-4).unwrap() - 1.0).abs() < 1e-6);
        assert!((greene_aldrich_factor(2.0, 1e-4).unwrap() / 0.25 - 1.0).abs() < 1e-6);
        let e = (-0.6f64).exp();
        let direct = 0.36 * e / ((1.0 - e) * (1.0 - e));
        let v = greene_aldrich_factor(1.0, 0.3).unwrap();
        assert!((v - direct).abs() < 1e-14);
        // quoted reference value 0.97055 is rounded; direct arithmetic gives 0.970532
        assert!((v - 0.97055).abs() < 1e-4);
        assert!(greene_aldrich_factor(1.0, 0.0).is_err());
        assert!(greene_aldrich_factor(0.0, 0.1).is_err());
        // far tail must not overflow
        assert!(greene_aldrich_factor(1e4, 1.0).unwrap() >= 0.0);
    }
}
