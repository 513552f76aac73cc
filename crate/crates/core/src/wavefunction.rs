//! Bound-state eigenfunctions, normalization and densities.
//!
//! In `z = 1 - exp(-2 alpha r)` the eigenfunction is
//!
//! ```text
//! phi(z) = z^p (1-z)^λ₂ ₂F₁(-n, 2λ₁ - n; 2p; z),   p = λ₁ - λ₂ - n
//! ```
//!
//! with `λ₁ = |λ₁|`. This is the hypergeometric solution written in the
//! variable `1/(1-z)` with the bound-state sign `λ₁ < 0`, carried over to `z`
//! by the polynomial inversion `F(-n,b;c;x) ∝ x^n F(-n,1-c-n;1-b-n;1/x)`.
//! At an exact eigenvalue `p = (1+𝓛)/2`; at an approximate energy `p` drifts
//! and the state may stop being normalizable.

use crate::model::{ModelError, PhysicalConfig, QuantumNumbers};
use crate::quad::{self, QuadError};
use crate::specfun::{self, SpecfunError};
use crate::spectrum::{self, Branch, EnergyLevel, MaybeReal, SpectrumError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WaveError {
    #[error("state is not normalizable ({0:?})")]
    NonNormalizable(StateClass),
    #[error("exponent square is negative (λ₁² = {lambda1_sq}, λ₂² = {lambda2_sq})")]
    ImaginaryExponent { lambda1_sq: f64, lambda2_sq: f64 },
    #[error("coordinate z = {0} outside (0, 1)")]
    Domain(f64),
    #[error("Σ vanishes; closed-form norm undefined")]
    SingularSigma,
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateClass {
    Normalizable,
    /// An exponent is imaginary (negative square or imaginary energy).
    ImaginaryNorm,
    /// Real exponents, but the function is not square-integrable.
    Divergent,
}

impl StateClass {
    pub fn token(self) -> &'static str {
        match self {
            StateClass::Normalizable => "normalizable",
            StateClass::ImaginaryNorm => "imaginary",
            StateClass::Divergent => "divergent",
        }
    }
}

/// Integration measure for normalization comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    /// `∫ |phi|² dr` (authoritative).
    Dr,
    /// `∫₀¹ |phi|² dz`.
    Dz,
    /// `∫₋₁¹ |(1-s)^p (1+s)^λ₂ F|² ds` with `s = 1 - 2z`.
    Ds,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Dr, Measure::Dz, Measure::Ds];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Dr => "dr",
            Measure::Dz => "dz",
            Measure::Ds => "ds",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Exponents {
    lambda1: f64,
    lambda2: f64,
    origin: f64,
}

/// A fully specified state. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSolution {
    pub qn: QuantumNumbers,
    pub cfg: PhysicalConfig,
    pub branch: Branch,
    pub energy: EnergyLevel,
    exponents: Option<Exponents>,
    class: StateClass,
    norm: Option<f64>,
}

impl WaveSolution {
    /// State at the exact eigenvalue of the requested branch.
    pub fn exact(qn: QuantumNumbers, cfg: &PhysicalConfig, branch: Branch) -> Result<Self, WaveError> {
        let level = spectrum::energy_exact(qn, cfg, branch)?;
        Self::from_level(qn, cfg, level)
    }

    /// State at the closed-form energy of the requested branch.
    pub fn closed_form(qn: QuantumNumbers, cfg: &PhysicalConfig, branch: Branch) -> Result<Self, WaveError> {
        let level = spectrum::energy_closed_form(qn, cfg).get(branch);
        Self::from_level(qn, cfg, level)
    }

    /// Build from any level; classification and `N′` are computed here.
    pub fn from_level(qn: QuantumNumbers, cfg: &PhysicalConfig, energy: EnergyLevel) -> Result<Self, WaveError> {
        let exponents = energy.value().and_then(|e| {
            let (l1, l2) = state_exponents(e, qn, cfg).ok()?;
            Some(Exponents {
                lambda1: l1,
                lambda2: l2,
                origin: l1 - l2 - qn.n as f64,
            })
        });
        let class = match exponents {
            None => StateClass::ImaginaryNorm,
            Some(x) if x.lambda2 > 0.0 && x.origin > 0.0 => StateClass::Normalizable,
            Some(_) => StateClass::Divergent,
        };
        let mut sol = Self {
            qn,
            cfg: *cfg,
            branch: energy.branch,
            energy,
            exponents,
            class,
            norm: None,
        };
        if class == StateClass::Normalizable {
            sol.norm = Some(norm_quadrature(&sol)?);
        }
        Ok(sol)
    }

    /// `|λ₁|`, if real.
    pub fn lambda1(&self) -> Option<f64> {
        self.exponents.map(|x| x.lambda1)
    }

    pub fn lambda2(&self) -> Option<f64> {
        self.exponents.map(|x| x.lambda2)
    }

    /// Power of `z` at the origin, `|λ₁| - λ₂ - n`.
    pub fn origin_exponent(&self) -> Option<f64> {
        self.exponents.map(|x| x.origin)
    }

    /// `N′` from quadrature; `None` unless normalizable.
    pub fn norm(&self) -> Option<f64> {
        self.norm
    }

    pub fn class(&self) -> StateClass {
        self.class
    }

    fn require_exponents(&self) -> Result<Exponents, WaveError> {
        self.exponents.ok_or(WaveError::NonNormalizable(self.class))
    }

    fn require_normalizable(&self) -> Result<Exponents, WaveError> {
        match self.class {
            StateClass::Normalizable => self.require_exponents(),
            c => Err(WaveError::NonNormalizable(c)),
        }
    }
}

/// Positive roots `(|λ₁|, λ₂)` at energy `E`.
pub fn state_exponents(energy: f64, qn: QuantumNumbers, cfg: &PhysicalConfig) -> Result<(f64, f64), WaveError> {
    let (l1, l2) = spectrum::lambda_sq_pair(energy, qn, cfg);
    if l1 < 0.0 || l2 < 0.0 {
        return Err(WaveError::ImaginaryExponent {
            lambda1_sq: l1,
            lambda2_sq: l2,
        });
    }
    Ok((l1.sqrt(), l2.sqrt()))
}

pub fn coordinate_map(r: f64, alpha: f64) -> Result<f64, WaveError> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(ModelError::NonPositiveRadius(r).into());
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(ModelError::NonPositiveAlpha(alpha).into());
    }
    Ok(-(-2.0 * alpha * r).exp_m1())
}

fn polynomial(x: &Exponents, n: u32, z: f64) -> Result<f64, WaveError> {
    Ok(specfun::hyp2f1_terminating(
        n,
        2.0 * x.lambda1 - n as f64,
        2.0 * x.origin,
        z,
    )?)
}

/// `phi(z)` without the `N′` factor.
pub fn phi_unnormalized(z: f64, sol: &WaveSolution) -> Result<f64, WaveError> {
    if !(z > 0.0 && z < 1.0) {
        return Err(WaveError::Domain(z));
    }
    let x = sol.require_exponents()?;
    Ok(z.powf(x.origin) * (1.0 - z).powf(x.lambda2) * polynomial(&x, sol.qn.n, z)?)
}

/// `phi` at radius `r`, with `1 - z` taken directly as `exp(-2 alpha r)`.
fn phi_at_r(r: f64, x: &Exponents, sol: &WaveSolution) -> Result<f64, WaveError> {
    let t = 2.0 * sol.cfg.alpha() * r;
    let z = -(-t).exp_m1();
    Ok(z.powf(x.origin) * (-x.lambda2 * t).exp() * polynomial(x, sol.qn.n, z)?)
}

const QUAD_TOL: f64 = 1e-10;
const QUAD_INTERVALS: usize = 4000;

/// `∫₀^∞ phi(r)² w(r) dr` for the measure's weight.
fn measure_integral(sol: &WaveSolution, x: &Exponents, measure: Measure) -> Result<f64, WaveError> {
    let a = sol.cfg.alpha();
    let scale = (1.0 + x.origin / x.lambda2).ln() / (2.0 * a) + (sol.qn.n as f64 + 1.0) / (2.0 * a * x.lambda2);
    let mut err = None;
    let weight = |r: f64| match measure {
        Measure::Dr => 1.0,
        Measure::Dz | Measure::Ds => 2.0 * a * (-2.0 * a * r).exp(),
    };
    let res = quad::integrate_semi_infinite(
        |r| {
            if r <= 0.0 {
                return 0.0;
            }
            match phi_at_r(r, x, sol) {
                Ok(v) => v * v * weight(r),
                Err(e) => {
                    err.get_or_insert(e);
                    0.0
                }
            }
        },
        0.0,
        scale,
        QUAD_TOL,
        0.0,
        QUAD_INTERVALS,
    );
    if let Some(e) = err {
        return Err(e);
    }
    let integral = res?.value;
    Ok(match measure {
        Measure::Ds => (2.0 * (x.origin + x.lambda2)).exp2() * 2.0 * integral,
        _ => integral,
    })
}

/// `N′ = (∫₀^∞ phi² dr)^(-1/2)` by adaptive quadrature.
pub fn norm_quadrature(sol: &WaveSolution) -> Result<f64, WaveError> {
    norm_in_measure(sol, Measure::Dr)
}

/// `N′` under an alternative measure, for comparisons.
pub fn norm_in_measure(sol: &WaveSolution, measure: Measure) -> Result<f64, WaveError> {
    let x = sol.require_normalizable()?;
    let integral = measure_integral(sol, &x, measure)?;
    if !(integral > 0.0 && integral.is_finite()) {
        return Err(WaveError::NonNormalizable(StateClass::Divergent));
    }
    Ok(1.0 / integral.sqrt())
}

/// Pole-free `Σ(n) = Σ_k (-n)_k (b)_k 2^-k / ((1+2λ₁)_k k!)`, `b = 2λ₁+2λ₂+n+1`,
/// with `λ₁`, `λ₂` as given.
pub fn sigma_sum_raw(n: u32, lambda1: f64, lambda2: f64, k_upper: u32) -> Result<f64, WaveError> {
    let b = 2.0 * lambda1 + 2.0 * lambda2 + n as f64 + 1.0;
    let c = 1.0 + 2.0 * lambda1;
    let mut sum = 0.0;
    for k in 0..=k_upper {
        let den = specfun::pochhammer(c, k);
        if den == 0.0 {
            return Err(SpecfunError::SingularParameter { c }.into());
        }
        let kf = k as f64;
        let fact: f64 = (1..=k).map(|j| j as f64).product();
        sum += specfun::pochhammer(-(n as f64), k) * specfun::pochhammer(b, k) * (-kf).exp2() / (den * fact);
    }
    Ok(sum)
}

/// `Σ(n)` of the state, using the positive roots.
pub fn sigma_sum(sol: &WaveSolution, k_upper: u32) -> Result<f64, WaveError> {
    let x = sol.require_exponents()?;
    sigma_sum_raw(sol.qn.n, x.lambda1, x.lambda2, k_upper)
}

/// Closed-form `N′` with the free index summed:
/// `|N′|² = Σ_k (2λ₁+2k+1) / (Σ² ₂F₁(-2λ₂, 1; 2λ₁+2k+2; -1))`.
pub fn norm_closed_form(sol: &WaveSolution) -> Result<MaybeReal, WaveError> {
    let Some(x) = sol.exponents else {
        return Ok(MaybeReal::Imaginary);
    };
    let sigma = sigma_sum(sol, sol.qn.n)?;
    if sigma == 0.0 {
        return Err(WaveError::SingularSigma);
    }
    let mut total = 0.0;
    for k in 0..=sol.qn.n {
        let kf = k as f64;
        let f = specfun::hyp2f1_at(-2.0 * x.lambda2, 1.0, 2.0 * x.lambda1 + 2.0 * kf + 2.0, -1.0)?.value;
        total += (2.0 * x.lambda1 + 2.0 * kf + 1.0) / (sigma * sigma * f);
    }
    Ok(if total >= 0.0 {
        MaybeReal::Real(total.sqrt())
    } else {
        MaybeReal::Imaginary
    })
}

pub fn classify_state(sol: &WaveSolution) -> StateClass {
    sol.class
}

/// `(r, N′² phi²)` on the grid.
pub fn density_profile(sol: &WaveSolution, r_grid: &[f64]) -> Result<Vec<(f64, f64)>, WaveError> {
    Ok(normalized_samples(sol, r_grid)?
        .into_iter()
        .map(|s| (s.r, s.phi * s.phi))
        .collect())
}

/// One sample of a normalized state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub r: f64,
    pub z: f64,
    pub phi: f64,
}

/// `N′ phi` on the grid, radii must be positive.
pub fn normalized_samples(sol: &WaveSolution, r_grid: &[f64]) -> Result<Vec<Sample>, WaveError> {
    let x = sol.require_normalizable()?;
    let norm = sol.norm.ok_or(WaveError::NonNormalizable(sol.class))?;
    r_grid
        .iter()
        .map(|&r| {
            let z = coordinate_map(r, sol.cfg.alpha())?;
            Ok(Sample {
                r,
                z,
                phi: norm * phi_at_r(r, &x, sol)?,
            })
        })
        .collect()
}

/// Radius beyond which the density is negligible (`e^-40` of the tail scale).
pub fn support_radius(sol: &WaveSolution) -> Option<f64> {
    let x = sol.exponents?;
    let a = sol.cfg.alpha();
    let peak = (1.0 + x.origin / x.lambda2).ln() / (2.0 * a);
    Some(peak + (40.0 + 4.0 * sol.qn.n as f64) / (2.0 * a * x.lambda2))
}
