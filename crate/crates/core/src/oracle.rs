//! Shooting solver for the radial equation `u'' + k²(r) u = 0`, independent of
//! the hypergeometric solution.
//!
//! ```text
//! k²(r) = β²[(E - V_H(r))² - m(r)²c⁴] - l(l+1) C(r)
//! ```
//!
//! `C(r)` is either `1/r²` or its Greene-Aldrich replacement. The equation is
//! integrated in `x = ln r` with `u = sqrt(r) w`, which turns it into
//! `w'' = (1/4 - r²k²) w` and spreads the steps evenly over many decades of
//! `r`. The starting exponent comes from the `r → 0` limit of `r²k²`, measured
//! numerically rather than taken from the spectral formulas.

use crate::model::{self, PhysicalConfig, QuantumNumbers};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("non-finite k² at r = {0}")]
    NonFinite(f64),
    #[error("attractive 1/r² singularity too strong (r²k² → {0} > 1/4)")]
    FallToCentre(f64),
    #[error("invalid integration setup: {0}")]
    InvalidSetup(&'static str),
    #[error("bracket [{lo}, {hi}] does not contain level n = {n} (node counts {nodes_lo}..{nodes_hi})")]
    Bracket {
        lo: f64,
        hi: f64,
        n: u32,
        nodes_lo: u32,
        nodes_hi: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Centrifugal {
    Exact,
    GreeneAldrich,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingResult {
    pub energy: f64,
    pub nodes: u32,
    /// Sine of the angle between outward and inward `(w, w')` at the matching radius.
    pub terminal_mismatch: f64,
    pub iterations: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialIntegration {
    pub nodes: u32,
    /// `u'/u` at `r_max`.
    pub log_derivative: f64,
}

/// Innermost radius of every integration.
pub const R_START: f64 = 1e-6;
/// Smallest step count accepted by [`integrate_radial`].
pub const MIN_STEPS: usize = 10_000;

fn k_sq(r: f64, e: f64, l_term: f64, cfg: &PhysicalConfig, centrifugal: Centrifugal) -> f64 {
    let v = model::hulthen_unchecked(r, cfg);
    let mc2 = model::mass_unchecked(r, cfg) * cfg.c() * cfg.c();
    let c = match centrifugal {
        Centrifugal::Exact => 1.0 / (r * r),
        Centrifugal::GreeneAldrich => model::greene_aldrich_unchecked(r, cfg.alpha()),
    };
    cfg.beta().powi(2) * ((e - v) * (e - v) - mc2 * mc2) - l_term * c
}

pub fn effective_wavenumber_sq(
    r: f64,
    energy: f64,
    qn: QuantumNumbers,
    cfg: &PhysicalConfig,
    centrifugal: Centrifugal,
) -> Result<f64, OracleError> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(OracleError::NonPositiveRadius(r));
    }
    let k = k_sq(r, energy, qn.centrifugal(), cfg, centrifugal);
    if k.is_finite() {
        Ok(k)
    } else {
        Err(OracleError::NonFinite(r))
    }
}

/// Fixed problem data for one energy.
struct Problem<'a> {
    energy: f64,
    l_term: f64,
    cfg: &'a PhysicalConfig,
    centrifugal: Centrifugal,
}

impl Problem<'_> {
    /// `1/4 - r²k²` at `x = ln r`.
    fn q(&self, x: f64) -> f64 {
        let r = x.exp();
        0.25 - r * r * k_sq(r, self.energy, self.l_term, self.cfg, self.centrifugal)
    }

    /// Exponent `s` of the regular solution `u ~ r^s` near the origin.
    fn origin_exponent(&self) -> Result<f64, OracleError> {
        let f = |r: f64| r * r * k_sq(r, self.energy, self.l_term, self.cfg, self.centrifugal);
        // linear extrapolation removes the O(r) correction
        let c0 = 2.0 * f(R_START) - f(2.0 * R_START);
        if !c0.is_finite() {
            return Err(OracleError::NonFinite(R_START));
        }
        // rounding slack for the borderline 𝓛 = 0 case
        if c0 > 0.25 + 1e-9 {
            return Err(OracleError::FallToCentre(c0));
        }
        Ok(0.5 + (0.25 - c0).max(0.0).sqrt())
    }
}

/// RK4 step for `(w, w')' = (w', q w)`.
fn rk4(p: &Problem, x: f64, h: f64, w: f64, dw: f64, q0: f64) -> (f64, f64, f64) {
    let qm = p.q(x + 0.5 * h);
    let q1 = p.q(x + h);
    let k1w = dw;
    let k1d = q0 * w;
    let k2w = dw + 0.5 * h * k1d;
    let k2d = qm * (w + 0.5 * h * k1w);
    let k3w = dw + 0.5 * h * k2d;
    let k3d = qm * (w + 0.5 * h * k2w);
    let k4w = dw + h * k3d;
    let k4d = q1 * (w + h * k3w);
    (
        w + h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w),
        dw + h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d),
        q1,
    )
}

const RESCALE: f64 = 1e150;

/// Integrate from `x0` to `x1` in `steps` equal steps, counting sign changes of
/// `w`. `visit` sees `(x, w, w')` after each step (before any rescaling).
fn sweep<F: FnMut(f64, f64, f64)>(
    p: &Problem,
    x0: f64,
    x1: f64,
    steps: usize,
    mut w: f64,
    mut dw: f64,
    mut visit: F,
) -> Result<(u32, f64, f64), OracleError> {
    let h = (x1 - x0) / steps as f64;
    let mut q = p.q(x0);
    let mut nodes = 0;
    let mut sign = w.signum();
    for i in 0..steps {
        let x = x0 + i as f64 * h;
        let (nw, nd, nq) = rk4(p, x, h, w, dw, q);
        if !(nw.is_finite() && nd.is_finite()) {
            return Err(OracleError::NonFinite((x + h).exp()));
        }
        w = nw;
        dw = nd;
        q = nq;
        visit(x + h, w, dw);
        if w != 0.0 && w.signum() != sign {
            nodes += 1;
            sign = w.signum();
        }
        if w.abs() > RESCALE || dw.abs() > RESCALE {
            w /= RESCALE;
            dw /= RESCALE;
        }
    }
    Ok((nodes, w, dw))
}

/// Outward integration from [`R_START`] to `r_max`; returns the node count and
/// the terminal `u'/u`.
pub fn integrate_radial(
    energy: f64,
    qn: QuantumNumbers,
    cfg: &PhysicalConfig,
    centrifugal: Centrifugal,
    r_max: f64,
    steps: usize,
) -> Result<RadialIntegration, OracleError> {
    if !(r_max > 2.0 * R_START && r_max.is_finite()) {
        return Err(OracleError::InvalidSetup("r_max must exceed the start radius"));
    }
    if steps < MIN_STEPS {
        return Err(OracleError::InvalidSetup("at least 10^4 steps required"));
    }
    let p = Problem {
        energy,
        l_term: qn.centrifugal(),
        cfg,
        centrifugal,
    };
    let s = p.origin_exponent()?;
    let (nodes, w, dw) = sweep(&p, R_START.ln(), r_max.ln(), steps, 1.0, s - 0.5, |_, _, _| {})?;
    Ok(RadialIntegration {
        nodes,
        log_derivative: (0.5 + dw / w) / r_max,
    })
}

/// Integration plan for one energy: outer radius and step count.
#[derive(Debug, Clone, Copy)]
struct Plan {
    r_max: f64,
    steps: usize,
}

const R_CAP: f64 = 1e9;
/// Largest accepted `h * r * kappa` in forbidden regions.
const STIFFNESS: f64 = 0.25;

fn plan(energy: f64, cfg: &PhysicalConfig) -> Plan {
    let mc2 = cfg.rest_energy();
    let kappa = cfg.beta() * ((mc2 - energy) * (mc2 + energy)).max(0.0).sqrt();
    // beyond 12/alpha every potential and mass term is below e^-24 of its scale
    let r_pot = 12.0 / cfg.alpha();
    let r_max = if kappa > 0.0 {
        (r_pot + 40.0 / kappa).min(R_CAP)
    } else {
        R_CAP
    };
    let span = r_max.ln() - R_START.ln();
    let stiff = (r_max * kappa).max(1.0);
    let steps = ((span * stiff / STIFFNESS).ceil() as usize).clamp(20_000, 2_000_000);
    Plan { r_max, steps }
}

fn nodes_at(energy: f64, qn: QuantumNumbers, cfg: &PhysicalConfig, centrifugal: Centrifugal) -> Result<u32, OracleError> {
    let pl = plan(energy, cfg);
    Ok(integrate_radial(energy, qn, cfg, centrifugal, pl.r_max, pl.steps)?.nodes)
}

/// Eigenvalue with `n` nodes inside `(lo, hi)`, `hi < m0c²`, by node-count
/// bisection. The matching defect against an inward solution started on the
/// decaying tail is reported as a diagnostic.
pub fn shoot_energy(
    qn: QuantumNumbers,
    cfg: &PhysicalConfig,
    centrifugal: Centrifugal,
    (lo, hi): (f64, f64),
) -> Result<ShootingResult, OracleError> {
    let mc2 = cfg.rest_energy();
    if !(lo < hi && lo > -mc2 && hi < mc2) {
        return Err(OracleError::InvalidSetup("bracket must satisfy -m0c² < lo < hi < m0c²"));
    }
    let nodes_lo = nodes_at(lo, qn, cfg, centrifugal)?;
    let nodes_hi = nodes_at(hi, qn, cfg, centrifugal)?;
    if !(nodes_lo <= qn.n && nodes_hi > qn.n) {
        return Err(OracleError::Bracket {
            lo,
            hi,
            n: qn.n,
            nodes_lo,
            nodes_hi,
        });
    }
    let (mut a, mut b) = (lo, hi);
    let mut iterations = 0;
    while iterations < 200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        iterations += 1;
        if nodes_at(mid, qn, cfg, centrifugal)? > qn.n {
            b = mid;
        } else {
            a = mid;
        }
    }
    let energy = 0.5 * (a + b);
    let nodes = nodes_at(a, qn, cfg, centrifugal)?;
    let terminal_mismatch = match_defect(energy, qn, cfg, centrifugal)?;
    Ok(ShootingResult {
        energy,
        nodes,
        terminal_mismatch,
        iterations,
    })
}

/// Outward and inward solutions on the plan grid, joined at the outermost
/// classical turning point.
struct Joined {
    xs: Vec<f64>,
    w: Vec<f64>,
    dw: Vec<f64>,
    defect: f64,
}

fn join(energy: f64, qn: QuantumNumbers, cfg: &PhysicalConfig, centrifugal: Centrifugal) -> Result<Joined, OracleError> {
    let pl = plan(energy, cfg);
    let p = Problem {
        energy,
        l_term: qn.centrifugal(),
        cfg,
        centrifugal,
    };
    let (x0, x1) = (R_START.ln(), pl.r_max.ln());
    let h = (x1 - x0) / pl.steps as f64;
    let xs: Vec<f64> = (0..=pl.steps).map(|i| x0 + i as f64 * h).collect();
    // matching index: last grid point where the motion is classically allowed
    let m = (0..=pl.steps)
        .rev()
        .find(|&i| p.q(xs[i]) < 0.0)
        .unwrap_or(pl.steps / 2)
        .clamp(1, pl.steps - 1);

    let s = p.origin_exponent()?;
    let mut out = vec![(1.0, s - 0.5)];
    sweep(&p, x0, xs[m], m, 1.0, s - 0.5, |_, w, dw| out.push((w, dw)))?;
    unscale(&mut out);

    let r_end = pl.r_max;
    let tail = -(-k_sq(r_end, energy, qn.centrifugal(), cfg, centrifugal)).max(0.0).sqrt();
    let start = r_end * tail - 0.5;
    let mut inward = vec![(1.0, start)];
    sweep(&p, x1, xs[m], pl.steps - m, 1.0, start, |_, w, dw| inward.push((w, dw)))?;
    unscale(&mut inward);
    inward.reverse();

    let (wo, dwo) = out[m];
    let (wi, dwi) = inward[0];
    let defect = (dwo * wi - dwi * wo) / ((wo * wo + dwo * dwo).sqrt() * (wi * wi + dwi * dwi).sqrt());
    let k = wo / wi;
    let mut w = Vec::with_capacity(pl.steps + 1);
    let mut dw = Vec::with_capacity(pl.steps + 1);
    for &(a, b) in &out[..m] {
        w.push(a);
        dw.push(b);
    }
    for &(a, b) in &inward {
        w.push(k * a);
        dw.push(k * b);
    }
    Ok(Joined { xs, w, dw, defect })
}

/// Put a swept sequence on one scale. An entry above [`RESCALE`] marks the
/// step after which the sweep divided by it, so it and everything before it
/// are shrunk to match the tail.
fn unscale(v: &mut [(f64, f64)]) {
    let mut scale = 1.0;
    for e in v.iter_mut().rev() {
        if e.0.abs() > RESCALE || e.1.abs() > RESCALE {
            scale /= RESCALE;
        }
        e.0 *= scale;
        e.1 *= scale;
    }
}

fn match_defect(energy: f64, qn: QuantumNumbers, cfg: &PhysicalConfig, centrifugal: Centrifugal) -> Result<f64, OracleError> {
    Ok(join(energy, qn, cfg, centrifugal)?.defect)
}

/// Eigenfunction `u(r)` at a converged energy, sampled on `r_grid` and
/// normalized to `∫ u² dr = 1`, positive near the origin.
pub fn eigenfunction(
    energy: f64,
    qn: QuantumNumbers,
    cfg: &PhysicalConfig,
    centrifugal: Centrifugal,
    r_grid: &[f64],
) -> Result<Vec<f64>, OracleError> {
    let j = join(energy, qn, cfg, centrifugal)?;
    // ∫ u² dr = ∫ r² w² dx, trapezoid on the uniform x grid
    let h = j.xs[1] - j.xs[0];
    let mut norm = 0.0;
    for (i, (&x, &w)) in j.xs.iter().zip(&j.w).enumerate() {
        let f = (2.0 * x).exp() * w * w;
        norm += if i == 0 || i + 1 == j.xs.len() { 0.5 * f } else { f };
    }
    let norm = (norm * h).sqrt();
    let sign = j.w[0].signum();
    let last = j.xs.len() - 1;
    r_grid
        .iter()
        .map(|&r| {
            if r.is_nan() || r <= 0.0 {
                return Err(OracleError::NonPositiveRadius(r));
            }
            let x = r.ln();
            if x <= j.xs[0] || x >= j.xs[last] {
                return Ok(0.0);
            }
            let i = (((x - j.xs[0]) / h) as usize).min(last - 1);
            // cubic Hermite on (w, w') in x
            let t = (x - j.xs[i]) / h;
            let (h00, h10, h01, h11) = (
                (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t),
                t * (1.0 - t) * (1.0 - t),
                t * t * (3.0 - 2.0 * t),
                t * t * (t - 1.0),
            );
            let w = h00 * j.w[i] + h10 * h * j.dw[i] + h01 * j.w[i + 1] + h11 * h * j.dw[i + 1];
            Ok(sign * r.sqrt() * w / norm)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{self, Branch};

    fn cfg(alpha: f64, eta: f64, m1: f64) -> PhysicalConfig {
        PhysicalConfig::new(1.0, m1, alpha, eta, 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn wavenumber_values() {
        let qn = QuantumNumbers::new(0, 0);
        let c = cfg(0.1, 0.0, 0.0);
        for r in [0.1, 1.0, 10.0] {
            let k = effective_wavenumber_sq(r, 0.6, qn, &c, Centrifugal::Exact).unwrap();
            assert!((k - (0.36 - 1.0)).abs() < 1e-15);
            assert_eq!(effective_wavenumber_sq(r, 1.0, qn, &c, Centrifugal::Exact).unwrap(), 0.0);
        }
        let qn = QuantumNumbers::new(0, 1);
        let c = cfg(1e-4, 0.0, 0.0);
        let a = effective_wavenumber_sq(1.0, 0.5, qn, &c, Centrifugal::Exact).unwrap();
        let b = effective_wavenumber_sq(1.0, 0.5, qn, &c, Centrifugal::GreeneAldrich).unwrap();
        assert!(((a - b) / a).abs() < 1e-6);
        assert!(effective_wavenumber_sq(0.0, 0.5, qn, &c, Centrifugal::Exact).is_err());
    }

    #[test]
    fn node_staircase() {
        let qn = QuantumNumbers::new(1, 0);
        let c = cfg(0.01, 0.1, 0.0);
        let e1 = spectrum::energy_exact(qn, &c, Branch::Plus).unwrap().value().unwrap();
        let pl = plan(0.2, &c);
        assert_eq!(integrate_radial(0.2, qn, &c, Centrifugal::GreeneAldrich, pl.r_max, pl.steps).unwrap().nodes, 0);
        let above = e1 + 1e-7;
        let pl = plan(above, &c);
        let r = integrate_radial(above, qn, &c, Centrifugal::GreeneAldrich, pl.r_max, pl.steps).unwrap();
        assert_eq!(r.nodes, 2);
        let mut last = 0;
        for i in 1..200 {
            let e = 0.99 + 0.01 * i as f64 / 200.0;
            let n = nodes_at(e, qn, &c, Centrifugal::GreeneAldrich).unwrap();
            assert!(n >= last);
            last = n;
        }
    }

    #[test]
    fn rejects_bad_setup() {
        let qn = QuantumNumbers::new(0, 0);
        let c = cfg(0.01, 0.1, 0.0);
        assert!(integrate_radial(0.5, qn, &c, Centrifugal::Exact, 100.0, 100).is_err());
        assert!(shoot_energy(qn, &c, Centrifugal::Exact, (0.5, 1.0)).is_err());
        assert!(matches!(
            shoot_energy(QuantumNumbers::new(2, 1), &c, Centrifugal::GreeneAldrich, (0.0, 1.0 - 1e-9)),
            Err(OracleError::Bracket { .. })
        ));
    }

    #[test]
    fn shooting_reproduces_exact_level() {
        let qn = QuantumNumbers::new(1, 0);
        let c = cfg(0.01, 0.1, 0.0);
        let exact = spectrum::energy_exact(qn, &c, Branch::Plus).unwrap().value().unwrap();
        let s = shoot_energy(qn, &c, Centrifugal::GreeneAldrich, (0.0, 1.0 - 1e-9)).unwrap();
        assert!(((s.energy - exact) / exact).abs() < 1e-4);
        assert_eq!(s.nodes, 1);
        assert!(s.terminal_mismatch.abs() < 1e-8, "{}", s.terminal_mismatch);
    }

    #[test]
    fn step_doubling_is_stable() {
        let qn = QuantumNumbers::new(0, 0);
        let c = cfg(0.01, 0.1, 0.0);
        let e = spectrum::energy_exact(qn, &c, Branch::Plus).unwrap().value().unwrap();
        let pl = plan(e, &c);
        let a = integrate_radial(e, qn, &c, Centrifugal::GreeneAldrich, pl.r_max, pl.steps).unwrap();
        let b = integrate_radial(e, qn, &c, Centrifugal::GreeneAldrich, pl.r_max, 2 * pl.steps).unwrap();
        assert!((a.log_derivative - b.log_derivative).abs() < 1e-8);
    }
}
