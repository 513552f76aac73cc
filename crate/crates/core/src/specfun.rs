//! Special functions: ln Γ, Pochhammer symbols and the Gauss hypergeometric
//! function ₂F₁ for real parameters.
//!
//! Series are capped at [`MAX_TERMS`]; running out of terms is an error, never
//! a silently truncated value.

use thiserror::Error;

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 10_000;

/// Relative size of the last term at which a series is considered converged.
pub const SERIES_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecfunError {
    #[error("gamma function pole at x = {0}")]
    Pole(f64),
    #[error("singular hypergeometric parameter c = {c} (zero Pochhammer denominator)")]
    SingularParameter { c: f64 },
    #[error("hypergeometric argument x = {0} outside [-1, 1)")]
    Domain(f64),
    #[error("series diverges at x = -1: c - a - b + 1 = {0} <= 0")]
    Divergent(f64),
    #[error("series did not converge within {terms} terms (last value {value})")]
    NoConvergence { terms: usize, value: f64 },
}

/// Value of a summed series with diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    pub converged: bool,
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
];

fn log_gamma_stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv;
    for c in STIRLING {
        series += c * p;
        p *= inv2;
    }
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}

/// `sin(pi x)` with argument reduction so integers give exact zeros.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor();
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    (std::f64::consts::PI * r).sin()
}

/// `ln |Γ(x)|`.
pub fn log_gamma(x: f64) -> Result<f64, SpecfunError> {
    if !x.is_finite() || is_nonpositive_integer(x) {
        return Err(SpecfunError::Pole(x));
    }
    if x < 0.5 {
        // reflection
        let s = sin_pi(x).abs();
        return Ok(std::f64::consts::PI.ln() - s.ln() - log_gamma(1.0 - x)?);
    }
    const SHIFT: f64 = 15.0;
    if x >= SHIFT {
        return Ok(log_gamma_stirling(x));
    }
    let mut prod = 1.0;
    let mut y = x;
    while y < SHIFT {
        prod *= y;
        y += 1.0;
    }
    Ok(log_gamma_stirling(y) - prod.ln())
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, `(a)_0 = 1`.
pub fn pochhammer(a: f64, k: u32) -> f64 {
    let mut p = 1.0;
    for j in 0..k {
        p *= a + j as f64;
    }
    p
}

/// Degree-`n` polynomial `₂F₁(-n, b; c; x)`, summed exactly.
pub fn hyp2f1_terminating(n: u32, b: f64, c: f64, x: f64) -> Result<f64, SpecfunError> {
    if (0..n).any(|j| c + j as f64 == 0.0) {
        return Err(SpecfunError::SingularParameter { c });
    }
    let nf = n as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - nf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
    }
    Ok(sum)
}

fn series(a: f64, b: f64, c: f64, x: f64) -> SeriesResult {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small_run = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
        if term == 0.0 {
            return SeriesResult {
                value: sum,
                terms_used: k + 2,
                converged: true,
            };
        }
        // two consecutive small terms guard against an accidental near-zero factor
        if term.abs() <= SERIES_TOL * sum.abs() {
            small_run += 1;
            if small_run == 2 {
                return SeriesResult {
                    value: sum,
                    terms_used: k + 2,
                    converged: true,
                };
            }
        } else {
            small_run = 0;
        }
    }
    SeriesResult {
        value: sum,
        terms_used: MAX_TERMS + 1,
        converged: false,
    }
}

/// Gauss series `₂F₁(a, b; c; x)` for `x ∈ [-1, 1)`.
///
/// For `x < -1/2` the Pfaff transformation
/// `₂F₁(a,b;c;x) = (1-x)^(-a) ₂F₁(a, c-b; c; x/(x-1))` moves the argument into
/// `[1/3, 1/2]`; at `x = -1` that is exactly `1/2`.
pub fn hyp2f1_at(a: f64, b: f64, c: f64, x: f64) -> Result<SeriesResult, SpecfunError> {
    if !(x.is_finite() && (-1.0..1.0).contains(&x)) {
        return Err(SpecfunError::Domain(x));
    }
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(SpecfunError::Domain(x));
    }
    if is_nonpositive_integer(c) {
        return Err(SpecfunError::SingularParameter { c });
    }
    if x == -1.0 && c - a - b + 1.0 <= 0.0 {
        return Err(SpecfunError::Divergent(c - a - b + 1.0));
    }
    for (p, q) in [(a, b), (b, a)] {
        if is_nonpositive_integer(p) && -p < MAX_TERMS as f64 {
            let n = (-p) as u32;
            let value = hyp2f1_terminating(n, q, c, x)?;
            return Ok(SeriesResult {
                value,
                terms_used: n as usize + 1,
                converged: true,
            });
        }
    }
    let res = if x < -0.5 {
        let inner = series(a, c - b, c, x / (x - 1.0));
        SeriesResult {
            value: (1.0 - x).powf(-a) * inner.value,
            ..inner
        }
    } else {
        series(a, b, c, x)
    };
    if res.converged {
        Ok(res)
    } else {
        Err(SpecfunError::NoConvergence {
            terms: res.terms_used,
            value: res.value,
        })
    }
}
