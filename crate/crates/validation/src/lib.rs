//! Acceptance checks for `kgpdm`.
//!
//! Each check returns a [`Verdict`] instead of panicking, so a run reports
//! every criterion even when some of them fail.

use kgpdm::model::{self, PhysicalConfig, QuantumNumbers};
use kgpdm::oracle;
use kgpdm::specfun;
use kgpdm::spectrum::{self, Branch, MaybeReal, Vary};
use kgpdm::wavefunction::{self, StateClass, WaveSolution};
use kgpdm_cli::presets::Preset;
use kgpdm_cli::scan::{self, ScanSpec};
use kgpdm_cli::output::Cell;
use kgpdm_cli::{table, verify};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::Path;
use std::time::{Duration, Instant};

mod numerics;
use numerics::{grid, simpson, sign_changes};

pub const SEED: u64 = 0x6b67_7064_6d00;

#[derive(Debug, Clone)]
pub struct Verdict {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Verdict {
    pub fn line(&self) -> String {
        format!(
            "criterion {} {:<28} {} ({}) [{:.2} s / {} s]",
            self.id,
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.detail,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }
}

/// Run `check` and fold the time budget into its verdict.
fn timed(id: u8, name: &'static str, budget_s: u64, check: impl FnOnce() -> (bool, String)) -> Verdict {
    let start = Instant::now();
    let (ok, mut detail) = check();
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_s);
    if elapsed > budget {
        detail.push_str("; over time budget");
    }
    Verdict {
        id,
        name,
        pass: ok && elapsed <= budget,
        detail,
        elapsed,
        budget,
    }
}

fn cfg(alpha: f64, eta: f64, m1: f64) -> PhysicalConfig {
    PhysicalConfig::new(1.0, m1, alpha, eta, 1.0, 1.0, 1.0).expect("valid parameters")
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Normalization constants against the reference table; the full
/// comparison is written to `report` when given.
pub fn table_reproduction(report: Option<&Path>) -> Verdict {
    timed(1, "table reproduction", 30, || {
        let r = table::discrepancy_report(&PhysicalConfig::default());
        let mut detail = String::new();
        if let Some(path) = report {
            match serde_json::to_string_pretty(&r).map(|s| std::fs::write(path, s + "\n")) {
                Ok(Ok(())) => detail = format!("report {}; ", path.display()),
                _ => detail = "report not written; ".into(),
            }
        }
        let c = r.candidates.iter().find(|c| (c.energy, c.method) == (r.best.0, r.best.1)).expect("best exists");
        detail += &format!(
            "best {} energies with {} measure: {}/{} real entries within 1%, pattern {}/{}",
            c.energy, c.method, c.matched_real, c.real_entries, c.matched_pattern, c.pattern_entries
        );
        if let Some((e, m)) = r.locked {
            detail += &format!("; locked {e}/{m}");
        }
        (r.reproduced(), detail)
    })
}

pub fn oracle_equivalence() -> Verdict {
    timed(2, "oracle equivalence", 60, || {
        let report = verify::run_suite(&verify::default_suite(&PhysicalConfig::default()));
        let worst = report
            .cases
            .iter()
            .filter_map(|c| match c.rel_diff {
                verify::Field::Num(x) => Some(x.0),
                verify::Field::Token(_) => None,
            })
            .fold(0.0, f64::max);
        let compared = report.cases.iter().filter(|c| matches!(c.rel_diff, verify::Field::Num(_))).count();
        let detail = format!(
            "{}/{} cases agree, {compared} with a level, worst rel diff {worst:.2e}",
            report.passed,
            report.cases.len()
        );
        (report.pass, detail)
    })
}

pub fn closed_form_window() -> Verdict {
    timed(3, "closed-form window", 60, || {
        let (mut compared, mut worst, mut bad) = (0, 0.0f64, Vec::new());
        for eta in [0.05, 0.15, 0.25] {
            for alpha in [0.01, 0.1, 0.3] {
                for m1 in [0.0, 0.1] {
                    for (n, l) in [(1, 0), (1, 1)] {
                        let qn = QuantumNumbers::new(n, l);
                        let c = cfg(alpha, eta, m1);
                        let Ok(exact) = spectrum::energy_exact(qn, &c, Branch::Plus) else {
                            continue;
                        };
                        let Some(e) = exact.value() else { continue };
                        compared += 1;
                        let d = spectrum::energy_closed_form(qn, &c).e_plus.value().map_or(f64::INFINITY, |x| rel(x, e));
                        worst = worst.max(d);
                        if d > 1e-2 {
                            bad.push(format!("eta={eta} alpha={alpha} m1={m1} ({n},{l}) {d:.2e}"));
                        }
                    }
                }
            }
        }
        let mut detail = format!("{compared} real levels, worst rel diff {worst:.2e}");
        if !bad.is_empty() {
            detail += &format!("; outside 1e-2: {}", bad.join(", "));
        }
        (compared > 0 && bad.is_empty(), detail)
    })
}

pub fn limit_behaviour() -> Verdict {
    timed(4, "limit behaviour", 1, || {
        let qn = QuantumNumbers::new(1, 0);
        let pair = |m1| spectrum::energy_closed_form(qn, &cfg(1e-4, 0.01, m1));
        let mags = |m1| {
            let p = pair(m1);
            [p.e_plus.value(), p.e_minus.value()].map(|v| v.map(f64::abs))
        };
        let free = mags(0.0);
        let pdm = mags(0.1);
        let fmt = |v: [Option<f64>; 2]| {
            v.map(|x| x.map_or("imaginary".to_string(), |x| format!("{x:.4}"))).join("/")
        };
        let free_ok = free.iter().all(|x| x.is_some_and(|x| (x - 1.0).abs() <= 1e-3));
        let pdm_ok = pdm.iter().all(|x| x.is_some_and(|x| x <= 0.05));
        let detail = format!(
            "n=1 l=0: |E+|/|E-| = {} at m1=0 ({}), {} at m1=0.1 ({}, bound 0.05)",
            fmt(free),
            if free_ok { "ok" } else { "off" },
            fmt(pdm),
            if pdm_ok { "ok" } else { "off" }
        );
        (free_ok && pdm_ok, detail)
    })
}

pub fn gap_closure() -> Verdict {
    timed(5, "gap closure", 5, || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let (mut found, mut draws, mut bad) = (0, 0, Vec::new());
        let (mut worst_rad, mut worst_gap) = (0.0f64, 0.0f64);
        while found < 20 && draws < 2000 {
            draws += 1;
            let qn = QuantumNumbers::new(rng.gen_range(0..4), rng.gen_range(0..4));
            let alpha = 10f64.powf(rng.gen_range(-2.3..-0.5));
            let eta = 10f64.powf(rng.gen_range(-1.0..0.5));
            let (vary, range) = if rng.gen_bool(0.5) { (Vary::Eta, (1e-3, 20.0)) } else { (Vary::Alpha, (1e-4, 2.0)) };
            let base = cfg(alpha, eta, 0.1);
            let Ok(x) = spectrum::critical_parameter(qn, &base, vary, range) else {
                continue;
            };
            found += 1;
            let at = vary.apply(&base, x).expect("critical value is valid");
            let scale = spectrum::radicand_scale(qn, &at);
            let rad = match spectrum::radicand(qn, &at) {
                MaybeReal::Real(v) => (v / scale).abs(),
                MaybeReal::Imaginary => f64::INFINITY,
            };
            let p = spectrum::energy_closed_form(qn, &at);
            let gap = match (p.e_plus.value(), p.e_minus.value()) {
                (Some(a), Some(b)) => (a - b).abs(),
                _ => f64::INFINITY,
            };
            worst_rad = worst_rad.max(rad);
            worst_gap = worst_gap.max(gap);
            if rad > 1e-6 || gap > 1e-9 {
                bad.push(format!("({},{}) {} = {x}", qn.n, qn.l, vary.name()));
            }
        }
        let mut detail = format!(
            "{found} critical points from {draws} draws, worst |radicand|/scale {worst_rad:.1e}, worst gap {worst_gap:.1e}"
        );
        if !bad.is_empty() {
            detail += &format!("; failing: {}", bad.join(", "));
        }
        (found == 20 && bad.is_empty(), detail)
    })
}

/// Normalized density on `r`, or why there is none.
fn density(sol: Result<WaveSolution, wavefunction::WaveError>, r: &[f64]) -> Result<Vec<f64>, String> {
    let sol = sol.map_err(|e| match e {
        wavefunction::WaveError::Spectrum(spectrum::SpectrumError::NoBoundState { .. }) => "none".to_string(),
        e => e.to_string(),
    })?;
    if sol.class() != StateClass::Normalizable {
        return Err(sol.class().token().to_string());
    }
    let d = wavefunction::density_profile(&sol, r).map_err(|e| e.to_string())?;
    Ok(d.into_iter().map(|p| p.1).collect())
}

/// Largest plus/minus density difference relative to the peak, trying exact
/// then closed-form energies.
fn density_gap(n: u32, c: &PhysicalConfig) -> Result<f64, String> {
    let qn = QuantumNumbers::new(n, 0);
    let mut reasons = Vec::new();
    for exact in [true, false] {
        let label = if exact { "exact" } else { "closed" };
        let build = |b| if exact { WaveSolution::exact(qn, c, b) } else { WaveSolution::closed_form(qn, c, b) };
        let plus = build(Branch::Plus);
        let minus = build(Branch::Minus);
        let big_r = [&plus, &minus]
            .iter()
            .filter_map(|s| s.as_ref().ok().and_then(wavefunction::support_radius))
            .fold(0.0, f64::max);
        let r = grid(big_r.max(1.0), 20_000);
        match (density(plus, &r), density(minus, &r)) {
            (Ok(p), Ok(m)) => {
                let peak = p.iter().chain(&m).fold(0.0f64, |a, &b| a.max(b));
                let diff = p.iter().zip(&m).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                return Ok(diff / peak);
            }
            (p, m) => reasons.push(format!(
                "{label} {}/{}",
                p.err().unwrap_or_else(|| "ok".into()),
                m.err().unwrap_or_else(|| "ok".into())
            )),
        }
    }
    Err(reasons.join(", "))
}

pub fn density_coincidence() -> Verdict {
    timed(6, "density coincidence", 30, || {
        let pdm = cfg(0.01, 0.1, 0.1);
        let free = cfg(0.01, 0.1, 0.0);
        let pdm_gaps: Vec<_> = (0..=6).map(|n| density_gap(n, &pdm)).collect();
        let free_gaps: Vec<_> = (0..=6).map(|n| density_gap(n, &free)).collect();
        let pdm_ok = pdm_gaps.iter().all(|g| matches!(g, Ok(d) if *d <= 1e-2));
        let free_ok = free_gaps.iter().any(|g| matches!(g, Ok(d) if *d > 1e-2));
        let summary = |gaps: &[Result<f64, String>]| {
            let ok = gaps.iter().filter(|g| g.is_ok()).count();
            match gaps.iter().enumerate().find_map(|(n, g)| g.as_ref().err().map(|e| (n, e))) {
                None => format!("{ok}/7 comparable"),
                Some((n, e)) => format!("{ok}/7 comparable, n={n} plus/minus: {e}"),
            }
        };
        let detail = format!("m1=0.1: {}; m1=0: {}", summary(&pdm_gaps), summary(&free_gaps));
        (pdm_ok && free_ok, detail)
    })
}

pub fn schrodinger_checks() -> Verdict {
    timed(7, "schrodinger checks", 1, || {
        let mut parts = Vec::new();

        let mut worst_zero = 0.0f64;
        for alpha in [1e-4, 1e-2, 0.1, 0.3, 1.0] {
            for n in 0..=10 {
                let e = spectrum::schrodinger_energy(QuantumNumbers::new(n, 0), &cfg(alpha, 0.0, 0.0));
                let k = (n + 1) as f64;
                worst_zero = worst_zero.max(rel(e, -alpha * alpha * k * k / 8.0));
            }
        }
        let zero_ok = worst_zero <= 1e-12;
        parts.push(format!("eta=0 rel err {worst_zero:.1e}"));

        let c = cfg(1e-6, 0.1, 0.0);
        let mut limit_bad = Vec::new();
        for (n, l) in [(1, 0), (1, 1), (2, 0), (2, 2)] {
            let k = (n + l + 1) as f64;
            let e = spectrum::schrodinger_energy(QuantumNumbers::new(n, l), &c);
            let d = rel(e, -0.01 / (2.0 * k * k));
            if d > 1e-4 {
                limit_bad.push(format!("({n},{l}) {d:.2e}"));
            }
        }
        let limit_ok = limit_bad.is_empty();
        parts.push(if limit_ok {
            "alpha=1e-6 limit within 1e-4".into()
        } else {
            format!("alpha=1e-6 limit off for {}", limit_bad.join(", "))
        });

        let spec = Preset::Fig11.spec();
        let mut fixed = PhysicalConfig::default();
        for &(k, v) in &spec.params {
            fixed = fixed.with_param(k, v).expect("preset values are valid");
        }
        let d = spec.scan.expect("scan preset");
        let scan = ScanSpec::new(d.vary1, d.vary2, fixed, d.qn_list, d.outputs).expect("valid scan");
        let out = scan::run_scan(&scan);
        let real = out.table.rows.iter().all(|r| r.iter().all(|c| matches!(c, Cell::Num(x) if x.is_finite()) || matches!(c, Cell::Int(_))));
        parts.push(format!("{} preset points {}", out.table.rows.len(), if real { "all real" } else { "not all real" }));

        (zero_ok && limit_ok && real, parts.join("; "))
    })
}

fn level(sol: &WaveSolution) -> f64 {
    sol.energy.value().expect("exact levels are real")
}

pub fn property_suites() -> Verdict {
    timed(8, "property suites", 120, || {
        let mut parts = Vec::new();
        let mut ok = true;

        let specfun_failures = specfun_identities(2000);
        ok &= specfun_failures == 0;
        parts.push(format!("specfun {specfun_failures} failures in 8000 draws"));

        // node counts and normalization over every s-level n <= 8
        let soft = cfg(0.001, 0.1, 0.0);
        let states: Vec<WaveSolution> = (0..=8)
            .filter_map(|n| WaveSolution::exact(QuantumNumbers::new(n, 0), &soft, Branch::Plus).ok())
            .collect();
        let big_r = states.iter().filter_map(wavefunction::support_radius).fold(0.0, f64::max);
        let m = 400_000;
        let h = big_r / m as f64;
        let r = grid(big_r, m);
        let phis: Vec<Vec<f64>> = states
            .iter()
            .map(|s| wavefunction::normalized_samples(s, &r).unwrap().iter().map(|x| x.phi).collect())
            .collect();
        let nodes_ok = states.len() == 9 && phis.iter().enumerate().all(|(n, p)| sign_changes(p) == n);
        ok &= nodes_ok;
        parts.push(format!("nodes {} for {} states", if nodes_ok { "= n" } else { "mismatch" }, states.len()));
        // the shooting solver brackets each level by node count alone
        let top = soft.rest_energy() * (1.0 - 1e-9);
        let shot_nodes = states
            .iter()
            .filter(|s| {
                oracle::shoot_energy(s.qn, &soft, oracle::Centrifugal::GreeneAldrich, (0.0, top))
                    .is_ok_and(|o| o.nodes == s.qn.n && rel(o.energy, level(s)) <= 1e-8)
            })
            .count();
        ok &= shot_nodes == states.len();
        parts.push(format!("shooting nodes and levels agree {shot_nodes}/{}", states.len()));

        let norm_err = phis
            .iter()
            .map(|p| (simpson(&p.iter().map(|x| x * x).collect::<Vec<_>>(), h) - 1.0).abs())
            .fold(0.0, f64::max);
        ok &= norm_err <= 1e-6;
        parts.push(format!("normalization {norm_err:.1e}"));

        // plain overlaps, with the Klein-Gordon weighted ones for context
        let v: Vec<f64> = r.iter().map(|&x| model::yukawa_hulthen(x, &soft).unwrap()).collect();
        let (mut plain, mut weighted) = (0.0f64, 0.0f64);
        for i in 0..phis.len().min(4) {
            for j in 0..i {
                let (ei, ej) = (level(&states[i]), level(&states[j]));
                let p: Vec<f64> = (0..m).map(|k| phis[i][k] * phis[j][k]).collect();
                let w: Vec<f64> = (0..m).map(|k| (ei + ej - 2.0 * v[k]) * p[k]).collect();
                plain = plain.max(simpson(&p, h).abs());
                weighted = weighted.max(simpson(&w, h).abs());
            }
        }
        ok &= plain <= 1e-4;
        parts.push(format!("orthogonality {plain:.1e} (energy-weighted {weighted:.1e})"));

        (ok, parts.join("; "))
    })
}

/// Randomized special-function identities; returns the number of failures.
fn specfun_identities(draws: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut failures = 0;
    for _ in 0..draws {
        let (a, k) = (rng.gen_range(-20.0..20.0), rng.gen_range(0..30));
        let lhs = specfun::pochhammer(a, k + 1);
        let rhs = specfun::pochhammer(a, k) * (a + k as f64);
        failures += usize::from((lhs - rhs).abs() > 1e-12 * lhs.abs().max(rhs.abs()));

        let x: f64 = rng.gen_range(0.5..50.0);
        let g1 = specfun::log_gamma(x + 1.0).map(f64::exp);
        let g0 = specfun::log_gamma(x).map(f64::exp);
        failures += usize::from(!matches!((g1, g0), (Ok(p), Ok(q)) if rel(p, x * q) < 1e-10));

        let n = rng.gen_range(0..=10u32);
        let (b, c, x) = (rng.gen_range(-8.0..8.0), rng.gen_range(0.3..12.0), rng.gen_range(-0.9..0.9));
        let t = specfun::hyp2f1_terminating(n, b, c, x);
        let s = specfun::hyp2f1_at(-(n as f64), b, c, x);
        let scale = numerics::terminating_scale(n, b, c, x);
        failures += usize::from(!matches!((t, s), (Ok(t), Ok(s)) if s.converged && (t - s.value).abs() <= 1e-10 * scale.max(t.abs())));

        let (a, b, c, x) = (rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0), rng.gen_range(0.3..10.0), rng.gen_range(-0.9..0.9));
        let f = specfun::hyp2f1_at(a, b, c, x);
        let g = specfun::hyp2f1_at(b, a, c, x);
        let scale = numerics::abs_series(a, b, c, x);
        failures += usize::from(!matches!((f, g), (Ok(f), Ok(g)) if (f.value - g.value).abs() <= 1e-12 * f.value.abs().max(scale)));
    }
    failures
}

/// Every criterion, in order.
pub fn run_all(report: Option<&Path>) -> Vec<Verdict> {
    vec![
        table_reproduction(report),
        oracle_equivalence(),
        closed_form_window(),
        limit_behaviour(),
        gap_closure(),
        density_coincidence(),
        schrodinger_checks(),
        property_suites(),
    ]
}
