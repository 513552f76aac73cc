use kgpdm::model::{self, PhysicalConfig, QuantumNumbers};
use kgpdm::specfun;
use kgpdm::spectrum::{self, Branch, Vary};
use proptest::prelude::*;

fn cfg(alpha: f64, eta: f64, m1: f64) -> PhysicalConfig {
    PhysicalConfig::new(1.0, m1, alpha, eta, 1.0, 1.0, 1.0).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// `Σ |(a)_k (b)_k x^k / ((c)_k k!)|`, the size of the terms a direct series
/// evaluation has to cancel.
fn abs_series(a: f64, b: f64, c: f64, x: f64) -> f64 {
    let (mut term, mut sum) = (1.0f64, 1.0f64);
    for k in 0..10_000 {
        let kf = k as f64;
        term *= ((a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x).abs();
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

proptest! {
    #[test]
    fn potentials_attractive_and_screened(r in 1e-3f64..1e3, alpha in 1e-4f64..1.0, eta in 1e-3f64..5.0) {
        let c = cfg(alpha, eta, 0.0);
        let y = model::yukawa_exact(r, &c).unwrap();
        let coul = model::coulomb(r, &c).unwrap();
        prop_assert!(y < 0.0 || y == 0.0 && alpha * r > 700.0);
        prop_assert!(model::yukawa_hulthen(r, &c).unwrap() < 0.0 || 2.0 * alpha * r > 700.0);
        prop_assert!(coul < 0.0);
        prop_assert!(coul <= y);
    }

    #[test]
    fn mass_profile_bounded_below(r in 1e-6f64..1e4, m1 in 0.0f64..2.0, alpha in 1e-4f64..1.0) {
        let c = cfg(alpha, 0.1, m1);
        prop_assert!(model::mass_profile(r, &c).unwrap() >= c.m0());
    }

    #[test]
    fn pochhammer_recurrence(a in -20.0f64..20.0, k in 0u32..30) {
        let lhs = specfun::pochhammer(a, k + 1);
        let rhs = specfun::pochhammer(a, k) * (a + k as f64);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()));
    }

    #[test]
    fn gamma_functional_equation(x in 0.5f64..50.0) {
        let lhs = specfun::log_gamma(x + 1.0).unwrap().exp();
        let rhs = x * specfun::log_gamma(x).unwrap().exp();
        prop_assert!(rel(lhs, rhs) < 1e-10, "{lhs} {rhs}");
    }

    #[test]
    fn terminating_matches_series(n in 0u32..=10, b in -8.0f64..8.0, c in 0.3f64..12.0, x in -0.9f64..0.9) {
        let t = specfun::hyp2f1_terminating(n, b, c, x).unwrap();
        let s = specfun::hyp2f1_at(-(n as f64), b, c, x).unwrap();
        prop_assert!(s.converged);
        // the scale is the largest partial term, so cancellation does not inflate the check
        let scale = (0..=n)
            .map(|k| {
                let fact: f64 = (1..=k).map(f64::from).product();
                (specfun::pochhammer(-(n as f64), k) * specfun::pochhammer(b, k) / specfun::pochhammer(c, k) / fact
                    * x.powi(k as i32))
                .abs()
            })
            .fold(t.abs(), f64::max);
        prop_assert!((t - s.value).abs() <= 1e-10 * scale, "{t} {}", s.value);
    }

    #[test]
    fn hypergeometric_symmetric(a in -6.0f64..6.0, b in -6.0f64..6.0, c in 0.3f64..10.0, x in -0.9f64..0.9) {
        let f = specfun::hyp2f1_at(a, b, c, x).unwrap().value;
        let g = specfun::hyp2f1_at(b, a, c, x).unwrap().value;
        prop_assert!((f - g).abs() <= 1e-12 * f.abs().max(abs_series(a, b, c, x)), "{f} {g}");
    }

    #[test]
    fn schrodinger_s_states_bound(n in 0u32..20, alpha in 1e-6f64..2.0, eta in 0.0f64..10.0, m0 in 0.1f64..5.0) {
        let c = PhysicalConfig::new(m0, 0.0, alpha, eta, 1.0, 1.0, 1.0).unwrap();
        prop_assert!(spectrum::schrodinger_energy(QuantumNumbers::new(n, 0), &c) <= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn gap_closes_at_critical_point(n in 0u32..3, l in 0u32..3, alpha in 0.005f64..0.2) {
        let qn = QuantumNumbers::new(n, l);
        let base = cfg(alpha, 0.1, 0.1);
        let crit = spectrum::critical_parameter(qn, &base, Vary::Eta, (1e-3, 20.0));
        prop_assume!(crit.is_ok());
        let eta = crit.unwrap();
        let at = base.with_eta(eta).unwrap();
        let pair = spectrum::energy_closed_form(qn, &at);
        let (p, m) = (pair.e_plus.value().unwrap(), pair.e_minus.value().unwrap());
        prop_assert!((p - m).abs() <= 1e-12 * p.abs().max(1.0), "{p} {m}");

        let status = |x: f64| {
            let pr = spectrum::energy_closed_form(qn, &base.with_eta(x).unwrap());
            (pr.e_plus.is_real(), pr.e_minus.is_real())
        };
        let d = 1e-9 * eta;
        let (below, above) = (status(eta - d), status(eta + d));
        prop_assert!(below.0 == below.1 && above.0 == above.1);
        prop_assert!(below.0 != above.0, "{below:?} {above:?}");
    }
}

#[test]
fn hulthen_tends_to_coulomb() {
    let c = cfg(1e-4, 0.3, 0.0);
    for r in [0.5, 1.0, 2.0, 5.0] {
        let h = model::yukawa_hulthen(r, &c).unwrap();
        let k = model::coulomb(r, &c).unwrap();
        assert!(rel(h, k) < 1e-3, "r={r}");
        assert!((model::greene_aldrich_factor(r, 1e-4).unwrap() * r * r - 1.0).abs() < 1e-6);
    }
}

#[test]
fn mass_profile_decreasing() {
    for m1 in [0.0, 0.1, 1.0] {
        let c = cfg(0.01, 0.1, m1);
        let mut last = f64::INFINITY;
        for i in 0..200 {
            let r = 10f64.powf(-6.0 + 10.0 * i as f64 / 199.0);
            let m = model::mass_profile(r, &c).unwrap();
            if m1 > 0.0 && m > c.m0() {
                assert!(m < last, "m1={m1} r={r}");
            } else {
                assert!(m <= last);
            }
            last = m;
        }
    }
}

#[test]
fn gap_closes_at_reference_point() {
    let qn = QuantumNumbers::new(1, 0);
    let base = cfg(0.01, 0.1, 0.1);
    let eta = spectrum::critical_parameter(qn, &base, Vary::Eta, (0.01, 10.0)).unwrap();
    assert!((eta - 3.831_796_316_840_39).abs() < 1e-9);
    let pair = spectrum::energy_closed_form(qn, &base.with_eta(eta).unwrap());
    assert_eq!(pair.e_plus.value(), pair.e_minus.value());
}

#[test]
fn mirrored_level_curves() {
    let qn = QuantumNumbers::new(1, 0);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for i in 1..=380 {
        let eta = 0.01 * i as f64;
        let pair = spectrum::energy_closed_form(qn, &cfg(0.01, eta, 0.1));
        let (Some(p), Some(m)) = (pair.e_plus.value(), pair.e_minus.value()) else {
            break;
        };
        plus.push((eta, p));
        minus.push(m);
    }
    assert_eq!(minus.len(), 380, "levels stay real below the critical point");
    assert!(minus.windows(2).all(|w| w[1] >= w[0]));
    assert!(plus.windows(2).filter(|w| w[1].0 <= 1.0).all(|w| w[1].1 >= w[0].1));
}

#[test]
fn scan_resolution_irrelevant() {
    for (n, l, alpha, eta) in [(0, 0, 0.01, 0.1), (2, 0, 0.01, 0.1), (1, 1, 0.001, 0.1), (0, 2, 0.05, 0.5)] {
        let qn = QuantumNumbers::new(n, l);
        let c = cfg(alpha, eta, 0.0);
        let a = spectrum::energy_exact_with_resolution(qn, &c, Branch::Plus, 10_000).unwrap();
        let b = spectrum::energy_exact_with_resolution(qn, &c, Branch::Plus, 100_000).unwrap();
        assert!((a.value().unwrap() - b.value().unwrap()).abs() < 1e-10);
    }
}

#[test]
fn closed_form_converges_in_joint_limit() {
    let qn = QuantumNumbers::new(1, 0);
    // with eta = alpha the well is too shallow for an n = 1 level
    for x in [1e-2, 1e-3] {
        assert!(spectrum::energy_exact(qn, &cfg(x, x, 0.0), Branch::Plus).is_err());
    }
    // so shrink along eta = 10 alpha, through the reference point
    let err = |alpha: f64| {
        let c = cfg(alpha, 10.0 * alpha, 0.0);
        let exact = spectrum::energy_exact(qn, &c, Branch::Plus).unwrap().value().unwrap();
        let closed = spectrum::energy_closed_form(qn, &c).e_plus.value().unwrap();
        (closed - exact).abs()
    };
    let (coarse, fine) = (err(1e-2), err(1e-3));
    assert!(fine * 10.0 <= coarse, "{fine} vs {coarse}");
}
