//! Grid quadrature shared by the checks.

/// Uniform grid `h, 2h, …, m h`; `m` should be even.
pub fn grid(big_r: f64, m: usize) -> Vec<f64> {
    (1..=m).map(|i| i as f64 * big_r / m as f64).collect()
}

/// Simpson's rule on [`grid`] samples with an implicit zero at the origin.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let m = values.len();
    let mut sum = values[m - 1];
    for (i, v) in values.iter().enumerate().take(m - 1) {
        sum += if i % 2 == 0 { 4.0 } else { 2.0 } * v;
    }
    sum * h / 3.0
}

/// Sign changes, ignoring samples that are rounding-level small.
pub fn sign_changes(values: &[f64]) -> usize {
    let peak = values.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let mut last = 0.0f64;
    let mut count = 0;
    for &v in values.iter().filter(|v| v.abs() > 1e-10 * peak) {
        if last != 0.0 && v.signum() != last {
            count += 1;
        }
        last = v.signum();
    }
    count
}

/// `Σ |(a)_k (b)_k x^k / ((c)_k k!)|`.
pub fn abs_series(a: f64, b: f64, c: f64, x: f64) -> f64 {
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

/// Largest term of the terminating series with upper parameter `-n`.
pub fn terminating_scale(n: u32, b: f64, c: f64, x: f64) -> f64 {
    let (mut term, mut best) = (1.0f64, 1.0f64);
    for k in 0..n {
        let kf = k as f64;
        term *= ((kf - n as f64) * (b + kf) / ((c + kf) * (kf + 1.0)) * x).abs();
        best = best.max(term);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_is_exact_for_cubics() {
        let r = grid(2.0, 100);
        let f: Vec<f64> = r.iter().map(|x| x * x * x).collect();
        assert!((simpson(&f, 0.02) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn sign_changes_skip_noise() {
        assert_eq!(sign_changes(&[1.0, 0.5, -1e-14, 0.2, -0.3, -1.0, 2.0]), 2);
    }
}
