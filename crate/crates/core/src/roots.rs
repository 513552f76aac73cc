//! Bracketing root refinement (Illinois regula falsi with bisection fallback).

/// Refine a sign-changing bracket `[a, b]` of a continuous `f` until it spans
/// at most a few ulps or `f` hits zero exactly. `fa`, `fb` are `f(a)`, `f(b)`.
pub(crate) fn refine<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64) -> f64 {
    debug_assert!(fa * fb <= 0.0);
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    let mut side = 0i8;
    for iter in 0..400 {
        let width = (b - a).abs();
        if width <= 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
        // every third step is a plain bisection so slow regula falsi cannot stall
        let mut x = if iter % 3 == 2 {
            0.5 * (a + b)
        } else {
            (a * fb - b * fa) / (fb - fa)
        };
        if !(x > a.min(b) && x < a.max(b)) {
            x = 0.5 * (a + b);
        }
        let fx = f(x);
        if fx == 0.0 {
            return x;
        }
        if fx.signum() == fb.signum() {
            b = x;
            fb = fx;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = x;
            fa = fx;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    if fa.abs() < fb.abs() {
        a
    } else {
        b
    }
}

/// Bisect a predicate boundary: `pred(lo)` is false, `pred(hi)` is true.
/// Returns `(lo, hi)` as adjacent as float spacing allows.
pub(crate) fn bisect_predicate<P: FnMut(f64) -> bool>(mut pred: P, mut lo: f64, mut hi: f64) -> (f64, f64) {
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cubic_root() {
        let f = |x: f64| x * x * x - 2.0;
        let r = refine(f, 0.0, 2.0, f(0.0), f(2.0));
        assert!((r - 2f64.cbrt()).abs() < 1e-15);
    }

    #[test]
    fn handles_kinked_function() {
        let f = |x: f64| (x.abs()).sqrt() * x.signum() - 0.3;
        let r = refine(f, -1.0, 1.0, f(-1.0), f(1.0));
        assert!((r - 0.09).abs() < 1e-15);
    }

    #[test]
    fn predicate_boundary() {
        let (lo, hi) = bisect_predicate(|x| x > 0.25, 0.0, 1.0);
        assert!(lo <= 0.25 && hi > 0.25 && hi - lo < 1e-15);
    }
}
