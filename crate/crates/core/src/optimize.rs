//! One-dimensional extremization on the circle: dense scan plus
//! golden-section refinement around the best grid point.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of `f` on `[a, b]`.
/// Returns `(x, f(x))` once the bracket is narrower than `xtol`.
pub fn golden_max(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, xtol: f64) -> (f64, f64) {
    let (mut a, mut b) = (a, b);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > xtol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Maximize a continuous `2π`-periodic function over `[0, 2π)`.
///
/// Scans `n_coarse` uniform angles, then refines around the best one. The
/// coarse scan takes the first occurrence of the maximum, so ties resolve to
/// the smallest angle. Returns `(theta, value)`.
pub fn max_on_circle(f: &mut dyn FnMut(f64) -> f64, n_coarse: usize, xtol: f64) -> (f64, f64) {
    let h = std::f64::consts::TAU / n_coarse as f64;
    let mut best_i = 0usize;
    let mut best = f64::NEG_INFINITY;
    for i in 0..n_coarse {
        let v = f(i as f64 * h);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let center = best_i as f64 * h;
    let (theta, value) = golden_max(f, center - h, center + h, xtol);
    let theta = theta.rem_euclid(std::f64::consts::TAU);
    if value >= best {
        (theta, value)
    } else {
        (center, best)
    }
}

/// Minimize a continuous `2π`-periodic function over `[0, 2π)`.
pub fn min_on_circle(f: &mut dyn FnMut(f64) -> f64, n_coarse: usize, xtol: f64) -> (f64, f64) {
    let mut neg = |t: f64| -f(t);
    let (theta, v) = max_on_circle(&mut neg, n_coarse, xtol);
    (theta, -v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v) = golden_max(&mut |t| 1.0 - (t - 0.3) * (t - 0.3), 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-8);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circle_max_of_cos() {
        let (theta, v) = max_on_circle(&mut |t| (t - 1.0).cos(), 512, 1e-10);
        // the argmax is only sqrt(eps)-determined at a smooth peak
        assert!((theta - 1.0).abs() < 1e-6);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circle_min_of_shifted_sin() {
        let (theta, v) = min_on_circle(&mut |t| 2.0 + t.sin(), 512, 1e-10);
        assert!((theta - 1.5 * TAU / 2.0).abs() < 1e-7);
        assert!((v - 1.0).abs() < 1e-12);
    }
}
