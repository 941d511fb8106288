//! Double-exponential quadrature on half-lines.
//!
//! Used off the hot path: the startup cross-check of the internal-energy
//! normalisation and the analytic tail-mass estimates for presets.

use core::f64::consts::FRAC_PI_2;

const STEP: f64 = 1.0 / 64.0;
const T_RANGE: f64 = 6.5;

/// `\int_a^\infty g(x) dx` by the exp-sinh rule `x = a + exp(pi/2 sinh t)`.
///
/// Tolerates integrable algebraic singularities at `a` and needs `g` to
/// decay at least algebraically faster than `1/x`.
pub fn exp_sinh<F: Fn(f64) -> f64>(g: F, a: f64) -> f64 {
    let n = (T_RANGE / STEP) as i64;
    let mut acc = 0.0;
    for k in -n..=n {
        let t = k as f64 * STEP;
        let s = FRAC_PI_2 * libm::sinh(t);
        let y = libm::exp(s);
        let x = a + y;
        if y == 0.0 || !x.is_finite() {
            continue;
        }
        let w = FRAC_PI_2 * libm::cosh(t) * y;
        let v = g(x) * w;
        if v.is_finite() {
            acc += v;
        }
    }
    acc * STEP
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_half_line() {
        let got = exp_sinh(|x| libm::exp(-x * x), 0.0);
        let want = core::f64::consts::PI.sqrt() / 2.0;
        assert!((got / want - 1.0).abs() < 1e-13, "{got} vs {want}");
    }

    #[test]
    fn singular_endpoint() {
        // \int_0^\infty x^{-1/2} e^{-x} dx = sqrt(pi)
        let got = exp_sinh(|x| libm::exp(-x) / libm::sqrt(x), 0.0);
        assert!((got / core::f64::consts::PI.sqrt() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shifted_tail() {
        let got = exp_sinh(|x| libm::exp(-x), 3.0);
        assert!((got / libm::exp(-3.0) - 1.0).abs() < 1e-13);
    }
}
