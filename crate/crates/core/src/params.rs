//! Model parameters and the closed-form constants of the moment and norm
//! inequalities.

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature;

/// Smallest admissible value of `1 - nu + nu * theta`.
pub const FREQUENCY_THRESHOLD: f64 = 1e-12;

/// Relaxation parameters `(nu, theta, delta, q)` with the derived collision
/// frequency `A = 1 / (1 - nu + nu * theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationParams {
    nu: f64,
    theta: f64,
    delta: f64,
    q: f64,
    a: f64,
}

impl RelaxationParams {
    /// Validates `-1/2 < nu < 1`, `0 <= theta <= 1`, `delta > 0` and
    /// `q > 5 + delta`.
    pub fn new(nu: f64, theta: f64, delta: f64, q: f64) -> Result<Self> {
        if !(nu > -0.5 && nu < 1.0) {
            return Err(Error::InvalidParams("nu must lie in (-1/2, 1)"));
        }
        if !(0.0..=1.0).contains(&theta) {
            return Err(Error::InvalidParams("theta must lie in [0, 1]"));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::InvalidParams("delta must be positive"));
        }
        if !(q > 5.0 + delta && q.is_finite()) {
            return Err(Error::InvalidParams("q must exceed 5 + delta"));
        }
        let a = collision_frequency(nu, theta)?;
        Ok(Self { nu, theta, delta, q, a })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Collision frequency `A`.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Same `nu`, `delta`, `q` with a different `theta`.
    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        Self::new(self.nu, theta, self.delta, self.q)
    }
}

/// `A = 1 / (1 - nu + nu * theta)`.
pub fn collision_frequency(nu: f64, theta: f64) -> Result<f64> {
    let denominator = 1.0 - nu + nu * theta;
    if !(denominator > FREQUENCY_THRESHOLD) {
        return Err(Error::DegenerateFrequency { denominator });
    }
    Ok(1.0 / denominator)
}

/// Normalisation of the internal-energy factor, `1 / Gamma(delta/2 + 1)`.
pub fn lambda_delta(delta: f64) -> f64 {
    1.0 / libm::tgamma(0.5 * delta + 1.0)
}

/// `\int_0^\infty exp(-I^{2/delta}) dI` by double-exponential quadrature.
/// The product with [`lambda_delta`] should be 1.
pub fn internal_partition_quadrature(delta: f64) -> f64 {
    let p = 2.0 / delta;
    quadrature::exp_sinh(|i| libm::exp(-libm::pow(i, p)), 0.0)
}

/// Relative mismatch between the closed-form normalisation and quadrature.
pub fn lambda_cross_check(delta: f64) -> f64 {
    libm::fabs(lambda_delta(delta) * internal_partition_quadrature(delta) - 1.0)
}

/// `C_nu = max(1 - nu, 1 + 2 nu)`: upper equivalence constant of the
/// relaxation tensor.
pub fn tensor_constant(nu: f64) -> f64 {
    f64::max(1.0 - nu, 1.0 + 2.0 * nu)
}

/// Density bound constant: `rho <= C ||f||_q T_delta^{(3+delta)/2}`.
pub fn density_constant(delta: f64) -> f64 {
    libm::pow(2.0, 3.5) * PI * PI * libm::pow(3.0 + delta, 0.5 * (1.0 + delta)) * delta
}

/// Tail-moment constant: `rho (T_delta + |U|^2)^{(q-delta-3)/2} <= C ||f||_q`.
pub fn tail_constant(delta: f64, q: f64) -> f64 {
    libm::pow(2.0, 0.5 * (q - 2.0 * delta - 1.0)) * PI * PI * libm::pow(3.0 + delta, 0.5 * q) * delta
        / (q - delta - 5.0)
}

/// Momentum constant:
/// `rho |U|^{3+delta+q} <= C ||f||_q [(T_delta + |U|^2) T_delta]^{(3+delta)/2}`.
pub fn momentum_constant(delta: f64, q: f64) -> f64 {
    libm::pow(2.0, 0.5 * (11.0 + 2.0 * delta + 2.0 * q)) * PI * PI * libm::pow(3.0 + delta, 2.0 + delta) * delta
}

/// `sup_{x >= 0} x^{q/2} e^{-x}`, attained at `x = q/2`.
pub fn sup_power_exp(q: f64) -> f64 {
    let h = 0.5 * q;
    libm::exp(h * libm::log(h) - h)
}

/// The four pieces whose sum, divided by `theta^{(3+delta)/2}`, bounds
/// `||M(f)||_q / ||f||_q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianBoundParts {
    /// Sup of the Gaussian itself.
    pub peak: f64,
    /// Bulk-velocity weight `|U|^q`.
    pub bulk: f64,
    /// Peculiar-velocity weight `|v - U|^q`.
    pub peculiar: f64,
    /// Internal-energy weight `I^{q/delta}`.
    pub internal: f64,
}

impl GaussianBoundParts {
    pub fn new(nu: f64, theta: f64, delta: f64, q: f64) -> Self {
        let inv = libm::pow(2.0 * PI, -1.5);
        let sqrt_pi = libm::sqrt(PI);
        let ctail = tail_constant(delta, q);
        let peak = inv * density_constant(delta);
        let bulk = libm::pow(2.0, 0.5 * (q - 2.0 * delta - 4.0)) * sqrt_pi * libm::pow(3.0 + delta, 0.5 * q) * delta
            / (q - delta - 5.0)
            + libm::pow(2.0, 0.5 * (11.0 + 3.0 * delta + 2.0 * q)) * sqrt_pi * libm::pow(3.0 + delta, 2.0 + delta) * delta;
        let sup = sup_power_exp(q);
        let peculiar_scale =
            inv * sup * libm::pow(2.0 * tensor_constant(nu) * (3.0 + delta * (1.0 - theta)) / 3.0, 0.5 * q);
        let internal_scale = inv * sup * libm::pow((delta + 3.0 * (1.0 - theta)) / delta, 0.5 * q);
        Self { peak, bulk, peculiar: peculiar_scale * ctail, internal: internal_scale * ctail }
    }

    pub fn total(&self) -> f64 {
        self.peak + self.bulk + self.peculiar + self.internal
    }
}

/// `C_M` with `||M(f)||_q <= C_M ||f||_q`. Unbounded at `theta = 0`.
pub fn gaussian_constant(params: &RelaxationParams) -> Result<f64> {
    if params.theta <= 0.0 {
        return Err(Error::ThetaZero);
    }
    let parts = GaussianBoundParts::new(params.nu, params.theta, params.delta, params.q);
    Ok(parts.total() / libm::pow(params.theta, 0.5 * (3.0 + params.delta)))
}

/// Every explicit constant for one parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaConstants {
    pub c_nu: f64,
    pub c_density: f64,
    pub c_tail: f64,
    pub c_momentum: f64,
    pub c_gaussian: f64,
    /// Growth rate of the weighted norm envelope, `A (C_M - 1)`.
    pub c_growth: f64,
}

pub fn lemma_constants(params: &RelaxationParams) -> Result<LemmaConstants> {
    let c_gaussian = gaussian_constant(params)?;
    Ok(LemmaConstants {
        c_nu: tensor_constant(params.nu),
        c_density: density_constant(params.delta),
        c_tail: tail_constant(params.delta, params.q),
        c_momentum: momentum_constant(params.delta, params.q),
        c_gaussian,
        c_growth: params.a * (c_gaussian - 1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn frequency_examples() {
        assert_eq!(collision_frequency(0.0, 0.5).unwrap(), 1.0);
        assert_eq!(collision_frequency(0.5, 1.0).unwrap(), 1.0);
        assert!(rel(collision_frequency(-0.4, 0.5).unwrap(), 1.0 / 1.2) < 1e-15);
    }

    #[test]
    fn frequency_rejects_degenerate_denominator() {
        assert!(matches!(collision_frequency(1.0, 0.0), Err(Error::DegenerateFrequency { .. })));
        assert!(collision_frequency(1.0 - 1e-13, 0.0).is_err());
    }

    #[test]
    fn frequency_monotone_in_theta() {
        let thetas = [0.0, 0.25, 0.5, 0.75, 1.0];
        for w in thetas.windows(2) {
            assert!(collision_frequency(0.5, w[1]).unwrap() < collision_frequency(0.5, w[0]).unwrap());
            assert!(collision_frequency(-0.3, w[1]).unwrap() > collision_frequency(-0.3, w[0]).unwrap());
            assert_eq!(collision_frequency(0.0, w[0]).unwrap(), 1.0);
        }
    }

    #[test]
    fn lambda_examples() {
        assert!(rel(lambda_delta(2.0), 1.0) < 1e-15);
        assert!(rel(lambda_delta(1.0), 2.0 / PI.sqrt()) < 1e-14);
        // 1/Gamma(5/2) = 4 / (3 sqrt(pi))
        assert!(rel(lambda_delta(3.0), 4.0 / (3.0 * PI.sqrt())) < 1e-14);
    }

    #[test]
    fn lambda_matches_quadrature() {
        for delta in [0.5, 1.0, 2.0, 3.0, 5.0] {
            assert!(lambda_cross_check(delta) < 1e-10, "delta={delta}: {}", lambda_cross_check(delta));
        }
    }

    #[test]
    fn tensor_constant_examples() {
        assert_eq!(tensor_constant(0.0), 1.0);
        assert_eq!(tensor_constant(0.5), 2.0);
    }

    #[test]
    fn density_constant_example() {
        // 2^{7/2} pi^2 5^{3/2} 2 at 40 digits
        assert!(rel(density_constant(2.0), 2_496.834_360_981_152) < 1e-14);
    }

    #[test]
    fn sup_power_exp_is_a_maximum() {
        let q = 8.0;
        let s = sup_power_exp(q);
        for k in 0..2000 {
            let x = k as f64 * 0.01;
            assert!(libm::pow(x, q / 2.0) * libm::exp(-x) <= s * (1.0 + 1e-15));
        }
        assert!(rel(s, 256.0 * libm::exp(-4.0)) < 1e-14);
    }

    #[test]
    fn bulk_part_matches_its_derivation() {
        // (2 pi)^{-3/2} (tail + 2^{(3+delta)/2} momentum)
        for (delta, q) in [(1.0, 7.0), (2.0, 8.0), (3.0, 9.5)] {
            let p = GaussianBoundParts::new(0.2, 0.4, delta, q);
            let alt = (tail_constant(delta, q) + libm::pow(2.0, 0.5 * (3.0 + delta)) * momentum_constant(delta, q))
                / libm::pow(2.0 * PI, 1.5);
            assert!(rel(p.bulk, alt) < 1e-13);
        }
    }

    #[test]
    fn constants_positive_and_diverge_as_theta_vanishes() {
        for delta in [0.5, 1.0, 2.0, 3.0] {
            for nu in [-0.4, 0.0, 0.5, 0.9] {
                let p = RelaxationParams::new(nu, 0.5, delta, delta + 5.5).unwrap();
                let c = lemma_constants(&p).unwrap();
                for v in [c.c_nu, c.c_density, c.c_tail, c.c_momentum, c.c_gaussian, c.c_growth] {
                    assert!(v.is_finite() && v > 0.0);
                }
                let small = gaussian_constant(&p.with_theta(1e-3).unwrap()).unwrap();
                let larger = gaussian_constant(&p.with_theta(1e-1).unwrap()).unwrap();
                assert!(small > larger);
            }
        }
    }

    #[test]
    fn theta_zero_has_no_gaussian_constant() {
        let p = RelaxationParams::new(0.3, 0.0, 2.0, 8.0).unwrap();
        assert_eq!(lemma_constants(&p), Err(Error::ThetaZero));
    }

    #[test]
    fn params_validation() {
        assert!(RelaxationParams::new(-0.5, 0.5, 2.0, 8.0).is_err());
        assert!(RelaxationParams::new(1.0, 0.5, 2.0, 8.0).is_err());
        assert!(RelaxationParams::new(0.0, 1.5, 2.0, 8.0).is_err());
        assert!(RelaxationParams::new(0.0, 0.5, 0.0, 8.0).is_err());
        assert!(RelaxationParams::new(0.0, 0.5, 2.0, 7.0).is_err());
        assert!(RelaxationParams::new(0.0, 0.5, 2.0, 7.01).is_ok());
    }
}
