//! Successive approximation of the mild form in the homogeneous setting:
//! `f^{k+1}(t) = e^{-At} f0 + A int_0^t e^{-A(t-s)} M(f^k(s)) ds` starting
//! from `f^0 = 0` with `M(0) = 0`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gaussian::evaluate_gaussian;
use crate::moments::{cell_moments, relaxation_fields};
use crate::params::RelaxationParams;
use crate::phase_space::{Distribution, PhaseSpaceGrid};

#[derive(Debug, Clone, PartialEq)]
pub struct PicardResult {
    pub t: f64,
    /// `d_k = ||f^{k+1}(t) - f^k(t)||`, `k = 0..K`.
    pub differences: Vec<f64>,
    /// `||f^{k+1}(t)||`, `k = 0..K`.
    pub iterate_norms: Vec<f64>,
    pub initial_norm: f64,
    /// Smallest `C` with `d_k <= (A C t)^k / k! ||f0||` for all `k >= 1`.
    pub envelope_constant: f64,
}

impl PicardResult {
    /// `d_{k+1} / d_k`.
    pub fn ratios(&self) -> Vec<f64> {
        self.differences.windows(2).map(|w| w[1] / w[0]).collect()
    }
}

/// Runs `iterations` Picard sweeps on `nodes` uniform time nodes over
/// `[0, t]`, with the time integral by the trapezoid rule.
pub fn picard_iterate(
    f0: &Distribution,
    t: f64,
    params: &RelaxationParams,
    grid: &PhaseSpaceGrid,
    iterations: usize,
    nodes: usize,
) -> Result<PicardResult> {
    if !grid.is_homogeneous() {
        return Err(Error::InvalidGrid("picard iteration needs a homogeneous grid"));
    }
    if iterations < 1 || nodes < 2 || !(t > 0.0) {
        return Err(Error::InvalidParams("picard needs t > 0, at least 1 iteration and 2 time nodes"));
    }
    let f0 = f0.cell(0);
    let len = f0.len();
    let a = params.a();
    let h = t / (nodes - 1) as f64;
    let step_decay = libm::exp(-a * h);
    let weights = grid.norm_weights(params.q());

    let mut prev: Vec<Vec<f64>> = vec![vec![0.0; len]; nodes];
    let mut first = true;
    let mut differences = Vec::with_capacity(iterations);
    let mut iterate_norms = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        let gauss: Vec<Vec<f64>> = if first {
            vec![vec![0.0; len]; nodes]
        } else {
            prev.iter()
                .map(|f| {
                    let m = cell_moments(f, grid)?;
                    let gp = relaxation_fields(&m, params)?;
                    Ok(evaluate_gaussian(&m, &gp, grid).into_values())
                })
                .collect::<Result<_>>()?
        };
        first = false;

        // running trapezoid: I_j = e^{-Ah} I_{j-1} + h/2 (e^{-Ah} M_{j-1} + M_j)
        let mut next = Vec::with_capacity(nodes);
        let mut integral = vec![0.0; len];
        for j in 0..nodes {
            if j > 0 {
                for ((acc, m_prev), m_cur) in integral.iter_mut().zip(&gauss[j - 1]).zip(&gauss[j]) {
                    *acc = step_decay * *acc + 0.5 * h * (step_decay * m_prev + m_cur);
                }
            }
            let decay = libm::exp(-a * h * j as f64);
            next.push(f0.iter().zip(&integral).map(|(f, i)| decay * f + a * i).collect::<Vec<f64>>());
        }
        let last = nodes - 1;
        let diff: Vec<f64> = next[last].iter().zip(&prev[last]).map(|(x, y)| x - y).collect();
        differences.push(weights.cell_norm(&diff));
        iterate_norms.push(weights.cell_norm(&next[last]));
        prev = next;
    }

    let initial_norm = weights.cell_norm(f0);
    let mut envelope_constant: f64 = 0.0;
    let mut factorial = 1.0;
    for (k, &d) in differences.iter().enumerate().skip(1) {
        factorial *= k as f64;
        if d > 0.0 {
            let c = libm::pow(d * factorial / initial_norm, 1.0 / k as f64) / (a * t);
            envelope_constant = envelope_constant.max(c);
        }
    }
    Ok(PicardResult { t, differences, iterate_norms, initial_norm, envelope_constant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::init::{init_distribution, InitSpec};
    use crate::phase_space::{build_grid, GridConfig, InternalSpacing};

    fn grid() -> PhaseSpaceGrid {
        build_grid(&GridConfig::homogeneous(24, 10.0, 24, 80.0, InternalSpacing::Mapped), 2.0).unwrap()
    }

    #[test]
    fn first_difference_is_pure_decay() {
        let g = grid();
        let f = init_distribution(&InitSpec::two_temperature(1.0, [0.0; 3], 1.5, 1.0), &g).unwrap();
        let p = RelaxationParams::new(0.0, 1.0, 2.0, 8.0).unwrap();
        let r = picard_iterate(&f, 0.1, &p, &g, 1, 5).unwrap();
        let want = (-0.1f64).exp() * r.initial_norm;
        assert!((r.differences[0] / want - 1.0).abs() < 1e-14);
    }

    #[test]
    fn equilibrium_differences_follow_poisson_weights() {
        // every iterate is a multiple of f0, so d_k = e^{-At} (At)^k / k! ||f0||
        // up to the trapezoid error
        let g = grid();
        let f = init_distribution(&InitSpec::equilibrium(1.0, [0.0; 3], 1.0), &g).unwrap();
        let p = RelaxationParams::new(0.0, 1.0, 2.0, 8.0).unwrap();
        let r = picard_iterate(&f, 0.25, &p, &g, 4, 65).unwrap();
        let mut fact = 1.0;
        for (k, d) in r.differences.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            let want = (-0.25f64).exp() * 0.25f64.powi(k as i32) / fact * r.initial_norm;
            assert!((d / want - 1.0).abs() < 1e-3, "{k} {d} {want}");
        }
    }

    #[test]
    fn contraction_for_two_temperatures() {
        let g = grid();
        let f = init_distribution(&InitSpec::two_temperature(1.0, [0.0; 3], 2.0, 1.0), &g).unwrap();
        let p = RelaxationParams::new(0.5, 0.5, 2.0, 8.0).unwrap();
        let t = 0.25 / p.a();
        let r = picard_iterate(&f, t, &p, &g, 8, 33).unwrap();
        assert!(r.differences.windows(2).all(|w| w[1] < w[0]));
        assert!(r.differences[7] / r.differences[0] < 1e-4);
        assert!(r.envelope_constant.is_finite() && r.envelope_constant > 0.0);
    }
}
