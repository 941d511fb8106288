//! Reproducible random test fields: sums of axis-aligned anisotropic
//! Gaussian bumps times an internal-energy exponential.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::params::lambda_delta;
use crate::phase_space::{Distribution, PhaseSpaceGrid};

#[derive(Debug, Clone, PartialEq)]
pub struct BumpConfig {
    pub max_bumps: usize,
    pub weight: (f64, f64),
    /// Centres are drawn in `[-c, c]^3` with `c = centre_fraction * v_max`.
    pub centre_fraction: f64,
    /// Per-axis variance range.
    pub variance: (f64, f64),
    /// Temperature range of the internal factor `exp(-I^{2/delta} / tau)`.
    pub internal_temperature: (f64, f64),
}

impl Default for BumpConfig {
    fn default() -> Self {
        Self { max_bumps: 4, weight: (0.5, 2.0), centre_fraction: 0.1, variance: (0.5, 1.5), internal_temperature: (0.5, 1.5) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub weight: f64,
    pub centre: [f64; 3],
    pub variance: [f64; 3],
    pub tau: f64,
}

/// Generator for sample `index` of the stream `seed`. Distinct indices give
/// independent samples and the same `(seed, index)` always gives the same
/// field.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn draw_bumps<R: Rng>(rng: &mut R, v_max: f64, cfg: &BumpConfig) -> Vec<Bump> {
    let n = rng.random_range(1..=cfg.max_bumps.max(1));
    let c = cfg.centre_fraction * v_max;
    (0..n)
        .map(|_| Bump {
            weight: rng.random_range(cfg.weight.0..=cfg.weight.1),
            centre: core::array::from_fn(|_| rng.random_range(-c..=c)),
            variance: core::array::from_fn(|_| rng.random_range(cfg.variance.0..=cfg.variance.1)),
            tau: rng.random_range(cfg.internal_temperature.0..=cfg.internal_temperature.1),
        })
        .collect()
}

/// Values of a bump sum over one cell, `[I node][v node]`.
pub fn bump_cell(bumps: &[Bump], grid: &PhaseSpaceGrid) -> Vec<f64> {
    let mut out = alloc::vec![0.0; grid.cell_len()];
    let nodes = grid.v_nodes();
    let nv = grid.v_len();
    let delta = grid.delta();
    let lam = lambda_delta(delta);
    for b in bumps {
        let axis = |a: usize| -> Vec<f64> {
            let s2 = b.variance[a];
            let norm = 1.0 / libm::sqrt(2.0 * PI * s2);
            nodes.iter().map(|v| norm * libm::exp(-(v - b.centre[a]) * (v - b.centre[a]) / (2.0 * s2))).collect()
        };
        let (ex, ey, ez) = (axis(0), axis(1), axis(2));
        let mut vpart = Vec::with_capacity(nv);
        for x in &ex {
            for y in &ey {
                let xy = b.weight * x * y;
                vpart.extend(ez.iter().map(|z| xy * z));
            }
        }
        let ipref = lam * libm::pow(b.tau, -0.5 * delta);
        for (k, &e) in grid.energies().iter().enumerate() {
            let ei = ipref * libm::exp(-e / b.tau);
            for (o, p) in out[k * nv..(k + 1) * nv].iter_mut().zip(&vpart) {
                *o += p * ei;
            }
        }
    }
    out
}

/// Random field with independent bumps in every spatial cell.
pub fn random_bumps(grid: &PhaseSpaceGrid, seed: u64, index: u64, cfg: &BumpConfig) -> Distribution {
    let mut rng = sample_rng(seed, index);
    let mut values = Vec::with_capacity(grid.len());
    for _ in 0..grid.x_count() {
        let bumps = draw_bumps(&mut rng, grid.config().v_max, cfg);
        values.extend(bump_cell(&bumps, grid));
    }
    Distribution::from_raw(values, grid.x_count(), grid.cell_len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::cell_moments;
    use crate::phase_space::{build_grid, GridConfig, InternalSpacing};

    #[test]
    fn reproducible_and_distinct() {
        let g = build_grid(&GridConfig::homogeneous(10, 10.0, 8, 80.0, InternalSpacing::Mapped), 2.0).unwrap();
        let cfg = BumpConfig::default();
        let a = random_bumps(&g, 7, 3, &cfg);
        let b = random_bumps(&g, 7, 3, &cfg);
        let c = random_bumps(&g, 7, 4, &cfg);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.min_value() >= 0.0);
    }

    #[test]
    fn mass_is_sum_of_weights() {
        let g = build_grid(&GridConfig::homogeneous(40, 12.0, 40, 90.0, InternalSpacing::Mapped), 2.0).unwrap();
        let mut rng = sample_rng(1, 0);
        let bumps = draw_bumps(&mut rng, 12.0, &BumpConfig::default());
        let m = cell_moments(&bump_cell(&bumps, &g), &g).unwrap();
        let want: f64 = bumps.iter().map(|b| b.weight).sum();
        assert!((m.rho / want - 1.0).abs() < 1e-10);
    }
}
