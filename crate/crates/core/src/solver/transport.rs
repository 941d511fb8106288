//! Semi-Lagrangian free transport along the first velocity component on the
//! periodic 1-D grid.

use alloc::vec;
use alloc::vec::Vec;

use super::Interpolation;
use crate::exec::{CellExecutor, Serial};
use crate::phase_space::{Distribution, PhaseSpaceGrid};
use crate::sum;

/// Whole-cell and fractional parts of the backward shift `v_1 dt / dx` for
/// every velocity node.
pub(crate) fn shifts(grid: &PhaseSpaceGrid, dt: f64) -> Vec<(i64, f64)> {
    let dx = grid.x_weight();
    grid.velocities()
        .iter()
        .map(|v| {
            let s = v[0] * dt / dx;
            let n = libm::floor(s);
            (n as i64, s - n)
        })
        .collect()
}

/// `f(x - v_1 dt, v, I)`, interpolated from the cell values with periodic
/// wraparound. Returns the new field and the mass removed by clipping
/// negative cubic values (always 0 for linear interpolation).
pub fn transport_step(f: &Distribution, dt: f64, grid: &PhaseSpaceGrid, interp: Interpolation) -> (Distribution, f64) {
    transport_step_with(&Serial, f, dt, grid, interp)
}

pub fn transport_step_with<E: CellExecutor>(
    exec: &E,
    f: &Distribution,
    dt: f64,
    grid: &PhaseSpaceGrid,
    interp: Interpolation,
) -> (Distribution, f64) {
    if grid.is_homogeneous() {
        return (f.clone(), 0.0);
    }
    let (values, clipped) = transport_values(exec, f.values(), grid, grid.i_weights(), dt, interp);
    (Distribution::from_raw(values, f.x_count(), f.cell_len()), clipped)
}

/// Transport of a field stored as `x_count` cells of `blocks.len()` velocity
/// tables each; `blocks` are the quadrature weights of the blocks.
pub(crate) fn transport_values<E: CellExecutor>(
    exec: &E,
    old: &[f64],
    grid: &PhaseSpaceGrid,
    blocks: &[f64],
    dt: f64,
    interp: Interpolation,
) -> (Vec<f64>, f64) {
    let nx = grid.x_count() as i64;
    let nv = grid.v_len();
    let cell_len = nv * blocks.len();
    let table = shifts(grid, dt);
    let wv = grid.velocity_weights();
    let dx = grid.x_weight();
    let at = |j: i64, idx: usize| old[j.rem_euclid(nx) as usize * cell_len + idx];

    let mut out = vec![0.0; old.len()];
    let clipped = exec.map_chunks_mut(&mut out, cell_len, |j, cell| {
        let j = j as i64;
        let mut clip = 0.0;
        for (k, &wk) in blocks.iter().enumerate() {
            for (vi, &(n, frac)) in table.iter().enumerate() {
                let idx = k * nv + vi;
                let src = j - n;
                let value = if frac == 0.0 {
                    at(src, idx)
                } else {
                    match interp {
                        Interpolation::Linear => (1.0 - frac) * at(src, idx) + frac * at(src - 1, idx),
                        Interpolation::Cubic => {
                            let y = -frac;
                            let l_m2 = -(y + 1.0) * y * (y - 1.0) / 6.0;
                            let l_m1 = (y + 2.0) * y * (y - 1.0) / 2.0;
                            let l_0 = -(y + 2.0) * (y + 1.0) * (y - 1.0) / 2.0;
                            let l_1 = (y + 2.0) * (y + 1.0) * y / 6.0;
                            let v = l_m2 * at(src - 2, idx) + l_m1 * at(src - 1, idx) + l_0 * at(src, idx)
                                + l_1 * at(src + 1, idx);
                            if v < 0.0 {
                                clip -= v * wv[vi] * wk * dx;
                                0.0
                            } else {
                                v
                            }
                        }
                    }
                };
                cell[idx] = value;
            }
        }
        clip
    });
    (out, sum::sum(&clipped))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::init::{init_distribution, InitSpec};
    use crate::phase_space::{GridConfig, InternalSpacing};
    use crate::phase_space::build_grid;
    use core::f64::consts::PI;

    fn wave_grid(x_count: usize) -> PhaseSpaceGrid {
        let cfg = GridConfig { x_count, x_length: 1.0, v_count: 4, v_max: 2.0, i_count: 2, i_max: 1.0, spacing: InternalSpacing::Uniform };
        build_grid(&cfg, 2.0).unwrap()
    }

    #[test]
    fn homogeneous_is_identity() {
        let g = build_grid(&GridConfig::homogeneous(6, 8.0, 4, 40.0, InternalSpacing::Uniform), 2.0).unwrap();
        let f = init_distribution(&InitSpec::equilibrium(1.0, [0.0; 3], 1.0), &g).unwrap();
        let (h, c) = transport_step(&f, 0.3, &g, Interpolation::Linear);
        assert_eq!(h, f);
        assert_eq!(c, 0.0);
    }

    #[test]
    fn aligned_shift_is_rotation() {
        // v nodes are +-0.5 and +-1.5, dx = 1/8, dt = 0.25: shifts of 1 and 3 cells
        let g = wave_grid(8);
        let values: Vec<f64> = (0..g.len()).map(|i| (i as f64 * 0.37).sin().abs()).collect();
        let f = Distribution::from_values(&g, values).unwrap();
        let (h, _) = transport_step(&f, 0.25, &g, Interpolation::Linear);
        for j in 0..8 {
            for (vi, v) in g.velocities().iter().enumerate() {
                let n = (v[0] * 2.0).round() as i64;
                let src = (j as i64 - n).rem_euclid(8) as usize;
                for k in 0..2 {
                    let idx = k * g.v_len() + vi;
                    assert_eq!(h.cell(j)[idx].to_bits(), f.cell(src)[idx].to_bits());
                }
            }
        }
    }

    fn sinusoid(g: &PhaseSpaceGrid, phase: &dyn Fn(f64, f64) -> f64) -> Distribution {
        let mut values = Vec::with_capacity(g.len());
        for &x in g.x_nodes() {
            for _ in 0..g.i_len() {
                for v in g.velocities() {
                    values.push(1.0 + 0.5 * (2.0 * PI * phase(x, v[0])).sin());
                }
            }
        }
        Distribution::from_values(g, values).unwrap()
    }

    #[test]
    fn linear_error_is_second_order() {
        let dt = 0.013;
        let mut errors = Vec::new();
        for nx in [32, 64, 128] {
            let g = wave_grid(nx);
            let f = sinusoid(&g, &|x, _| x);
            let exact = sinusoid(&g, &|x, v| x - v * dt);
            let (h, _) = transport_step(&f, dt, &g, Interpolation::Linear);
            let err = h.values().iter().zip(exact.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            errors.push(err);
        }
        for w in errors.windows(2) {
            let rate = (w[0] / w[1]).log2();
            assert!(rate > 1.8, "{errors:?}");
        }
        assert!(errors[2] < 1e-3);
    }

    #[test]
    fn cubic_is_more_accurate() {
        let g = wave_grid(32);
        let dt = 0.013;
        let f = sinusoid(&g, &|x, _| x);
        let exact = sinusoid(&g, &|x, v| x - v * dt);
        let err = |h: &Distribution| h.values().iter().zip(exact.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let (lin, _) = transport_step(&f, dt, &g, Interpolation::Linear);
        let (cub, clip) = transport_step(&f, dt, &g, Interpolation::Cubic);
        assert!(err(&cub) < 0.1 * err(&lin));
        assert_eq!(clip, 0.0);
    }

    #[test]
    fn cubic_clips_negative_values() {
        let g = wave_grid(16);
        let mut values = vec![0.0; g.len()];
        for idx in 0..g.cell_len() {
            values[5 * g.cell_len() + idx] = 1.0;
        }
        let f = Distribution::from_values(&g, values).unwrap();
        let (h, clip) = transport_step(&f, 0.01, &g, Interpolation::Cubic);
        assert!(clip > 0.0);
        assert!(h.min_value() >= 0.0);
    }

    #[test]
    fn linear_conserves_mass() {
        let g = wave_grid(20);
        let f = sinusoid(&g, &|x, v| x + 0.1 * v);
        let (h, _) = transport_step(&f, 0.0371, &g, Interpolation::Linear);
        let a: f64 = sum::sum(f.values());
        let b: f64 = sum::sum(h.values());
        assert!((a / b - 1.0).abs() < 1e-14);
    }
}
