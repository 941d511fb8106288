//! Frozen-Gaussian exponential relaxation step.
//!
//! With the Gaussian fixed at its start-of-step value the relaxation
//! equation is linear, so the step is exact:
//! `f+ = e^{-A dt} f + (1 - e^{-A dt}) M(f)`.

use alloc::vec::Vec;

use crate::correction::conservative_correction;
use crate::error::Result;
use crate::exec::{CellExecutor, Serial};
use crate::gaussian::{conservation_defect, evaluate_gaussian, ConservationDefect};
use crate::moments::{cell_moments, check_shape, invariant_moments, relaxation_fields, MacroFields};
use crate::params::RelaxationParams;
use crate::phase_space::{Distribution, PhaseSpaceGrid};

/// What a cell looked like at the start of the step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellRelaxation {
    pub moments: MacroFields,
    /// Defect of the Gaussian actually used, against the pre-step field.
    pub defect: ConservationDefect,
}

pub fn relax_cell(
    cell: &mut [f64],
    dt: f64,
    params: &RelaxationParams,
    grid: &PhaseSpaceGrid,
    conservation_fix: bool,
) -> Result<CellRelaxation> {
    let m = cell_moments(cell, grid)?;
    let gp = relaxation_fields(&m, params)?;
    let mut gaussian = evaluate_gaussian(&m, &gp, grid);
    if conservation_fix {
        gaussian = conservative_correction(&gaussian, &invariant_moments(cell, grid), grid)?.field;
    }
    let defect = conservation_defect(cell, &gaussian, grid);
    let keep = libm::exp(-params.a() * dt);
    let gain = -libm::expm1(-params.a() * dt);
    for (f, g) in cell.iter_mut().zip(gaussian.values()) {
        *f = keep * *f + gain * g;
    }
    Ok(CellRelaxation { moments: m, defect })
}

pub fn relaxation_step(
    f: &Distribution,
    dt: f64,
    params: &RelaxationParams,
    grid: &PhaseSpaceGrid,
    conservation_fix: bool,
) -> Result<Distribution> {
    let mut out = f.clone();
    relaxation_step_with(&Serial, &mut out, dt, params, grid, conservation_fix)?;
    Ok(out)
}

/// In-place relaxation of every cell. On failure the error of the lowest
/// failing cell is returned and `f` is left partially updated.
pub fn relaxation_step_with<E: CellExecutor>(
    exec: &E,
    f: &mut Distribution,
    dt: f64,
    params: &RelaxationParams,
    grid: &PhaseSpaceGrid,
    conservation_fix: bool,
) -> Result<Vec<CellRelaxation>> {
    check_shape(f, grid)?;
    let len = f.cell_len();
    exec.map_chunks_mut(f.values_mut(), len, |j, cell| {
        relax_cell(cell, dt, params, grid, conservation_fix).map_err(|e| e.with_cell(j))
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::init::{init_distribution, separable_state, InitSpec};
    use crate::linalg;
    use crate::phase_space::{build_grid, GridConfig, InternalSpacing};

    fn grid() -> PhaseSpaceGrid {
        build_grid(&GridConfig::homogeneous(32, 12.0, 32, 60.0, InternalSpacing::Mapped), 2.0).unwrap()
    }

    #[test]
    fn equilibrium_is_fixed() {
        let g = grid();
        let f = init_distribution(&InitSpec::equilibrium(1.0, [0.1, 0.0, 0.0], 1.0), &g).unwrap();
        let p = RelaxationParams::new(0.5, 0.5, 2.0, 8.0).unwrap();
        let h = relaxation_step(&f, 0.1, &p, &g, false).unwrap();
        let peak = f.values().iter().cloned().fold(0.0, f64::max);
        for (a, b) in h.values().iter().zip(f.values()) {
            assert!((a - b).abs() < 1e-12 * peak);
        }
    }

    #[test]
    fn long_step_reaches_gaussian() {
        let g = grid();
        let f = init_distribution(&InitSpec::two_temperature(1.0, [0.0; 3], 2.0, 1.0), &g).unwrap();
        let p = RelaxationParams::new(0.0, 1.0, 2.0, 8.0).unwrap();
        let h = relaxation_step(&f, 40.0, &p, &g, false).unwrap();
        let m = cell_moments(f.cell(0), &g).unwrap();
        let target = evaluate_gaussian(&m, &relaxation_fields(&m, &p).unwrap(), &g);
        let peak = f.values().iter().cloned().fold(0.0, f64::max);
        for ((a, b), c) in h.values().iter().zip(target.values()).zip(f.values()) {
            assert!((a - b).abs() <= (-40.0f64).exp() * (b - c).abs() + 1e-15 * peak);
        }
    }

    #[test]
    fn anisotropic_tensor_relaxes_linearly() {
        // velocity variances (2, 1, 1), internal temperature 1
        let g = grid();
        let p = RelaxationParams::new(0.0, 1.0, 2.0, 8.0).unwrap();
        let mut cell = separable_state(1.0, [0.0; 3], 1.0, 1.0, &g);
        let nodes = g.v_nodes();
        let n = nodes.len();
        for k in 0..g.i_len() {
            for a in 0..n {
                let stretch = (-(nodes[a] * nodes[a]) / 4.0 + nodes[a] * nodes[a] / 2.0).exp() / 2f64.sqrt();
                for r in 0..n * n {
                    cell[k * g.v_len() + a * n * n + r] *= stretch;
                }
            }
        }
        let f = Distribution::from_values(&g, cell).unwrap();
        let m0 = cell_moments(f.cell(0), &g).unwrap();
        assert!((m0.theta[0][0] - 2.0).abs() < 1e-7);
        let dt = 0.3;
        let h = relaxation_step(&f, dt, &p, &g, false).unwrap();
        let m1 = cell_moments(h.cell(0), &g).unwrap();
        let e = (-p.a() * dt).exp();
        let want = linalg::add(&linalg::scaled(&m0.theta, e), &linalg::scaled(&linalg::IDENTITY, (1.0 - e) * m0.t_total));
        for a in 0..3 {
            for b in 0..3 {
                assert!((m1.theta[a][b] - want[a][b]).abs() < 1e-10, "{a}{b} {} {}", m1.theta[a][b], want[a][b]);
            }
        }
    }

    #[test]
    fn fix_conserves_invariants() {
        let g = build_grid(&GridConfig::homogeneous(12, 12.0, 8, 60.0, InternalSpacing::Uniform), 2.0).unwrap();
        let f = init_distribution(&InitSpec::two_temperature(1.0, [0.4, 0.0, 0.0], 2.0, 1.0), &g).unwrap();
        let p = RelaxationParams::new(0.5, 0.8, 2.0, 8.0).unwrap();
        let before = invariant_moments(f.cell(0), &g);
        let loose = relaxation_step(&f, 0.5, &p, &g, false).unwrap();
        let tight = relaxation_step(&f, 0.5, &p, &g, true).unwrap();
        let drift = |h: &Distribution| {
            let after = invariant_moments(h.cell(0), &g);
            (0..5).map(|c| (after[c] - before[c]).abs()).fold(0.0, f64::max) / before[0]
        };
        assert!(drift(&tight) < 1e-13);
        assert!(drift(&loose) > 1e-8);
    }
}
