//! The `theta = 0` reduction: the internal-energy marginal evolves by the
//! monatomic ellipsoidal relaxation with tensor `(1 - nu) T_tr Id + nu Theta`
//! and frequency `1 / (1 - nu)`.

use alloc::vec::Vec;

use crate::correction::velocity_correction;
use crate::error::Result;
use crate::exec::{CellExecutor, Serial};
use crate::gaussian::{evaluate_velocity_gaussian, velocity_conservation_defect, ConservationDefect, GaussianField};
use crate::moments::{monatomic_fields, velocity_invariants, velocity_moments, MacroFields};
use crate::params::{collision_frequency, RelaxationParams};
use crate::phase_space::{Distribution, PhaseSpaceGrid};
use crate::sum::pairwise;

/// Marginal `g(x, v) = int f dI`, one velocity table per spatial cell.
#[derive(Debug, Clone, PartialEq)]
pub struct MonatomicState {
    g: Vec<f64>,
    x_count: usize,
    v_len: usize,
}

impl MonatomicState {
    pub fn new(g: Vec<f64>, x_count: usize, v_len: usize) -> Self {
        debug_assert_eq!(g.len(), x_count * v_len);
        Self { g, x_count, v_len }
    }

    pub fn values(&self) -> &[f64] {
        &self.g
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.g
    }

    pub fn x_count(&self) -> usize {
        self.x_count
    }

    pub fn v_len(&self) -> usize {
        self.v_len
    }

    pub fn cell(&self, j: usize) -> &[f64] {
        &self.g[j * self.v_len..(j + 1) * self.v_len]
    }

    pub fn fields(&self, grid: &PhaseSpaceGrid) -> Result<Vec<MacroFields>> {
        (0..self.x_count).map(|j| velocity_moments(self.cell(j), grid).map_err(|e| e.with_cell(j))).collect()
    }
}

pub fn marginalize_internal(f: &Distribution, grid: &PhaseSpaceGrid) -> MonatomicState {
    let mut g = Vec::with_capacity(f.x_count() * grid.v_len());
    for cell in f.cells() {
        g.extend(marginalize_cell(cell, grid));
    }
    MonatomicState::new(g, f.x_count(), grid.v_len())
}

/// `sum_k w_k f(I_k, v)` for one cell.
pub fn marginalize_cell(cell: &[f64], grid: &PhaseSpaceGrid) -> Vec<f64> {
    let nv = grid.v_len();
    let wi = grid.i_weights();
    (0..nv)
        .map(|i| pairwise::<1, _>(0, wi.len(), &|k, a: &mut [f64; 1]| a[0] += wi[k] * cell[k * nv + i])[0])
        .collect()
}

/// Monatomic Gaussian of a velocity table, optionally tilted to conserve
/// the discrete invariants.
pub(crate) fn monatomic_gaussian(g: &[f64], nu: f64, grid: &PhaseSpaceGrid, fix: bool) -> Result<(MacroFields, GaussianField)> {
    let m = velocity_moments(g, grid)?;
    let gp = monatomic_fields(&m, nu)?;
    let mut gaussian = evaluate_velocity_gaussian(&m, &gp, grid);
    if fix {
        let target = velocity_invariants(g, grid.velocities(), grid.velocity_weights());
        gaussian = velocity_correction(&gaussian, &target, grid)?.field;
    }
    Ok((m, gaussian))
}

/// One relaxation step of the marginal with `A_0 = 1 / (1 - nu)`.
pub fn monatomic_step(state: &MonatomicState, dt: f64, params: &RelaxationParams, grid: &PhaseSpaceGrid, fix: bool) -> Result<MonatomicState> {
    let mut out = state.clone();
    monatomic_step_with(&Serial, &mut out, dt, params, grid, fix)?;
    Ok(out)
}

pub fn monatomic_step_with<E: CellExecutor>(
    exec: &E,
    state: &mut MonatomicState,
    dt: f64,
    params: &RelaxationParams,
    grid: &PhaseSpaceGrid,
    fix: bool,
) -> Result<Vec<(MacroFields, ConservationDefect)>> {
    let a0 = collision_frequency(params.nu(), 0.0)?;
    let keep = libm::exp(-a0 * dt);
    let gain = -libm::expm1(-a0 * dt);
    let nu = params.nu();
    let v_len = state.v_len;
    exec.map_chunks_mut(&mut state.g, v_len, |j, cell| {
        let (m, gaussian) = monatomic_gaussian(cell, nu, grid, fix).map_err(|e| e.with_cell(j))?;
        let defect = velocity_conservation_defect(cell, &gaussian, grid);
        for (v, w) in cell.iter_mut().zip(gaussian.values()) {
            *v = keep * *v + gain * w;
        }
        Ok((m, defect))
    })
    .into_iter()
    .collect()
}
