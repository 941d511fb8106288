//! The polyatomic Gaussian attractor and its discrete conservation defect.
//!
//! The Gaussian factors as `exp(velocity part) * exp(internal part)` for
//! every `theta`, so a field is stored as two log tables and its values are
//! their products. Nodes whose combined exponent falls below
//! [`UNDERFLOW_EXPONENT`] are exactly zero.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::linalg::{self, Vec3};
use crate::moments::{GaussianParams, MacroFields};
use crate::params::lambda_delta;
use crate::phase_space::PhaseSpaceGrid;
use crate::sum::pairwise;

pub const UNDERFLOW_EXPONENT: f64 = -708.0;

/// Quadrature of the internal-energy axis. A velocity-only field uses a
/// single node of weight 1 and energy 0.
#[derive(Debug, Clone, Copy)]
pub struct InternalAxis<'a> {
    pub weights: &'a [f64],
    pub energies: &'a [f64],
}

impl<'a> InternalAxis<'a> {
    pub fn of(grid: &'a PhaseSpaceGrid) -> Self {
        Self { weights: grid.i_weights(), energies: grid.energies() }
    }

    pub fn velocity_only() -> Self {
        Self { weights: &[1.0], energies: &[0.0] }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Gaussian values over one cell, `[I node][v node]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianField {
    pub rho: f64,
    pub u: Vec3,
    pub params: GaussianParams,
    v_log: Vec<f64>,
    i_log: Vec<f64>,
    values: Vec<f64>,
}

impl GaussianField {
    /// Field with values `exp(v_log[i] + i_log[k])`.
    pub fn from_logs(rho: f64, u: Vec3, params: GaussianParams, v_log: Vec<f64>, i_log: Vec<f64>) -> Self {
        let ev: Vec<f64> = v_log.iter().map(|&l| libm::exp(l)).collect();
        let mut values = Vec::with_capacity(v_log.len() * i_log.len());
        for &li in &i_log {
            let ei = libm::exp(li);
            for (&lv, &e) in v_log.iter().zip(&ev) {
                values.push(if lv + li < UNDERFLOW_EXPONENT { 0.0 } else { e * ei });
            }
        }
        Self { rho, u, params, v_log, i_log, values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Log of the velocity factor, including the normalisation.
    pub fn v_log(&self) -> &[f64] {
        &self.v_log
    }

    pub fn i_log(&self) -> &[f64] {
        &self.i_log
    }

    /// Length scale `sqrt(trace(tensor) / 3)` used to centre and scale the
    /// correction basis.
    pub fn speed_scale(&self) -> f64 {
        libm::sqrt(linalg::trace(&self.params.tensor) / 3.0)
    }
}

/// `-(1/2) (v - U)^T T^{-1} (v - U)` via the Cholesky factor.
fn quadratic_exponent(gp: &GaussianParams, u: &Vec3, v: &Vec3) -> f64 {
    let y = linalg::forward_solve(&gp.factor, &[v[0] - u[0], v[1] - u[1], v[2] - u[2]]);
    -0.5 * linalg::norm_sq(&y)
}

/// Evaluates `rho Lambda det(2 pi T)^{-1/2} T_theta^{-delta/2}
/// exp(-(1/2)(v-U)^T T^{-1} (v-U) - I^{2/delta}/T_theta)` on the grid.
pub fn evaluate_gaussian(m: &MacroFields, gp: &GaussianParams, grid: &PhaseSpaceGrid) -> GaussianField {
    let delta = grid.delta();
    let log_prefactor = libm::log(m.rho) + libm::log(lambda_delta(delta))
        - 0.5 * (3.0 * libm::log(2.0 * PI) + gp.log_det)
        - 0.5 * delta * libm::log(gp.t_theta);
    let v_log = grid.velocities().iter().map(|v| log_prefactor + quadratic_exponent(gp, &m.u, v)).collect();
    let i_log = grid.energies().iter().map(|e| -e / gp.t_theta).collect();
    GaussianField::from_logs(m.rho, m.u, *gp, v_log, i_log)
}

/// Velocity-only Gaussian `rho det(2 pi T)^{-1/2} exp(-(1/2)(v-U)^T T^{-1} (v-U))`.
pub fn evaluate_velocity_gaussian(m: &MacroFields, gp: &GaussianParams, grid: &PhaseSpaceGrid) -> GaussianField {
    let log_prefactor = libm::log(m.rho) - 0.5 * (3.0 * libm::log(2.0 * PI) + gp.log_det);
    let v_log = grid.velocities().iter().map(|v| log_prefactor + quadratic_exponent(gp, &m.u, v)).collect();
    GaussianField::from_logs(m.rho, m.u, *gp, v_log, alloc::vec![0.0])
}

/// Direct pointwise evaluation of the Gaussian with a single exponential
/// per node, for checking the factored evaluation.
pub fn gaussian_value(m: &MacroFields, gp: &GaussianParams, delta: f64, v: &Vec3, energy: f64) -> f64 {
    let exponent = quadratic_exponent(gp, &m.u, v) - energy / gp.t_theta;
    if exponent < UNDERFLOW_EXPONENT {
        return 0.0;
    }
    let det = linalg::det(&gp.tensor);
    m.rho * lambda_delta(delta) / libm::sqrt(libm::pow(2.0 * PI, 3.0) * det) * libm::pow(gp.t_theta, -0.5 * delta)
        * libm::exp(exponent)
}

/// Direct evaluation over the whole cell, `[I node][v node]`.
pub fn evaluate_gaussian_direct(m: &MacroFields, gp: &GaussianParams, grid: &PhaseSpaceGrid) -> Vec<f64> {
    let mut out = Vec::with_capacity(grid.cell_len());
    for &e in grid.energies() {
        for v in grid.velocities() {
            out.push(gaussian_value(m, gp, grid.delta(), v, e));
        }
    }
    out
}

/// Integrals of `M - f` against `(1, v, |v|^2/2 + I^{2/delta})`.
///
/// `relative` divides the mass entry by `rho`, the momentum entries by
/// `rho (|U| + sqrt(e))` with `e` the peculiar energy per unit mass, and the
/// energy entry by the total energy of `f`. All scales are taken from `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationDefect {
    pub absolute: [f64; 5],
    pub relative: [f64; 5],
}

impl ConservationDefect {
    pub fn mass(&self) -> f64 {
        self.relative[0]
    }

    /// Largest relative momentum component, in absolute value.
    pub fn momentum(&self) -> f64 {
        self.relative[1..4].iter().fold(0.0, |a, b| f64::max(a, libm::fabs(*b)))
    }

    pub fn energy(&self) -> f64 {
        self.relative[4]
    }

    pub fn max_relative(&self) -> f64 {
        self.relative.iter().fold(0.0, |a, b| f64::max(a, libm::fabs(*b)))
    }
}

/// Invariant integrals of a cell table over a given internal axis.
pub fn invariants_on(cell: &[f64], grid: &PhaseSpaceGrid, axis: InternalAxis<'_>) -> [f64; 5] {
    let nv = grid.v_len();
    let vel = grid.velocities();
    let wv = grid.velocity_weights();
    pairwise::<5, _>(0, axis.len(), &|k, acc: &mut [f64; 5]| {
        let s = crate::moments::velocity_invariants(&cell[k * nv..(k + 1) * nv], vel, wv);
        let w = axis.weights[k];
        for c in 0..4 {
            acc[c] += w * s[c];
        }
        acc[4] += w * (s[4] + axis.energies[k] * s[0]);
    })
}

pub fn conservation_defect(f: &[f64], m: &GaussianField, grid: &PhaseSpaceGrid) -> ConservationDefect {
    defect_on(f, m, grid, InternalAxis::of(grid))
}

/// Defect of a velocity-only Gaussian against a velocity-only field.
pub fn velocity_conservation_defect(g: &[f64], m: &GaussianField, grid: &PhaseSpaceGrid) -> ConservationDefect {
    defect_on(g, m, grid, InternalAxis::velocity_only())
}

fn defect_on(f: &[f64], m: &GaussianField, grid: &PhaseSpaceGrid, axis: InternalAxis<'_>) -> ConservationDefect {
    let fm = invariants_on(f, grid, axis);
    let mm = invariants_on(m.values(), grid, axis);
    let mut absolute = [0.0; 5];
    for c in 0..5 {
        absolute[c] = mm[c] - fm[c];
    }
    let rho = fm[0];
    let u = [fm[1] / rho, fm[2] / rho, fm[3] / rho];
    let speed = libm::sqrt(linalg::norm_sq(&u));
    let thermal = (fm[4] / rho - 0.5 * speed * speed).max(0.0);
    let t_scale = libm::sqrt(thermal);
    let momentum_scale = rho * (speed + t_scale);
    let mut relative = [0.0; 5];
    relative[0] = absolute[0] / rho;
    for c in 1..4 {
        relative[c] = absolute[c] / momentum_scale;
    }
    relative[4] = absolute[4] / fm[4];
    ConservationDefect { absolute, relative }
}
