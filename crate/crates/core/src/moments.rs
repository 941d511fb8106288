//! Macroscopic fields of a distribution and the relaxation temperature and
//! tensor built from them.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exec::{CellExecutor, Serial};
use crate::linalg::{self, Mat3, Vec3, IDENTITY};
use crate::params::RelaxationParams;
use crate::phase_space::{Distribution, PhaseSpaceGrid};
use crate::sum::pairwise;

/// Densities below this are treated as vacuum.
pub const VACUUM_FLOOR: f64 = 1e-30;

/// Moments of one spatial cell.
///
/// `theta` is the temperature tensor `(1/rho) * int (v-U)(v-U)^T f`, so its
/// trace is `3 * t_tr`. `e_tr` and `e_int` are the peculiar translational and
/// internal energies. Fields of a velocity-only marginal carry `NaN` for the
/// internal quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MacroFields {
    pub rho: f64,
    pub u: Vec3,
    pub theta: Mat3,
    pub e_tr: f64,
    pub e_int: f64,
    pub t_tr: f64,
    pub t_int: f64,
    pub t_total: f64,
}

impl MacroFields {
    /// Fields of a state with given density, bulk velocity, temperature
    /// tensor and internal temperature.
    pub fn from_parts(rho: f64, u: Vec3, theta: Mat3, t_int: f64, delta: f64) -> Self {
        let t_tr = linalg::trace(&theta) / 3.0;
        Self {
            rho,
            u,
            theta,
            e_tr: 1.5 * rho * t_tr,
            e_int: 0.5 * delta * rho * t_int,
            t_tr,
            t_int,
            t_total: (3.0 * t_tr + delta * t_int) / (3.0 + delta),
        }
    }
}

/// Per-cell moments of `f`.
pub fn compute_moments(f: &Distribution, grid: &PhaseSpaceGrid) -> Result<Vec<MacroFields>> {
    compute_moments_with(&Serial, f, grid)
}

pub fn compute_moments_with<E: CellExecutor>(exec: &E, f: &Distribution, grid: &PhaseSpaceGrid) -> Result<Vec<MacroFields>> {
    check_shape(f, grid)?;
    exec.map_cells(f.x_count(), |j| cell_moments(f.cell(j), grid).map_err(|e| e.with_cell(j)))
        .into_iter()
        .collect()
}

pub(crate) fn check_shape(f: &Distribution, grid: &PhaseSpaceGrid) -> Result<()> {
    if f.values().len() != grid.len() || f.cell_len() != grid.cell_len() {
        return Err(Error::ShapeMismatch { expected: grid.len(), found: f.values().len() });
    }
    Ok(())
}

/// Moments of a single cell laid out as `[I node][v node]`.
///
/// Two passes: density and momentum first, then the second moments about
/// `U`, which avoids cancellation when the bulk speed is large.
pub fn cell_moments(cell: &[f64], grid: &PhaseSpaceGrid) -> Result<MacroFields> {
    let nv = grid.v_len();
    let vel = grid.velocities();
    let wv = grid.velocity_weights();
    let wi = grid.i_weights();
    let energy = grid.energies();
    let delta = grid.delta();

    let first = pairwise::<5, _>(0, grid.i_len(), &|k, acc: &mut [f64; 5]| {
        let block = &cell[k * nv..(k + 1) * nv];
        let s = pairwise::<4, _>(0, nv, &|i, a: &mut [f64; 4]| {
            let m = wv[i] * block[i];
            a[0] += m;
            a[1] += m * vel[i][0];
            a[2] += m * vel[i][1];
            a[3] += m * vel[i][2];
        });
        let w = wi[k];
        acc[0] += w * s[0];
        acc[1] += w * s[1];
        acc[2] += w * s[2];
        acc[3] += w * s[3];
        acc[4] += w * energy[k] * s[0];
    });
    let rho = first[0];
    if !(rho >= VACUUM_FLOOR) || !rho.is_finite() {
        return Err(Error::VacuumCell { cell: 0, rho });
    }
    let u = [first[1] / rho, first[2] / rho, first[3] / rho];

    let second = pairwise::<6, _>(0, grid.i_len(), &|k, acc: &mut [f64; 6]| {
        let block = &cell[k * nv..(k + 1) * nv];
        let s = pairwise::<6, _>(0, nv, &|i, a: &mut [f64; 6]| {
            let m = wv[i] * block[i];
            let c = [vel[i][0] - u[0], vel[i][1] - u[1], vel[i][2] - u[2]];
            a[0] += m * c[0] * c[0];
            a[1] += m * c[0] * c[1];
            a[2] += m * c[0] * c[2];
            a[3] += m * c[1] * c[1];
            a[4] += m * c[1] * c[2];
            a[5] += m * c[2] * c[2];
        });
        for (a, b) in acc.iter_mut().zip(s) {
            *a += wi[k] * b;
        }
    });
    let theta = [
        [second[0] / rho, second[1] / rho, second[2] / rho],
        [second[1] / rho, second[3] / rho, second[4] / rho],
        [second[2] / rho, second[4] / rho, second[5] / rho],
    ];
    let t_tr = linalg::trace(&theta) / 3.0;
    let t_int = 2.0 * first[4] / (delta * rho);
    Ok(MacroFields {
        rho,
        u,
        theta,
        e_tr: 1.5 * rho * t_tr,
        e_int: first[4],
        t_tr,
        t_int,
        t_total: (3.0 * t_tr + delta * t_int) / (3.0 + delta),
    })
}

/// Moments of a velocity-only field `g(v)` (one value per velocity node).
/// The internal quantities `e_int`, `t_int` and `t_total` are `NaN`.
pub fn velocity_moments(g: &[f64], grid: &PhaseSpaceGrid) -> Result<MacroFields> {
    let vel = grid.velocities();
    let wv = grid.velocity_weights();
    let first = pairwise::<4, _>(0, g.len(), &|i, a: &mut [f64; 4]| {
        let m = wv[i] * g[i];
        a[0] += m;
        a[1] += m * vel[i][0];
        a[2] += m * vel[i][1];
        a[3] += m * vel[i][2];
    });
    let rho = first[0];
    if !(rho >= VACUUM_FLOOR) || !rho.is_finite() {
        return Err(Error::VacuumCell { cell: 0, rho });
    }
    let u = [first[1] / rho, first[2] / rho, first[3] / rho];
    let s = pairwise::<6, _>(0, g.len(), &|i, a: &mut [f64; 6]| {
        let m = wv[i] * g[i];
        let c = [vel[i][0] - u[0], vel[i][1] - u[1], vel[i][2] - u[2]];
        a[0] += m * c[0] * c[0];
        a[1] += m * c[0] * c[1];
        a[2] += m * c[0] * c[2];
        a[3] += m * c[1] * c[1];
        a[4] += m * c[1] * c[2];
        a[5] += m * c[2] * c[2];
    });
    let theta = [
        [s[0] / rho, s[1] / rho, s[2] / rho],
        [s[1] / rho, s[3] / rho, s[4] / rho],
        [s[2] / rho, s[4] / rho, s[5] / rho],
    ];
    let t_tr = linalg::trace(&theta) / 3.0;
    Ok(MacroFields { rho, u, theta, e_tr: 1.5 * rho * t_tr, e_int: f64::NAN, t_tr, t_int: f64::NAN, t_total: f64::NAN })
}

/// Discrete integrals of `f` against the collision invariants
/// `(1, v_1, v_2, v_3, |v|^2/2 + I^{2/delta})`.
pub fn invariant_moments(cell: &[f64], grid: &PhaseSpaceGrid) -> [f64; 5] {
    let nv = grid.v_len();
    let vel = grid.velocities();
    let wv = grid.velocity_weights();
    let wi = grid.i_weights();
    let energy = grid.energies();
    pairwise::<5, _>(0, grid.i_len(), &|k, acc: &mut [f64; 5]| {
        let block = &cell[k * nv..(k + 1) * nv];
        let s = velocity_invariants(block, vel, wv);
        let w = wi[k];
        acc[0] += w * s[0];
        acc[1] += w * s[1];
        acc[2] += w * s[2];
        acc[3] += w * s[3];
        acc[4] += w * (s[4] + energy[k] * s[0]);
    })
}

/// `(1, v, |v|^2/2)` integrals of a velocity-only field.
pub fn velocity_invariants(g: &[f64], vel: &[Vec3], wv: &[f64]) -> [f64; 5] {
    pairwise::<5, _>(0, g.len(), &|i, a: &mut [f64; 5]| {
        let m = wv[i] * g[i];
        let v = &vel[i];
        a[0] += m;
        a[1] += m * v[0];
        a[2] += m * v[1];
        a[3] += m * v[2];
        a[4] += 0.5 * m * linalg::norm_sq(v);
    })
}

/// Relaxation temperature, corrected temperature tensor and its factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParams {
    pub t_theta: f64,
    pub tensor: Mat3,
    /// Lower Cholesky factor of `tensor`.
    pub factor: Mat3,
    /// `ln det(tensor)`.
    pub log_det: f64,
}

impl GaussianParams {
    /// Factorises `tensor`; fails when it is not positive definite or the
    /// relaxation temperature is not positive.
    pub fn new(t_theta: f64, tensor: Mat3) -> Result<Self> {
        if !(t_theta > 0.0) || !t_theta.is_finite() {
            return Err(Error::DegenerateTemperature { cell: 0, value: t_theta });
        }
        let factor = linalg::cholesky(&tensor).ok_or(Error::NonSpdTensor { cell: 0 })?;
        Ok(Self { t_theta, tensor, factor, log_det: linalg::log_det_from_factor(&factor) })
    }
}

/// `T_theta = theta T_delta + (1 - theta) T_int`.
pub fn relaxation_temperature(m: &MacroFields, theta: f64) -> f64 {
    theta * m.t_total + (1.0 - theta) * m.t_int
}

/// `theta T_delta Id + (1 - theta) [(1 - nu) T_tr Id + nu Theta]`.
pub fn relaxation_tensor(m: &MacroFields, nu: f64, theta: f64) -> Mat3 {
    let inner = linalg::add(&linalg::scaled(&IDENTITY, (1.0 - nu) * m.t_tr), &linalg::scaled(&m.theta, nu));
    linalg::add(&linalg::scaled(&IDENTITY, theta * m.t_total), &linalg::scaled(&inner, 1.0 - theta))
}

pub fn relaxation_fields(m: &MacroFields, params: &RelaxationParams) -> Result<GaussianParams> {
    if !(m.rho > 0.0) {
        return Err(Error::VacuumCell { cell: 0, rho: m.rho });
    }
    if !(m.t_total > 0.0) {
        return Err(Error::DegenerateTemperature { cell: 0, value: m.t_total });
    }
    GaussianParams::new(
        relaxation_temperature(m, params.theta()),
        relaxation_tensor(m, params.nu(), params.theta()),
    )
}

/// Monatomic tensor `(1 - nu) T_tr Id + nu Theta`. The temperature slot holds
/// `T_tr`, which the monatomic Gaussian ignores.
pub fn monatomic_fields(m: &MacroFields, nu: f64) -> Result<GaussianParams> {
    if !(m.rho > 0.0) {
        return Err(Error::VacuumCell { cell: 0, rho: m.rho });
    }
    let tensor = linalg::add(&linalg::scaled(&IDENTITY, (1.0 - nu) * m.t_tr), &linalg::scaled(&m.theta, nu));
    GaussianParams::new(m.t_tr, tensor)
}
