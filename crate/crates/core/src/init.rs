//! Initial data presets.
//!
//! Every preset is a separable Gaussian-exponential state in each cell, so
//! its value table is built from per-axis and per-internal-node factors.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::Vec3;
use crate::params::lambda_delta;
use crate::phase_space::{Distribution, PhaseSpaceGrid};
use crate::quadrature;

/// Tail mass fraction allowed outside the truncated grid for presets.
pub const DEFAULT_TAIL_FRACTION: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum InitSpec {
    /// `rho Lambda (2 pi T)^{-3/2} T^{-delta/2} exp(-|v-U|^2/(2T) - I^{2/delta}/T)`.
    Equilibrium { rho: f64, u: Vec3, t: f64 },
    /// Velocity temperature `t_tr`, internal temperature `t_int`.
    TwoTemperature { rho: f64, u: Vec3, t_tr: f64, t_int: f64 },
    /// Equilibrium with density `rho (1 + amplitude sin(2 pi mode x / L))`.
    SpatialWave { rho: f64, u: Vec3, t: f64, amplitude: f64, mode: u32 },
}

impl InitSpec {
    pub fn equilibrium(rho: f64, u: Vec3, t: f64) -> Self {
        Self::Equilibrium { rho, u, t }
    }

    pub fn two_temperature(rho: f64, u: Vec3, t_tr: f64, t_int: f64) -> Self {
        Self::TwoTemperature { rho, u, t_tr, t_int }
    }

    pub fn spatial_wave(rho: f64, u: Vec3, t: f64, amplitude: f64, mode: u32) -> Self {
        Self::SpatialWave { rho, u, t, amplitude, mode }
    }

    /// `(rho, U, T_velocity, T_internal)` before any spatial modulation.
    fn state(&self) -> (f64, Vec3, f64, f64) {
        match *self {
            Self::Equilibrium { rho, u, t } => (rho, u, t, t),
            Self::TwoTemperature { rho, u, t_tr, t_int } => (rho, u, t_tr, t_int),
            Self::SpatialWave { rho, u, t, .. } => (rho, u, t, t),
        }
    }

    fn validate(&self) -> Result<()> {
        let (rho, u, tv, ti) = self.state();
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::InvalidParams("initial density must be positive"));
        }
        if !(tv > 0.0 && ti > 0.0 && tv.is_finite() && ti.is_finite()) {
            return Err(Error::InvalidParams("initial temperatures must be positive"));
        }
        if !u.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidParams("initial bulk velocity must be finite"));
        }
        if let Self::SpatialWave { amplitude, .. } = *self {
            if !(amplitude.abs() < 1.0) {
                return Err(Error::InvalidParams("wave amplitude must lie in (-1, 1)"));
            }
        }
        Ok(())
    }

    /// Fraction of the preset's mass lying outside the truncated grid.
    pub fn tail_fraction(&self, grid: &PhaseSpaceGrid) -> f64 {
        let (_, u, tv, ti) = self.state();
        let v_max = grid.config().v_max;
        let s = libm::sqrt(2.0 * tv);
        let mut inside = 1.0;
        for c in u {
            let p = 0.5 * libm::erfc((v_max - c) / s) + 0.5 * libm::erfc((v_max + c) / s);
            inside *= 1.0 - p;
        }
        let delta = grid.delta();
        let u_max = libm::pow(grid.config().i_max, 2.0 / delta);
        let a = 0.5 * delta;
        let internal_tail =
            quadrature::exp_sinh(|s| libm::pow(s, a - 1.0) * libm::exp(-s), u_max / ti) / libm::tgamma(a);
        inside *= 1.0 - internal_tail.min(1.0);
        1.0 - inside
    }
}

pub fn init_distribution(spec: &InitSpec, grid: &PhaseSpaceGrid) -> Result<Distribution> {
    init_distribution_checked(spec, grid, DEFAULT_TAIL_FRACTION)
}

/// Builds the preset, failing with `CutoffTooSmall` when more than
/// `allowed` of its mass falls outside the grid.
pub fn init_distribution_checked(spec: &InitSpec, grid: &PhaseSpaceGrid, allowed: f64) -> Result<Distribution> {
    spec.validate()?;
    let tail = spec.tail_fraction(grid);
    if tail > allowed {
        return Err(Error::CutoffTooSmall { tail_fraction: tail, allowed });
    }
    let (rho, u, tv, ti) = spec.state();
    let base = separable_state(1.0, u, tv, ti, grid);
    let mut values = Vec::with_capacity(grid.len());
    for &x in grid.x_nodes() {
        let density = match *spec {
            InitSpec::SpatialWave { amplitude, mode, .. } if !grid.is_homogeneous() => {
                rho * (1.0 + amplitude * libm::sin(2.0 * PI * mode as f64 * x / grid.config().x_length))
            }
            _ => rho,
        };
        values.extend(base.iter().map(|b| density * b));
    }
    Ok(Distribution::from_raw(values, grid.x_count(), grid.cell_len()))
}

/// One cell of `rho Lambda (2 pi tv)^{-3/2} ti^{-delta/2}
/// exp(-|v-U|^2/(2 tv) - I^{2/delta}/ti)`.
pub fn separable_state(rho: f64, u: Vec3, tv: f64, ti: f64, grid: &PhaseSpaceGrid) -> Vec<f64> {
    let delta = grid.delta();
    let nodes = grid.v_nodes();
    let axis = |c: f64| -> Vec<f64> { nodes.iter().map(|v| libm::exp(-(v - c) * (v - c) / (2.0 * tv))).collect() };
    let (ex, ey, ez) = (axis(u[0]), axis(u[1]), axis(u[2]));
    let prefactor = rho * lambda_delta(delta) * libm::pow(2.0 * PI * tv, -1.5) * libm::pow(ti, -0.5 * delta);
    let mut out = Vec::with_capacity(grid.cell_len());
    for &e in grid.energies() {
        let ei = prefactor * libm::exp(-e / ti);
        for x in &ex {
            for y in &ey {
                let xy = ei * x * y;
                out.extend(ez.iter().map(|z| xy * z));
            }
        }
    }
    out
}
