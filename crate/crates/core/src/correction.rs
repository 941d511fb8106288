//! Discrete enforcement of the cancellation properties.
//!
//! A Gaussian `M` is tilted to `M exp(l . psi)` with the centred, scaled
//! basis `psi = (1, xi, |xi|^2/2 + I^{2/delta}/s^2)`, `xi = (v - U)/s`, and
//! `l` is found by damped Newton so that the discrete integrals of the
//! collision invariants match a target. The tilt keeps the velocity and
//! internal factors separate, so every Newton sweep costs one pass over the
//! velocity nodes plus one over the internal nodes.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gaussian::{GaussianField, InternalAxis, UNDERFLOW_EXPONENT};
use crate::linalg;
use crate::phase_space::PhaseSpaceGrid;
use crate::sum::pairwise;

pub const MAX_ITERATIONS: usize = 50;
/// Required residual, relative to the target mass.
pub const TOLERANCE: f64 = 1e-12;
const STOP: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq)]
pub struct Correction {
    pub field: GaussianField,
    /// Tilt coefficients in the scaled basis.
    pub coefficients: [f64; 5],
    pub iterations: usize,
    /// Final max residual relative to the target mass.
    pub residual: f64,
}

/// Tilts `m` so its invariant integrals equal `target`, the raw integrals
/// `(int f, int v f, int (|v|^2/2 + I^{2/delta}) f)`.
pub fn conservative_correction(m: &GaussianField, target: &[f64; 5], grid: &PhaseSpaceGrid) -> Result<Correction> {
    correct_on(m, target, grid, InternalAxis::of(grid))
}

/// Same for a velocity-only Gaussian; `target` holds `(int g, int v g,
/// int |v|^2/2 g)`.
pub fn velocity_correction(m: &GaussianField, target: &[f64; 5], grid: &PhaseSpaceGrid) -> Result<Correction> {
    correct_on(m, target, grid, InternalAxis::velocity_only())
}

struct Basis<'a> {
    xi: Vec<[f64; 3]>,
    eta_v: Vec<f64>,
    eta_i: Vec<f64>,
    wv: &'a [f64],
    wi: &'a [f64],
}

impl Basis<'_> {
    /// Integrals `G = int psi M e^{l.psi}` and the Jacobian `int psi psi^T ...`.
    fn moments(&self, v_log: &[f64], i_log: &[f64], l: &[f64; 5]) -> ([f64; 5], [[f64; 5]; 5]) {
        let lv = |i: usize| v_log[i] + l[0] + l[1] * self.xi[i][0] + l[2] * self.xi[i][1] + l[3] * self.xi[i][2] + l[4] * self.eta_v[i];
        let li = |k: usize| i_log[k] + l[4] * self.eta_i[k];
        // largest internal exponent decides which velocity nodes underflow
        let li_max = (0..i_log.len()).map(li).fold(f64::NEG_INFINITY, f64::max);
        let sv = pairwise::<15, _>(0, v_log.len(), &|i, a: &mut [f64; 15]| {
            let e = lv(i);
            if e + li_max < UNDERFLOW_EXPONENT {
                return;
            }
            let m = self.wv[i] * libm::exp(e);
            let x = &self.xi[i];
            let h = self.eta_v[i];
            a[0] += m;
            a[1] += m * x[0];
            a[2] += m * x[1];
            a[3] += m * x[2];
            a[4] += m * h;
            a[5] += m * x[0] * x[0];
            a[6] += m * x[0] * x[1];
            a[7] += m * x[0] * x[2];
            a[8] += m * x[1] * x[1];
            a[9] += m * x[1] * x[2];
            a[10] += m * x[2] * x[2];
            a[11] += m * x[0] * h;
            a[12] += m * x[1] * h;
            a[13] += m * x[2] * h;
            a[14] += m * h * h;
        });
        let si = pairwise::<3, _>(0, i_log.len(), &|k, a: &mut [f64; 3]| {
            let m = self.wi[k] * libm::exp(li(k));
            let h = self.eta_i[k];
            a[0] += m;
            a[1] += m * h;
            a[2] += m * h * h;
        });
        let g = [
            sv[0] * si[0],
            sv[1] * si[0],
            sv[2] * si[0],
            sv[3] * si[0],
            sv[4] * si[0] + sv[0] * si[1],
        ];
        let xx = [[sv[5], sv[6], sv[7]], [sv[6], sv[8], sv[9]], [sv[7], sv[9], sv[10]]];
        let mut j = [[0.0; 5]; 5];
        j[0][0] = g[0];
        for a in 0..3 {
            j[0][a + 1] = g[a + 1];
            j[a + 1][0] = g[a + 1];
            for b in 0..3 {
                j[a + 1][b + 1] = xx[a][b] * si[0];
            }
            let c = sv[11 + a] * si[0] + sv[1 + a] * si[1];
            j[a + 1][4] = c;
            j[4][a + 1] = c;
        }
        j[0][4] = g[4];
        j[4][0] = g[4];
        j[4][4] = sv[14] * si[0] + 2.0 * sv[4] * si[1] + sv[0] * si[2];
        (g, j)
    }
}

fn correct_on(m: &GaussianField, target: &[f64; 5], grid: &PhaseSpaceGrid, axis: InternalAxis<'_>) -> Result<Correction> {
    if !(target[0] > 0.0) {
        return Err(Error::VacuumCell { cell: 0, rho: target[0] });
    }
    let u = m.u;
    let s = m.speed_scale();
    let s2 = s * s;
    let xi: Vec<[f64; 3]> =
        grid.velocities().iter().map(|v| [(v[0] - u[0]) / s, (v[1] - u[1]) / s, (v[2] - u[2]) / s]).collect();
    let eta_v = xi.iter().map(|x| 0.5 * linalg::norm_sq(x)).collect();
    let eta_i = axis.energies.iter().map(|e| e / s2).collect();
    let basis = Basis { xi, eta_v, eta_i, wv: grid.velocity_weights(), wi: axis.weights };

    // target in the scaled basis
    let r0 = target[0];
    let t = [
        r0,
        (target[1] - u[0] * r0) / s,
        (target[2] - u[1] * r0) / s,
        (target[3] - u[2] * r0) / s,
        (target[4] - u[0] * target[1] - u[1] * target[2] - u[2] * target[3] + 0.5 * linalg::norm_sq(&u) * r0) / s2,
    ];
    let residual = |g: &[f64; 5]| (0..5).map(|c| libm::fabs(g[c] - t[c])).fold(0.0, f64::max) / r0;

    let mut l = [0.0; 5];
    let (mut g, mut j) = basis.moments(m.v_log(), m.i_log(), &l);
    let mut res = residual(&g);
    let mut iterations = 0;
    while res > STOP && iterations < MAX_ITERATIONS {
        iterations += 1;
        let rhs = [t[0] - g[0], t[1] - g[1], t[2] - g[2], t[3] - g[3], t[4] - g[4]];
        let Some(step) = linalg::solve_dense(j, rhs) else { break };
        let mut scale = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let trial = core::array::from_fn(|c| l[c] + scale * step[c]);
            let (g2, j2) = basis.moments(m.v_log(), m.i_log(), &trial);
            let r2 = residual(&g2);
            if r2 < res {
                l = trial;
                g = g2;
                j = j2;
                res = r2;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if !(res <= TOLERANCE) {
        return Err(Error::CorrectionDiverged { cell: 0, iterations, residual: res });
    }

    let v_log = m
        .v_log()
        .iter()
        .zip(&basis.xi)
        .zip(&basis.eta_v)
        .map(|((lv, x), h)| lv + l[0] + l[1] * x[0] + l[2] * x[1] + l[3] * x[2] + l[4] * h)
        .collect();
    let i_log = m.i_log().iter().zip(&basis.eta_i).map(|(li, h)| li + l[4] * h).collect();
    Ok(Correction {
        field: GaussianField::from_logs(m.rho, m.u, m.params, v_log, i_log),
        coefficients: l,
        iterations,
        residual: res,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{conservation_defect, evaluate_gaussian, invariants_on};
    use crate::init::{init_distribution, InitSpec};
    use crate::moments::{cell_moments, invariant_moments, relaxation_fields};
    use crate::params::RelaxationParams;
    use crate::phase_space::{build_grid, GridConfig, InternalSpacing};

    fn setup(v_count: usize, i_count: usize) -> (PhaseSpaceGrid, Vec<f64>, GaussianField) {
        let g = build_grid(&GridConfig::homogeneous(v_count, 9.0, i_count, 60.0, InternalSpacing::Mapped), 2.0).unwrap();
        let f = init_distribution(&InitSpec::two_temperature(1.0, [0.3, 0.0, -0.1], 1.6, 0.9), &g).unwrap();
        let m = cell_moments(f.cell(0), &g).unwrap();
        let gp = relaxation_fields(&m, &RelaxationParams::new(0.5, 0.5, 2.0, 8.0).unwrap()).unwrap();
        let mf = evaluate_gaussian(&m, &gp, &g);
        (g, f.into_values(), mf)
    }

    #[test]
    fn matching_target_is_identity() {
        let (g, _, mf) = setup(16, 24);
        let target = invariants_on(mf.values(), &g, InternalAxis::of(&g));
        let c = conservative_correction(&mf, &target, &g).unwrap();
        assert_eq!(c.iterations, 0);
        assert_eq!(c.coefficients, [0.0; 5]);
        assert_eq!(c.field.values(), mf.values());
    }

    #[test]
    fn pure_mass_defect() {
        let (g, _, mf) = setup(16, 24);
        let target = invariants_on(mf.values(), &g, InternalAxis::of(&g));
        let scaled = GaussianField::from_logs(
            mf.rho,
            mf.u,
            mf.params,
            mf.v_log().iter().map(|l| l + 1.01f64.ln()).collect(),
            mf.i_log().to_vec(),
        );
        let c = conservative_correction(&scaled, &target, &g).unwrap();
        assert!((c.coefficients[0] + 1.01f64.ln()).abs() < 1e-12);
        for k in 1..5 {
            assert!(c.coefficients[k].abs() < 1e-12);
        }
        let after = invariants_on(c.field.values(), &g, InternalAxis::of(&g));
        assert!((after[0] / target[0] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn coarse_grid_defect_removed() {
        let (g, f, mf) = setup(8, 6);
        let before = conservation_defect(&f, &mf, &g);
        assert!(before.max_relative() > 1e-10);
        let c = conservative_correction(&mf, &invariant_moments(&f, &g), &g).unwrap();
        let after = conservation_defect(&f, &c.field, &g);
        assert!(after.max_relative() < 1e-12, "{:?}", after);
        // the pointwise change stays at the size of the removed defect
        let peak = mf.values().iter().cloned().fold(0.0, f64::max);
        let change = mf.values().iter().zip(c.field.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / peak;
        assert!(change < 50.0 * before.max_relative(), "{change} {:?}", before);
    }

    #[test]
    fn unreachable_target_diverges() {
        let (g, _, mf) = setup(8, 6);
        // energy below the kinetic part of the momentum is not attainable
        let target = [1.0, 5.0, 0.0, 0.0, 1.0];
        assert!(matches!(conservative_correction(&mf, &target, &g), Err(Error::CorrectionDiverged { .. })));
    }
}
