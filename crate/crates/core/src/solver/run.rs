//! Time loop with per-step bookkeeping.

use alloc::vec::Vec;

use super::monatomic::{marginalize_internal, monatomic_gaussian, monatomic_step_with, MonatomicState};
use super::transport::transport_values;
use super::{Mode, SolverConfig, Splitting};
use crate::correction::conservative_correction;
use crate::diagnostics::{cell_entropy, check_h_monotonicity, HCheck};
use crate::error::{Error, Result};
use crate::exec::{CellExecutor, Serial};
use crate::gaussian::{conservation_defect, evaluate_gaussian, velocity_conservation_defect, ConservationDefect, InternalAxis};
use crate::linalg;
use crate::moments::{cell_moments, invariant_moments, relaxation_fields, MacroFields};
use crate::params::{lemma_constants, RelaxationParams};
use crate::phase_space::{Distribution, NormWeights, PhaseSpaceGrid};
use crate::sum;

/// Relative slack of the norm growth envelope.
pub const ENVELOPE_SLACK: f64 = 1e-6;
/// Relative slack of the density lower bound.
pub const DENSITY_SLACK: f64 = 1e-6;
/// Relative H tolerance for relaxation-only runs.
pub const H_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CellRecord {
    pub x: f64,
    pub fields: MacroFields,
    /// `int f ln f` over velocity and internal energy.
    pub entropy: f64,
    /// Defect of the Gaussian the next step would use.
    pub defect: ConservationDefect,
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub step: usize,
    pub t: f64,
    pub cells: Vec<CellRecord>,
    /// Spatial totals of the collision invariant integrals.
    pub invariants: [f64; 5],
    pub entropy: f64,
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FinalState {
    Polyatomic(Distribution),
    /// `theta = 0` runs evolve the internal-energy marginal.
    Monatomic(MonatomicState),
}

/// Run-level measurements and the outcome of the built-in assertions.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub steps: usize,
    pub min_rho: f64,
    pub min_t_total: f64,
    /// Largest `rho + |U| + T` seen (translational `T` on the monatomic path).
    pub max_rho_u_t: f64,
    pub min_value: f64,
    pub clipped_mass: f64,
    pub entropy_series: Vec<f64>,
    pub norm_series: Vec<f64>,
    pub initial_norm: f64,
    pub initial_min_rho: f64,
    /// `e^{c_growth t_n}` envelope check; `None` when `theta = 0`.
    pub envelope_ok: Option<bool>,
    pub worst_envelope_ratio: f64,
    pub density_bound_ok: bool,
    pub entropy_check: HCheck,
    /// The H check is binding only without transport.
    pub entropy_binding: bool,
    pub max_invariant_drift: [f64; 3],
}

impl RunSummary {
    pub fn assertions_passed(&self) -> bool {
        self.envelope_ok.unwrap_or(true)
            && self.density_bound_ok
            && self.min_value >= 0.0
            && (!self.entropy_binding || self.entropy_check.passed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub records: Vec<StepRecord>,
    pub final_state: FinalState,
    pub summary: RunSummary,
}

pub fn run_simulation(cfg: &SolverConfig, grid: &PhaseSpaceGrid, params: &RelaxationParams, f0: &Distribution) -> Result<RunOutput> {
    run_simulation_with(&Serial, cfg, grid, params, f0)
}

/// Evolves `f0` for `cfg.steps()` steps. `theta = 0` switches to the
/// monatomic evolution of the marginal.
pub fn run_simulation_with<E: CellExecutor>(
    exec: &E,
    cfg: &SolverConfig,
    grid: &PhaseSpaceGrid,
    params: &RelaxationParams,
    f0: &Distribution,
) -> Result<RunOutput> {
    cfg.validate()?;
    if cfg.mode != Mode::Evolve {
        return Err(Error::InvalidParams("run_simulation needs evolve mode"));
    }
    crate::moments::check_shape(f0, grid)?;
    if f0.min_value() < 0.0 {
        let index = f0.values().iter().position(|v| *v < 0.0).unwrap_or(0);
        return Err(Error::NegativeInput { index, value: f0.values()[index] });
    }
    let mut state = if params.theta() == 0.0 {
        State::Mono(marginalize_internal(f0, grid))
    } else {
        State::Poly(f0.clone())
    };
    let weights = grid.norm_weights(params.q());
    let mono_weights = velocity_norm_weights(grid, params.q());
    let growth = if params.theta() > 0.0 { Some(lemma_constants(params)?.c_growth) } else { None };

    let steps = cfg.steps();
    let first = state.record(exec, 0, 0.0, grid, params, cfg.conservation_fix, &weights, &mono_weights).map_err(|e| e.at_step(0))?;
    let initial_norm = first.norm;
    let initial_min_rho = first.cells.iter().map(|c| c.fields.rho).fold(f64::INFINITY, f64::min);
    let initial_invariants = first.invariants;
    let mut tracker = Tracker::new(&first);
    tracker.min_value = state.min_value();
    let mut records = alloc::vec![first];
    let mut clipped_mass = 0.0;
    let mut worst_envelope_ratio: f64 = 0.0;

    for n in 1..=steps {
        let t = n as f64 * cfg.dt;
        let step = (|| -> Result<()> {
            match cfg.splitting {
                Splitting::Lie => {
                    clipped_mass += state.transport(exec, grid, cfg.dt, cfg.interpolation);
                    state.relax(exec, grid, params, cfg.dt, cfg.conservation_fix)?;
                }
                Splitting::Strang => {
                    clipped_mass += state.transport(exec, grid, 0.5 * cfg.dt, cfg.interpolation);
                    state.relax(exec, grid, params, cfg.dt, cfg.conservation_fix)?;
                    clipped_mass += state.transport(exec, grid, 0.5 * cfg.dt, cfg.interpolation);
                }
            }
            Ok(())
        })();
        step.map_err(|e| e.at_step(n))?;

        let record = if n % cfg.output_interval == 0 || n == steps {
            let r = state.record(exec, n, t, grid, params, cfg.conservation_fix, &weights, &mono_weights).map_err(|e| e.at_step(n))?;
            tracker.observe_record(&r);
            Some(r)
        } else {
            let (fields, norm) = state.light(exec, grid, &weights, &mono_weights).map_err(|e| e.at_step(n))?;
            tracker.observe(&fields, norm);
            None
        };
        tracker.min_value = tracker.min_value.min(state.min_value());
        let norm = *tracker.norm_series.last().unwrap_or(&0.0);
        if let Some(c) = growth {
            let bound = libm::exp(c * t) * initial_norm;
            worst_envelope_ratio = worst_envelope_ratio.max(norm / bound);
        }
        if let Some(r) = record {
            records.push(r);
        }
    }

    let last = records.last().expect("at least the initial record");
    let mut drift = [0.0; 3];
    let scale_rho = initial_invariants[0].abs();
    drift[0] = (last.invariants[0] - initial_invariants[0]).abs() / scale_rho;
    drift[1] = (1..4).map(|c| (last.invariants[c] - initial_invariants[c]).abs()).fold(0.0, f64::max) / scale_rho;
    drift[2] = (last.invariants[4] - initial_invariants[4]).abs() / initial_invariants[4].abs();

    let t_final = steps as f64 * cfg.dt;
    let final_min_rho = last.cells.iter().map(|c| c.fields.rho).fold(f64::INFINITY, f64::min);
    let a = if params.theta() == 0.0 { crate::params::collision_frequency(params.nu(), 0.0)? } else { params.a() };
    let density_bound_ok = final_min_rho >= libm::exp(-a * t_final) * initial_min_rho * (1.0 - DENSITY_SLACK);
    let entropy_check = check_h_monotonicity(&tracker.entropy_series, H_TOLERANCE);
    let summary = RunSummary {
        steps,
        min_rho: tracker.min_rho,
        min_t_total: tracker.min_t,
        max_rho_u_t: tracker.max_rut,
        min_value: tracker.min_value,
        clipped_mass,
        entropy_series: tracker.entropy_series,
        norm_series: tracker.norm_series,
        initial_norm,
        initial_min_rho,
        envelope_ok: growth.map(|_| worst_envelope_ratio <= 1.0 + ENVELOPE_SLACK),
        worst_envelope_ratio,
        density_bound_ok,
        entropy_check,
        entropy_binding: grid.is_homogeneous(),
        max_invariant_drift: drift,
    };
    let final_state = match state {
        State::Poly(f) => FinalState::Polyatomic(f),
        State::Mono(g) => FinalState::Monatomic(g),
    };
    Ok(RunOutput { records, final_state, summary })
}

fn velocity_norm_weights(grid: &PhaseSpaceGrid, q: f64) -> Vec<f64> {
    grid.velocities().iter().map(|v| libm::pow(1.0 + linalg::norm_sq(v), 0.5 * q)).collect()
}

struct Tracker {
    min_rho: f64,
    min_t: f64,
    max_rut: f64,
    min_value: f64,
    entropy_series: Vec<f64>,
    norm_series: Vec<f64>,
}

impl Tracker {
    fn new(first: &StepRecord) -> Self {
        let mut t = Self {
            min_rho: f64::INFINITY,
            min_t: f64::INFINITY,
            max_rut: 0.0,
            min_value: f64::INFINITY,
            entropy_series: Vec::new(),
            norm_series: Vec::new(),
        };
        t.observe_record(first);
        t
    }

    fn observe_fields(&mut self, fields: &[MacroFields]) {
        for m in fields {
            let temp = if m.t_total.is_nan() { m.t_tr } else { m.t_total };
            self.min_rho = self.min_rho.min(m.rho);
            self.min_t = self.min_t.min(temp);
            self.max_rut = self.max_rut.max(m.rho + libm::sqrt(linalg::norm_sq(&m.u)) + temp);
        }
    }

    fn observe(&mut self, fields: &[MacroFields], norm: f64) {
        self.observe_fields(fields);
        self.norm_series.push(norm);
    }

    fn observe_record(&mut self, r: &StepRecord) {
        let fields: Vec<MacroFields> = r.cells.iter().map(|c| c.fields).collect();
        self.observe_fields(&fields);
        self.norm_series.push(r.norm);
        self.entropy_series.push(r.entropy);
    }
}

enum State {
    Poly(Distribution),
    Mono(MonatomicState),
}

impl State {
    fn transport<E: CellExecutor>(&mut self, exec: &E, grid: &PhaseSpaceGrid, dt: f64, interp: super::Interpolation) -> f64 {
        if grid.is_homogeneous() {
            return 0.0;
        }
        match self {
            State::Poly(f) => {
                let (values, clip) = transport_values(exec, f.values(), grid, grid.i_weights(), dt, interp);
                *f = Distribution::from_raw(values, f.x_count(), f.cell_len());
                clip
            }
            State::Mono(g) => {
                let (values, clip) = transport_values(exec, g.values(), grid, &[1.0], dt, interp);
                *g = MonatomicState::new(values, g.x_count(), g.v_len());
                clip
            }
        }
    }

    fn relax<E: CellExecutor>(&mut self, exec: &E, grid: &PhaseSpaceGrid, params: &RelaxationParams, dt: f64, fix: bool) -> Result<()> {
        match self {
            State::Poly(f) => super::relaxation_step_with(exec, f, dt, params, grid, fix).map(|_| ()),
            State::Mono(g) => monatomic_step_with(exec, g, dt, params, grid, fix).map(|_| ()),
        }
    }

    fn cells(&self) -> (&[f64], usize, usize) {
        match self {
            State::Poly(f) => (f.values(), f.x_count(), f.cell_len()),
            State::Mono(g) => (g.values(), g.x_count(), g.v_len()),
        }
    }

    fn min_value(&self) -> f64 {
        self.cells().0.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Moments and norm without the Gaussian diagnostics.
    fn light<E: CellExecutor>(&self, exec: &E, grid: &PhaseSpaceGrid, weights: &NormWeights, mono: &[f64]) -> Result<(Vec<MacroFields>, f64)> {
        let (values, nx, len) = self.cells();
        let poly = matches!(self, State::Poly(_));
        let per_cell: Vec<Result<(MacroFields, f64)>> = exec.map_cells(nx, |j| {
            let cell = &values[j * len..(j + 1) * len];
            let m = if poly { cell_moments(cell, grid) } else { crate::moments::velocity_moments(cell, grid) }
                .map_err(|e| e.with_cell(j))?;
            let norm = if poly { weights.cell_norm(cell) } else { mono_norm(cell, mono) };
            Ok((m, norm))
        });
        let mut fields = Vec::with_capacity(nx);
        let mut norm: f64 = 0.0;
        for r in per_cell {
            let (m, n) = r?;
            fields.push(m);
            norm = norm.max(n);
        }
        Ok((fields, norm))
    }

    #[allow(clippy::too_many_arguments)]
    fn record<E: CellExecutor>(
        &self,
        exec: &E,
        step: usize,
        t: f64,
        grid: &PhaseSpaceGrid,
        params: &RelaxationParams,
        fix: bool,
        weights: &NormWeights,
        mono: &[f64],
    ) -> Result<StepRecord> {
        let (values, nx, len) = self.cells();
        let poly = matches!(self, State::Poly(_));
        let cells: Vec<Result<(CellRecord, [f64; 5])>> = exec.map_cells(nx, |j| {
            let cell = &values[j * len..(j + 1) * len];
            let x = grid.x_nodes()[j];
            let out = if poly {
                let m = cell_moments(cell, grid)?;
                let gp = relaxation_fields(&m, params)?;
                let mut gaussian = evaluate_gaussian(&m, &gp, grid);
                let inv = invariant_moments(cell, grid);
                if fix {
                    gaussian = conservative_correction(&gaussian, &inv, grid)?.field;
                }
                let rec = CellRecord {
                    x,
                    fields: m,
                    entropy: cell_entropy(cell, grid, InternalAxis::of(grid)),
                    defect: conservation_defect(cell, &gaussian, grid),
                    norm: weights.cell_norm(cell),
                };
                (rec, inv)
            } else {
                let (m, gaussian) = monatomic_gaussian(cell, params.nu(), grid, fix)?;
                let inv = crate::moments::velocity_invariants(cell, grid.velocities(), grid.velocity_weights());
                let rec = CellRecord {
                    x,
                    fields: m,
                    entropy: cell_entropy(cell, grid, InternalAxis::velocity_only()),
                    defect: velocity_conservation_defect(cell, &gaussian, grid),
                    norm: mono_norm(cell, mono),
                };
                (rec, inv)
            };
            Ok(out)
        });
        let mut records = Vec::with_capacity(nx);
        let mut inv = Vec::with_capacity(nx);
        for (j, r) in cells.into_iter().enumerate() {
            let (rec, i) = r.map_err(|e: Error| e.with_cell(j))?;
            records.push(rec);
            inv.push(i);
        }
        let dx = grid.x_weight();
        let invariants: [f64; 5] = core::array::from_fn(|c| dx * sum::pairwise::<1, _>(0, nx, &|j, a: &mut [f64; 1]| a[0] += inv[j][c])[0]);
        let entropy = dx * sum::pairwise::<1, _>(0, nx, &|j, a: &mut [f64; 1]| a[0] += records[j].entropy)[0];
        let norm = records.iter().map(|c| c.norm).fold(0.0, f64::max);
        Ok(StepRecord { step, t, cells: records, invariants, entropy, norm })
    }
}

fn mono_norm(cell: &[f64], weights: &[f64]) -> f64 {
    cell.iter().zip(weights).map(|(g, w)| libm::fabs(*g) * w).fold(0.0, f64::max)
}
