//! Time evolution: transport, relaxation, the run loop, the `theta = 0`
//! monatomic reduction and the successive-approximation diagnostic.

mod monatomic;
mod picard;
mod relax;
mod run;
mod transport;

pub use monatomic::{marginalize_cell, marginalize_internal, monatomic_step, monatomic_step_with, MonatomicState};
pub use picard::{picard_iterate, PicardResult};
pub use relax::{relax_cell, relaxation_step, relaxation_step_with, CellRelaxation};
pub use run::{
    run_simulation, run_simulation_with, CellRecord, FinalState, RunOutput, RunSummary, StepRecord,
};
pub use transport::{transport_step, transport_step_with};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpolation {
    Linear,
    /// Four-point Lagrange; negative results are clipped to zero and the
    /// clipped mass is reported.
    Cubic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    /// Transport `dt`, then relaxation `dt`.
    Lie,
    /// Transport `dt/2`, relaxation `dt`, transport `dt/2`.
    Strang,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Evolve,
    Picard,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub dt: f64,
    pub t_final: f64,
    pub interpolation: Interpolation,
    pub conservation_fix: bool,
    pub splitting: Splitting,
    pub mode: Mode,
    pub picard_iterations: usize,
    pub picard_time_nodes: usize,
    /// Steps between recorded outputs.
    pub output_interval: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            dt: 0.01,
            t_final: 1.0,
            interpolation: Interpolation::Linear,
            conservation_fix: false,
            splitting: Splitting::Lie,
            mode: Mode::Evolve,
            picard_iterations: 8,
            picard_time_nodes: 33,
            output_interval: 1,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidParams("dt must be positive"));
        }
        if !(self.t_final >= self.dt && self.t_final.is_finite()) {
            return Err(Error::InvalidParams("t_final must be at least dt"));
        }
        if self.output_interval == 0 {
            return Err(Error::InvalidParams("output interval must be at least 1"));
        }
        if self.mode == Mode::Picard && (self.picard_iterations < 1 || self.picard_time_nodes < 2) {
            return Err(Error::InvalidParams("picard needs at least 1 iteration and 2 time nodes"));
        }
        Ok(())
    }

    /// Number of steps: `t_final / dt` rounded to the nearest integer.
    pub fn steps(&self) -> usize {
        libm::round(self.t_final / self.dt).max(1.0) as usize
    }
}
