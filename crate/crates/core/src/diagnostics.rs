//! Entropy, the H-monotonicity check and the suite of moment and norm
//! inequalities with explicit constants.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::Result;
use crate::gaussian::{evaluate_gaussian, InternalAxis};
use crate::linalg;
use crate::moments::{cell_moments, check_shape, relaxation_fields};
use crate::params::{density_constant, gaussian_constant, momentum_constant, tail_constant, tensor_constant, RelaxationParams};
use crate::phase_space::{Distribution, PhaseSpaceGrid};
use crate::sum::pairwise;

/// Relative slack of the tensor and relaxation temperature bounds.
pub const TENSOR_SLACK: f64 = 1e-9;

/// `int f ln f` over one cell, with `0 ln 0 = 0`.
pub fn cell_entropy(cell: &[f64], grid: &PhaseSpaceGrid, axis: InternalAxis<'_>) -> f64 {
    let nv = grid.v_len();
    let wv = grid.velocity_weights();
    pairwise::<1, _>(0, axis.len(), &|k, acc: &mut [f64; 1]| {
        let block = &cell[k * nv..(k + 1) * nv];
        let s = pairwise::<1, _>(0, nv, &|i, a: &mut [f64; 1]| {
            let f = block[i];
            if f > 0.0 {
                a[0] += wv[i] * f * libm::log(f);
            }
        });
        acc[0] += axis.weights[k] * s[0];
    })[0]
}

/// `int f ln f` over the whole phase space.
pub fn entropy(f: &Distribution, grid: &PhaseSpaceGrid) -> f64 {
    let per_cell: Vec<f64> = f.cells().map(|c| cell_entropy(c, grid, InternalAxis::of(grid))).collect();
    grid.x_weight() * crate::sum::sum(&per_cell)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HCheck {
    pub passed: bool,
    /// Largest `H_{n+1} - H_n` (negative when strictly decreasing).
    pub worst_increase: f64,
    pub tolerance: f64,
    /// Step index of the worst increase.
    pub worst_step: usize,
}

/// Passes when `H_{n+1} <= H_n + relative_tolerance * |H_0|` throughout.
pub fn check_h_monotonicity(series: &[f64], relative_tolerance: f64) -> HCheck {
    let tolerance = relative_tolerance * series.first().map_or(0.0, |h| libm::fabs(*h));
    let mut worst_increase = f64::NEG_INFINITY;
    let mut worst_step = 0;
    for (n, w) in series.windows(2).enumerate() {
        let inc = w[1] - w[0];
        if inc > worst_increase {
            worst_increase = inc;
            worst_step = n + 1;
        }
    }
    if series.len() < 2 {
        worst_increase = 0.0;
    }
    HCheck { passed: worst_increase <= tolerance, worst_increase, tolerance, worst_step }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A hypothesis of the inequality does not hold; nothing was evaluated.
    Skipped(&'static str),
}

/// One inequality `lhs <= rhs` with `margin = rhs / lhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cell: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub status: CheckStatus,
}

impl CheckResult {
    pub fn evaluate(name: &'static str, cell: usize, lhs: f64, rhs: f64) -> Self {
        let margin = if lhs == 0.0 && rhs >= 0.0 { f64::INFINITY } else { rhs / lhs };
        let status = if lhs <= rhs { CheckStatus::Pass } else { CheckStatus::Fail };
        Self { name, cell, lhs, rhs, margin, status }
    }

    pub fn skipped(name: &'static str, cell: usize, reason: &'static str) -> Self {
        Self { name, cell, lhs: f64::NAN, rhs: f64::NAN, margin: f64::NAN, status: CheckStatus::Skipped(reason) }
    }
}

pub const CHECK_NAMES: [&str; 8] = [
    "tensor_lower_bound",
    "tensor_upper_bound",
    "relaxation_temperature_lower",
    "relaxation_temperature_upper",
    "density_bound",
    "tail_moment_bound",
    "momentum_bound",
    "gaussian_norm_bound",
];

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsReport {
    pub checks: Vec<CheckResult>,
    pub min_rho: f64,
    pub min_t_total: f64,
    pub max_rho_u_t: f64,
}

impl DiagnosticsReport {
    fn empty() -> Self {
        Self { checks: Vec::new(), min_rho: f64::INFINITY, min_t_total: f64::INFINITY, max_rho_u_t: 0.0 }
    }

    pub fn merge(&mut self, other: DiagnosticsReport) {
        self.checks.extend(other.checks);
        self.min_rho = self.min_rho.min(other.min_rho);
        self.min_t_total = self.min_t_total.min(other.min_t_total);
        self.max_rho_u_t = self.max_rho_u_t.max(other.max_rho_u_t);
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    /// Smallest margin among evaluated checks named `name`.
    pub fn min_margin(&self, name: &str) -> f64 {
        self.checks.iter().filter(|c| c.name == name && !matches!(c.status, CheckStatus::Skipped(_))).map(|c| c.margin).fold(f64::INFINITY, f64::min)
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn skipped(&self) -> usize {
        self.checks.iter().filter(|c| matches!(c.status, CheckStatus::Skipped(_))).count()
    }

    /// `key: value` blocks, one summary block then one block per check name.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "checks: {}", self.checks.len());
        let _ = writeln!(s, "passed: {}", self.count(CheckStatus::Pass));
        let _ = writeln!(s, "failed: {}", self.count(CheckStatus::Fail));
        let _ = writeln!(s, "skipped: {}", self.skipped());
        let _ = writeln!(s, "min_rho: {:.16e}", self.min_rho);
        let _ = writeln!(s, "min_T_total: {:.16e}", self.min_t_total);
        let _ = writeln!(s, "max_rho_U_T: {:.16e}", self.max_rho_u_t);
        for name in CHECK_NAMES {
            let of: Vec<&CheckResult> = self.checks.iter().filter(|c| c.name == name).collect();
            if of.is_empty() {
                continue;
            }
            let _ = writeln!(s);
            let _ = writeln!(s, "check: {name}");
            let _ = writeln!(s, "evaluated: {}", of.iter().filter(|c| !matches!(c.status, CheckStatus::Skipped(_))).count());
            let _ = writeln!(s, "failed: {}", of.iter().filter(|c| c.status == CheckStatus::Fail).count());
            let _ = writeln!(s, "min_margin: {:.16e}", self.min_margin(name));
        }
        s
    }

    /// One CSV row per check.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("name,cell,lhs,rhs,margin,status\n");
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => String::from("pass"),
                CheckStatus::Fail => String::from("fail"),
                CheckStatus::Skipped(why) => format!("skipped: {why}"),
            };
            let _ = writeln!(s, "{},{},{:.16e},{:.16e},{:.16e},{}", c.name, c.cell, c.lhs, c.rhs, c.margin, status.replace(',', ";"));
        }
        s
    }
}

/// Evaluates the tensor and relaxation temperature bounds, the density,
/// tail-moment and momentum bounds, and the Gaussian norm bound in every
/// cell of `f`.
pub fn check_lemma_suite(f: &Distribution, params: &RelaxationParams, grid: &PhaseSpaceGrid) -> Result<DiagnosticsReport> {
    check_shape(f, grid)?;
    let weights = grid.norm_weights(params.q());
    let mut report = DiagnosticsReport::empty();
    for (j, cell) in f.cells().enumerate() {
        report.merge(check_cell(j, cell, params, grid, &weights));
    }
    Ok(report)
}

fn check_cell(j: usize, cell: &[f64], params: &RelaxationParams, grid: &PhaseSpaceGrid, weights: &crate::phase_space::NormWeights) -> DiagnosticsReport {
    let mut r = DiagnosticsReport::empty();
    let skip_all = |r: &mut DiagnosticsReport, why: &'static str| {
        for name in &CHECK_NAMES {
            r.checks.push(CheckResult::skipped(name, j, why));
        }
    };
    let m = match cell_moments(cell, grid) {
        Ok(m) => m,
        Err(_) => {
            skip_all(&mut r, "density must be positive");
            return r;
        }
    };
    if !(m.t_tr > 0.0 && m.t_int > 0.0 && m.t_total > 0.0) {
        skip_all(&mut r, "temperatures must be positive");
        return r;
    }
    r.min_rho = m.rho;
    r.min_t_total = m.t_total;
    let speed = libm::sqrt(linalg::norm_sq(&m.u));
    r.max_rho_u_t = m.rho + speed + m.t_total;

    let (nu, theta, delta, q) = (params.nu(), params.theta(), params.delta(), params.q());
    let td = m.t_total;
    let norm = weights.cell_norm(cell);

    let gp = relaxation_fields(&m, params).ok();
    let eig = linalg::sym_eigenvalues(&crate::moments::relaxation_tensor(&m, nu, theta));
    r.checks.push(CheckResult::evaluate("tensor_lower_bound", j, theta * td * (1.0 - TENSOR_SLACK), eig[0]));
    r.checks.push(CheckResult::evaluate(
        "tensor_upper_bound",
        j,
        eig[2],
        tensor_constant(nu) * (3.0 + delta * (1.0 - theta)) / 3.0 * td * (1.0 + TENSOR_SLACK),
    ));
    let t_theta = crate::moments::relaxation_temperature(&m, theta);
    r.checks.push(CheckResult::evaluate("relaxation_temperature_lower", j, theta * td * (1.0 - TENSOR_SLACK), t_theta));
    r.checks.push(CheckResult::evaluate(
        "relaxation_temperature_upper",
        j,
        t_theta,
        (delta + 3.0 * (1.0 - theta)) / delta * td * (1.0 + TENSOR_SLACK),
    ));

    r.checks.push(CheckResult::evaluate("density_bound", j, m.rho, density_constant(delta) * norm * libm::pow(td, 0.5 * (3.0 + delta))));
    let energy = td + speed * speed;
    r.checks.push(CheckResult::evaluate(
        "tail_moment_bound",
        j,
        m.rho * libm::pow(energy, 0.5 * (q - delta - 3.0)),
        tail_constant(delta, q) * norm,
    ));
    r.checks.push(CheckResult::evaluate(
        "momentum_bound",
        j,
        m.rho * libm::pow(speed, 3.0 + delta + q),
        momentum_constant(delta, q) * norm * libm::pow(energy * td, 0.5 * (3.0 + delta)),
    ));

    match (gaussian_constant(params), gp) {
        (Err(_), _) => r.checks.push(CheckResult::skipped("gaussian_norm_bound", j, "theta must be positive")),
        (Ok(_), None) => r.checks.push(CheckResult::skipped("gaussian_norm_bound", j, "relaxation tensor not positive definite")),
        (Ok(c), Some(gp)) => {
            let mn = weights.cell_norm(evaluate_gaussian(&m, &gp, grid).values());
            r.checks.push(CheckResult::evaluate("gaussian_norm_bound", j, mn, c * norm));
        }
    }
    r
}

/// Largest deviation of a `rows x cols` table from the rank-one table built
/// on its largest entry, relative to that entry.
pub fn rank_one_residual(table: &[f64], rows: usize, cols: usize) -> f64 {
    let (pivot, &peak) = table.iter().enumerate().fold((0, &0.0), |best, (i, v)| if *v > *best.1 { (i, v) } else { best });
    if peak == 0.0 {
        return 0.0;
    }
    let (pr, pc) = (pivot / cols, pivot % cols);
    let mut worst: f64 = 0.0;
    for r in 0..rows {
        for c in 0..cols {
            let approx = table[r * cols + pc] * table[pr * cols + c] / peak;
            worst = worst.max(libm::fabs(table[r * cols + c] - approx));
        }
    }
    worst / peak
}

/// Outcome of the `theta = 0` consistency comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionCheck {
    /// Rank-one residual of the directly evaluated `theta = 0` Gaussian.
    pub factorization_residual: f64,
    /// Max difference between the marginal of a full `theta = 0` step and a
    /// monatomic step of the marginal, relative to the latter's peak.
    pub step_difference: f64,
}

/// Compares the polyatomic model at `theta = 0` with the monatomic model for
/// the internal-energy marginal, in the first spatial cell.
pub fn theta_zero_reduction(f: &Distribution, dt: f64, params: &RelaxationParams, grid: &PhaseSpaceGrid) -> Result<ReductionCheck> {
    use crate::solver::{marginalize_cell, monatomic_step, relax_cell, MonatomicState};
    check_shape(f, grid)?;
    let p0 = params.with_theta(0.0)?;
    let cell = f.cell(0);
    let m = cell_moments(cell, grid)?;
    let gp = relaxation_fields(&m, &p0)?;
    let table = crate::gaussian::evaluate_gaussian_direct(&m, &gp, grid);
    let factorization_residual = rank_one_residual(&table, grid.i_len(), grid.v_len());

    let mut stepped = cell.to_vec();
    relax_cell(&mut stepped, dt, &p0, grid, false)?;
    let full = marginalize_cell(&stepped, grid);
    let marginal = MonatomicState::new(marginalize_cell(cell, grid), 1, grid.v_len());
    let reduced = monatomic_step(&marginal, dt, &p0, grid, false)?;
    let peak = reduced.values().iter().copied().fold(0.0, f64::max);
    let diff = full.iter().zip(reduced.values()).map(|(a, b)| libm::fabs(a - b)).fold(0.0, f64::max);
    Ok(ReductionCheck { factorization_residual, step_difference: diff / peak })
}
