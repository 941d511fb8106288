//! Discrete phase space: periodic `x`, truncated velocity cube, truncated
//! internal-energy half-line, plus distribution storage and the weighted
//! sup norm.
//!
//! Storage is x-major, then internal-energy node, then velocity node, with
//! the velocity index innermost. Within a velocity node the first axis
//! varies slowest: `vi = (a * n + b) * n + c` for `v = (v_a, v_b, v_c)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Vec3;

/// Velocity cutoff in thermal speeds beyond the bulk speed.
pub const THERMAL_SPEEDS: f64 = 8.0;
/// Internal-energy cutoff: `I_max^{2/delta} = INTERNAL_DECAY * T_max`.
pub const INTERNAL_DECAY: f64 = 40.0;

/// Node placement on the internal-energy half-line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InternalSpacing {
    /// Midpoint rule on `(0, i_max]`.
    Uniform,
    /// Midpoint rule in `t` with `u = I^{2/delta} = exp(t - e^{-t})`,
    /// clustering nodes near `I = 0` and giving double-exponential
    /// convergence for Gaussian-exponential integrands.
    Mapped,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    pub x_count: usize,
    pub x_length: f64,
    pub v_count: usize,
    pub v_max: f64,
    pub i_count: usize,
    pub i_max: f64,
    pub spacing: InternalSpacing,
}

impl GridConfig {
    /// Homogeneous grid with the given velocity/internal resolution.
    pub fn homogeneous(v_count: usize, v_max: f64, i_count: usize, i_max: f64, spacing: InternalSpacing) -> Self {
        Self { x_count: 1, x_length: 1.0, v_count, v_max, i_count, i_max, spacing }
    }

    /// Default cutoffs `(v_max, i_max)` for states with bulk speed at most
    /// `max_speed` and temperatures at most `max_temperature`.
    pub fn default_cutoffs(max_speed: f64, max_temperature: f64, delta: f64) -> (f64, f64) {
        let v_max = max_speed + THERMAL_SPEEDS * libm::sqrt(max_temperature);
        let i_max = libm::pow(INTERNAL_DECAY * max_temperature, 0.5 * delta);
        (v_max, i_max)
    }
}

#[derive(Debug, Clone)]
pub struct PhaseSpaceGrid {
    config: GridConfig,
    delta: f64,
    x_nodes: Vec<f64>,
    x_weight: f64,
    v_nodes: Vec<f64>,
    v_weights: Vec<f64>,
    i_nodes: Vec<f64>,
    i_weights: Vec<f64>,
    energies: Vec<f64>,
    velocities: Vec<Vec3>,
    velocity_weights: Vec<f64>,
}

/// Builds the grid. `delta` fixes the internal-energy variable
/// `u = I^{2/delta}` stored per internal node.
pub fn build_grid(config: &GridConfig, delta: f64) -> Result<PhaseSpaceGrid> {
    if config.x_count < 1 {
        return Err(Error::InvalidGrid("x_count must be at least 1"));
    }
    if !(config.x_length > 0.0 && config.x_length.is_finite()) {
        return Err(Error::InvalidGrid("x_length must be positive"));
    }
    if config.v_count < 2 {
        return Err(Error::InvalidGrid("v_count must be at least 2"));
    }
    if !(config.v_max > 0.0 && config.v_max.is_finite()) {
        return Err(Error::InvalidGrid("v_max must be positive"));
    }
    if config.i_count < 1 {
        return Err(Error::InvalidGrid("i_count must be at least 1"));
    }
    if !(config.i_max > 0.0 && config.i_max.is_finite()) {
        return Err(Error::InvalidGrid("i_max must be positive"));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidGrid("delta must be positive"));
    }

    let (x_nodes, x_weight) = if config.x_count == 1 {
        (vec![0.0], 1.0)
    } else {
        let dx = config.x_length / config.x_count as f64;
        ((0..config.x_count).map(|j| (j as f64 + 0.5) * dx).collect(), dx)
    };

    let (v_nodes, v_weights) = midpoint(-config.v_max, config.v_max, config.v_count);
    let (i_nodes, i_weights) = match config.spacing {
        InternalSpacing::Uniform => midpoint(0.0, config.i_max, config.i_count),
        InternalSpacing::Mapped => mapped_internal(config.i_max, config.i_count, delta)?,
    };
    let p = 2.0 / delta;
    let energies = i_nodes.iter().map(|&i| libm::pow(i, p)).collect();

    let n = config.v_count;
    let mut velocities = Vec::with_capacity(n * n * n);
    let mut velocity_weights = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                velocities.push([v_nodes[a], v_nodes[b], v_nodes[c]]);
                velocity_weights.push(v_weights[a] * v_weights[b] * v_weights[c]);
            }
        }
    }

    Ok(PhaseSpaceGrid {
        config: config.clone(),
        delta,
        x_nodes,
        x_weight,
        v_nodes,
        v_weights,
        i_nodes,
        i_weights,
        energies,
        velocities,
        velocity_weights,
    })
}

fn midpoint(lo: f64, hi: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let h = (hi - lo) / n as f64;
    let mut nodes: Vec<f64> = (0..n).map(|k| lo + (k as f64 + 0.5) * h).collect();
    if lo == -hi {
        // exact mirror symmetry of the velocity nodes
        for k in 0..n / 2 {
            nodes[n - 1 - k] = -nodes[k];
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
    }
    (nodes, vec![h; n])
}

fn mapped_internal(i_max: f64, n: usize, delta: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let u_max = libm::pow(i_max, 2.0 / delta);
    let t_lo = -libm::log(70.0 / delta);
    // solve t - e^{-t} = ln(u_max); the left side is increasing
    let target = libm::log(u_max);
    let mut t = if target > 0.0 { target } else { -libm::log(1.0 - target) };
    for _ in 0..100 {
        let g = t - libm::exp(-t) - target;
        let step = g / (1.0 + libm::exp(-t));
        t -= step;
        if libm::fabs(step) < 1e-15 * (1.0 + libm::fabs(t)) {
            break;
        }
    }
    let t_hi = t;
    if !(t_hi > t_lo) {
        return Err(Error::InvalidGrid("i_max too small for the mapped internal grid"));
    }
    let h = (t_hi - t_lo) / n as f64;
    let half = 0.5 * delta;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for k in 0..n {
        let t = t_lo + (k as f64 + 0.5) * h;
        let e = libm::exp(-t);
        let u = libm::exp(t - e);
        nodes.push(libm::pow(u, half));
        // dI = (delta/2) u^{delta/2 - 1} du,  du = u (1 + e^{-t}) dt
        weights.push(h * (1.0 + e) * half * libm::pow(u, half));
    }
    Ok((nodes, weights))
}

impl PhaseSpaceGrid {
    pub fn config(&self) -> &GridConfig {
        &self.config
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn x_count(&self) -> usize {
        self.config.x_count
    }

    pub fn is_homogeneous(&self) -> bool {
        self.config.x_count == 1
    }

    /// Cell centres; `[0.0]` for the homogeneous grid.
    pub fn x_nodes(&self) -> &[f64] {
        &self.x_nodes
    }

    /// Spatial cell width, or 1 for the homogeneous grid.
    pub fn x_weight(&self) -> f64 {
        self.x_weight
    }

    pub fn v_nodes(&self) -> &[f64] {
        &self.v_nodes
    }

    pub fn v_weights(&self) -> &[f64] {
        &self.v_weights
    }

    pub fn i_nodes(&self) -> &[f64] {
        &self.i_nodes
    }

    pub fn i_weights(&self) -> &[f64] {
        &self.i_weights
    }

    /// `I_k^{2/delta}` at each internal node.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Velocity vectors, in storage order.
    pub fn velocities(&self) -> &[Vec3] {
        &self.velocities
    }

    /// Tensor-product velocity weights, in storage order.
    pub fn velocity_weights(&self) -> &[f64] {
        &self.velocity_weights
    }

    pub fn v_len(&self) -> usize {
        self.velocities.len()
    }

    pub fn i_len(&self) -> usize {
        self.i_nodes.len()
    }

    /// Values per spatial cell.
    pub fn cell_len(&self) -> usize {
        self.v_len() * self.i_len()
    }

    pub fn len(&self) -> usize {
        self.cell_len() * self.x_count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(1 + |v|^2 + I^{2/delta})^{q/2}` at every node of a cell.
    pub fn norm_weights(&self, q: f64) -> NormWeights {
        let mut w = Vec::with_capacity(self.cell_len());
        for &u in &self.energies {
            for v in &self.velocities {
                let r = 1.0 + v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + u;
                w.push(libm::pow(r, 0.5 * q));
            }
        }
        NormWeights { weights: w }
    }
}

/// Nonnegative field over `(x, I, v)` in grid storage order.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    values: Vec<f64>,
    x_count: usize,
    cell_len: usize,
}

impl Distribution {
    pub fn zeros(grid: &PhaseSpaceGrid) -> Self {
        Self { values: vec![0.0; grid.len()], x_count: grid.x_count(), cell_len: grid.cell_len() }
    }

    /// Wraps raw values, rejecting wrong lengths and negative or non-finite
    /// entries.
    pub fn from_values(grid: &PhaseSpaceGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::ShapeMismatch { expected: grid.len(), found: values.len() });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !(**v >= 0.0) || !v.is_finite()) {
            return Err(Error::NegativeInput { index, value });
        }
        Ok(Self { values, x_count: grid.x_count(), cell_len: grid.cell_len() })
    }

    pub(crate) fn from_raw(values: Vec<f64>, x_count: usize, cell_len: usize) -> Self {
        debug_assert_eq!(values.len(), x_count * cell_len);
        Self { values, x_count, cell_len }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn x_count(&self) -> usize {
        self.x_count
    }

    pub fn cell_len(&self) -> usize {
        self.cell_len
    }

    pub fn cell(&self, j: usize) -> &[f64] {
        &self.values[j * self.cell_len..(j + 1) * self.cell_len]
    }

    pub fn cell_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.values[j * self.cell_len..(j + 1) * self.cell_len]
    }

    pub fn cells(&self) -> core::slice::ChunksExact<'_, f64> {
        self.values.chunks_exact(self.cell_len)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { values: self.values.iter().map(|v| v * c).collect(), ..self.clone() }
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Precomputed weights of the `L^\infty_q` norm.
#[derive(Debug, Clone)]
pub struct NormWeights {
    weights: Vec<f64>,
}

impl NormWeights {
    pub fn cell_norm(&self, cell: &[f64]) -> f64 {
        cell.iter().zip(&self.weights).map(|(f, w)| libm::fabs(*f) * w).fold(0.0, f64::max)
    }

    pub fn norm(&self, f: &Distribution) -> f64 {
        f.cells().map(|c| self.cell_norm(c)).fold(0.0, f64::max)
    }
}

/// `max f (1 + |v|^2 + I^{2/delta})^{q/2}` over all grid nodes.
pub fn weighted_sup_norm(f: &Distribution, grid: &PhaseSpaceGrid, q: f64) -> f64 {
    grid.norm_weights(q).norm(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(v_count: usize, v_max: f64, i_count: usize, i_max: f64) -> PhaseSpaceGrid {
        build_grid(&GridConfig::homogeneous(v_count, v_max, i_count, i_max, InternalSpacing::Uniform), 2.0).unwrap()
    }

    #[test]
    fn two_velocity_cells() {
        let g = grid(2, 1.0, 1, 1.0);
        assert_eq!(g.v_nodes(), &[-0.5, 0.5]);
        assert_eq!(g.v_weights(), &[1.0, 1.0]);
    }

    #[test]
    fn uniform_internal_nodes() {
        let g = grid(2, 1.0, 4, 8.0);
        assert_eq!(g.i_nodes(), &[1.0, 3.0, 5.0, 7.0]);
        assert_eq!(g.i_weights(), &[2.0, 2.0, 2.0, 2.0]);
    }

    #[test]
    fn homogeneous_cell_weight() {
        let g = grid(4, 1.0, 2, 1.0);
        assert!(g.is_homogeneous());
        assert_eq!(g.x_weight(), 1.0);
        assert_eq!(g.x_nodes().len(), 1);
    }

    #[test]
    fn velocity_weights_cover_cube() {
        for n in [3, 8, 17] {
            let g = grid(n, 2.5, 1, 1.0);
            let total: f64 = crate::sum::sum(g.velocity_weights());
            assert!((total / 125.0 - 1.0).abs() < 1e-12);
            let mut neg: Vec<f64> = g.v_nodes().iter().map(|v| -v).collect();
            neg.reverse();
            assert_eq!(neg, g.v_nodes());
        }
    }

    #[test]
    fn mapped_internal_nodes_increase() {
        for delta in [0.5, 1.0, 2.0, 3.0, 5.0] {
            let cfg = GridConfig::homogeneous(4, 1.0, 32, libm::pow(90.0, delta / 2.0), InternalSpacing::Mapped);
            let g = build_grid(&cfg, delta).unwrap();
            assert!(g.i_nodes()[0] > 0.0);
            assert!(g.i_nodes().windows(2).all(|w| w[1] > w[0]));
            assert!(g.i_weights().iter().all(|&w| w > 0.0));
            // \int_0^\infty e^{-I^{2/delta}} dI = Gamma(delta/2 + 1)
            let s: f64 = g.i_weights().iter().zip(g.energies()).map(|(w, u)| w * libm::exp(-u)).sum();
            assert!((s * crate::params::lambda_delta(delta) - 1.0).abs() < 1e-11, "delta={delta}");
        }
    }

    #[test]
    fn invalid_sizes() {
        let mut cfg = GridConfig::homogeneous(1, 1.0, 1, 1.0, InternalSpacing::Uniform);
        assert!(build_grid(&cfg, 2.0).is_err());
        cfg.v_count = 2;
        cfg.i_count = 0;
        assert!(build_grid(&cfg, 2.0).is_err());
        cfg.i_count = 1;
        cfg.v_max = -1.0;
        assert!(build_grid(&cfg, 2.0).is_err());
    }

    #[test]
    fn norm_of_zero_and_point_mass() {
        let g = grid(3, 1.5, 4, 8.0);
        let f = Distribution::zeros(&g);
        assert_eq!(weighted_sup_norm(&f, &g, 8.0), 0.0);
        // v = 0 is the middle node for odd counts; smallest I node is 1
        let mut f = Distribution::zeros(&g);
        let v0 = g.velocities().iter().position(|v| *v == [0.0, 0.0, 0.0]).unwrap();
        f.values_mut()[v0] = 1.0;
        let want = libm::pow(1.0 + g.energies()[0], 4.0);
        assert_eq!(weighted_sup_norm(&f, &g, 8.0), want);
    }

    #[test]
    fn norm_of_gaussian_matches_dense_scan() {
        // max over r of e^{-r} (1 + r)^4 is at r = 3
        let g = build_grid(&GridConfig::homogeneous(61, 6.0, 400, 20.0, InternalSpacing::Uniform), 2.0).unwrap();
        let mut values = Vec::with_capacity(g.cell_len());
        for &u in g.energies() {
            for v in g.velocities() {
                values.push(libm::exp(-(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) - u));
            }
        }
        let f = Distribution::from_values(&g, values).unwrap();
        let got = weighted_sup_norm(&f, &g, 8.0);
        let scan = (0..300_000).map(|k| k as f64 * 1e-4).map(|r| libm::exp(-r) * libm::pow(1.0 + r, 4.0)).fold(0.0, f64::max);
        assert!((scan / (libm::exp(-3.0) * 256.0) - 1.0).abs() < 1e-9);
        assert!(got <= scan * (1.0 + 1e-12));
        assert!(got / scan > 1.0 - 1e-3);
    }

    #[test]
    fn from_values_rejects_negatives() {
        let g = grid(2, 1.0, 1, 1.0);
        let mut v = vec![1.0; g.len()];
        v[3] = -1e-3;
        assert!(matches!(Distribution::from_values(&g, v), Err(Error::NegativeInput { index: 3, .. })));
    }
}
