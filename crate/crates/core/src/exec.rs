//! Per-cell work distribution.
//!
//! Solver sweeps are written against [`CellExecutor`] so the std crate can
//! plug in a thread pool. Every cell is processed by exactly one call, and
//! results come back in cell order, so the outcome never depends on the
//! executor.

use alloc::vec::Vec;

pub trait CellExecutor: Sync {
    /// `f(0), ..., f(n - 1)` in order.
    fn map_cells<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync;

    /// Calls `f(j, chunk_j)` on consecutive chunks of `data` of length
    /// `chunk` and returns the results in chunk order.
    fn map_chunks_mut<T, F>(&self, data: &mut [f64], chunk: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize, &mut [f64]) -> T + Sync;
}

/// Runs everything on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Serial;

impl CellExecutor for Serial {
    fn map_cells<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        (0..n).map(f).collect()
    }

    fn map_chunks_mut<T, F>(&self, data: &mut [f64], chunk: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize, &mut [f64]) -> T + Sync,
    {
        data.chunks_exact_mut(chunk).enumerate().map(|(j, c)| f(j, c)).collect()
    }
}
