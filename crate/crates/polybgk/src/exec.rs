//! Thread-pool executor for the solver's per-cell sweeps.

use polybgk_core::CellExecutor;
use rayon::prelude::*;

pub struct Pool {
    pool: rayon::ThreadPool,
}

impl Pool {
    pub fn new(threads: usize) -> Result<Self, rayon::ThreadPoolBuildError> {
        Ok(Self { pool: rayon::ThreadPoolBuilder::new().num_threads(threads).build()? })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl CellExecutor for Pool {
    fn map_cells<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        self.pool.install(|| (0..n).into_par_iter().map(&f).collect())
    }

    fn map_chunks_mut<T, F>(&self, data: &mut [f64], chunk: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize, &mut [f64]) -> T + Sync,
    {
        self.pool.install(|| data.par_chunks_exact_mut(chunk).enumerate().map(|(j, c)| f(j, c)).collect())
    }
}
