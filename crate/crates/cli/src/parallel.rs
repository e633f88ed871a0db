use hubbard_swap::scan::{sweep_point, SweepPoint, Sweeper};
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::error::CliError;

/// Evaluates sweep points on a private rayon pool; output keeps grid order.
pub struct PoolSweeper {
    pool: ThreadPool,
}

impl PoolSweeper {
    /// `jobs = None` or `Some(0)` lets rayon pick the worker count.
    pub fn new(jobs: Option<usize>) -> Result<Self, CliError> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build()?;
        Ok(Self { pool })
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Sweeper for PoolSweeper {
    fn sweep(&self, n_sites: usize, grid: &[f64], t_max: f64) -> hubbard_swap::Result<Vec<SweepPoint>> {
        self.pool.install(|| grid.par_iter().map(|&u| sweep_point(n_sites, u, t_max)).collect())
    }
}
