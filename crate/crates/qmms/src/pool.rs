//! Rayon-backed worker pool.

use qmms_core::pool::WorkerPool;
use rayon::prelude::*;

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "QMMS_WORKERS";

pub struct RayonPool {
    pool: rayon::ThreadPool,
}

impl RayonPool {
    /// `workers = 0` means one per available core.
    pub fn new(workers: usize) -> anyhow::Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build()?;
        Ok(RayonPool { pool })
    }

    /// Worker count from `QMMS_WORKERS`, or every core if unset or invalid.
    pub fn from_env() -> anyhow::Result<Self> {
        let workers = std::env::var(WORKERS_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(0);
        Self::new(workers)
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl WorkerPool for RayonPool {
    fn map<T, F>(&self, len: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        self.pool.install(|| (0..len).into_par_iter().map(job).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_job_order() {
        let pool = RayonPool::new(3).unwrap();
        assert_eq!(pool.workers(), 3);
        assert_eq!(pool.map(100, |i| i * i), (0..100).map(|i| i * i).collect::<Vec<_>>());
    }
}
